#pragma once

#include <json.hpp>

#include "unifact/word.hpp"

namespace unifact {

inline nlohmann::json group_element_to_json(const GroupElement& g) {
    if (is_matrix(g)) return std::get<ComplexMatrix>(g).to_json();
    return std::get<TailPermutation>(g).to_json();
}

inline GroupElement group_element_from_json(const nlohmann::json& j, bool matrix_model) {
    if (matrix_model) return ComplexMatrix::from_json(j);
    return TailPermutation::from_json(j);
}

inline nlohmann::json letter_to_json(const Letter& l) {
    nlohmann::json j;
    j["tag"] = l.tag;
    if (l.kind() == Letter::Kind::Generator) {
        j["payload"] = l.generator_index;
        j["power"] = l.generator_power;
    } else {
        j["payload"] = group_element_to_json(l.payload);
        if (l.kind() == Letter::Kind::Conjugate) {
            j["conjugator"] = group_element_to_json(*l.conjugator);
            j["power"] = l.base_power;
        }
    }
    if (std::holds_alternative<Projection>(l.support))
        j["support"] = std::get<Projection>(l.support).to_json();
    else if (std::holds_alternative<ClassSet>(l.support))
        j["support"] = std::get<ClassSet>(l.support).to_json();
    return j;
}

inline Letter letter_from_json(const nlohmann::json& j, bool matrix_model,
                               const TolerancePolicy& tol = {}) {
    Letter l;
    if (!j.contains("tag") || !j.contains("payload")) throw BadFormat("letter JSON: missing field");
    l.tag = j.at("tag").get<std::string>();
    if (l.tag == "generator") {
        l.generator_index = j.at("payload").get<int>();
        l.generator_power = j.value("power", 1);
        if (l.generator_power != 1 && l.generator_power != -1)
            throw BadFormat("letter JSON: generator power must be +-1");
    } else {
        l.payload = group_element_from_json(j.at("payload"), matrix_model);
        if (j.contains("conjugator")) {
            l.conjugator = group_element_from_json(j.at("conjugator"), matrix_model);
            l.base_power = j.value("power", 1);
            if (l.base_power != 1 && l.base_power != -1)
                throw BadFormat("letter JSON: base power must be +-1");
        }
    }
    if (j.contains("support")) {
        if (matrix_model)
            l.support = projection_from_json(j.at("support"), tol);
        else
            l.support = ClassSet::from_json(j.at("support"));
    }
    return l;
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["kind"] = c.kind;
    j["model"] = is_matrix(c.input) ? "matrix" : "permutation";
    j["input"] = group_element_to_json(c.input);
    j["letters"] = nlohmann::json::array();
    for (const auto& l : c.letters) j["letters"].push_back(letter_to_json(l));
    if (!c.generators.empty()) {
        j["generators"] = nlohmann::json::array();
        for (const auto& g : c.generators) j["generators"].push_back(group_element_to_json(g));
    }
    j["claimed_bound"] = c.claimed_bound;
    j["paper_bound"] = c.paper_bound;
    j["measured_length"] = c.measured_length;
    if (c.phase) j["phase"] = {c.phase->real(), c.phase->imag()};
    if (c.corner) j["corner"] = c.corner->to_json();
    if (c.surrogate_constant) j["surrogate_constant"] = *c.surrogate_constant;
    j["residual"] = c.residual;
    j["exact"] = c.exact;
    if (!c.transcript.empty()) {
        j["transcript"] = nlohmann::json::array();
        for (const auto& t : c.transcript)
            j["transcript"].push_back({t.level, t.corner_rank, t.residual});
    }
    return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j, const TolerancePolicy& tol = {}) {
    for (const char* key : {"kind", "model", "input", "letters", "claimed_bound", "paper_bound",
                            "measured_length", "residual"})
        if (!j.contains(key)) throw BadFormat(std::string("certificate JSON: missing ") + key);
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    bool matrix_model = j.at("model").get<std::string>() == "matrix";
    c.input = group_element_from_json(j.at("input"), matrix_model);
    for (const auto& lj : j.at("letters")) c.letters.push_back(letter_from_json(lj, matrix_model, tol));
    if (j.contains("generators"))
        for (const auto& gj : j.at("generators"))
            c.generators.push_back(group_element_from_json(gj, matrix_model));
    c.claimed_bound = j.at("claimed_bound").get<long long>();
    c.paper_bound = j.at("paper_bound").get<long long>();
    c.measured_length = j.at("measured_length").get<long long>();
    if (j.contains("phase")) {
        const auto& p = j.at("phase");
        if (!p.is_array() || p.size() != 2) throw BadFormat("certificate JSON: phase must be [re, im]");
        c.phase = Complex(p[0].get<double>(), p[1].get<double>());
    }
    if (j.contains("corner")) c.corner = projection_from_json(j.at("corner"), tol);
    if (j.contains("surrogate_constant"))
        c.surrogate_constant = j.at("surrogate_constant").get<long long>();
    c.residual = j.at("residual").get<double>();
    c.exact = j.value("exact", false);
    if (j.contains("transcript"))
        for (const auto& t : j.at("transcript"))
            c.transcript.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    return c;
}

} // namespace unifact
