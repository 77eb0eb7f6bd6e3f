#pragma once

#include <sstream>

#include "unifact/serialize.hpp"
#include "unifact/word.hpp"

namespace unifact {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerificationReport {
    bool ok = true;
    std::vector<CheckResult> checks;
    long long measured_length = 0;
    long long claimed_bound = 0;
    long long paper_bound = 0;
    double recomputed_residual = 0.0;

    void add(std::string name, bool pass, std::string detail = "") {
        ok = ok && pass;
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    nlohmann::json to_json() const {
        nlohmann::json cj = nlohmann::json::array();
        for (const auto& c : checks) cj.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        return {{"ok", ok},
                {"checks", cj},
                {"measured_length", measured_length},
                {"claimed_bound", claimed_bound},
                {"paper_bound", paper_bound},
                {"residual", recomputed_residual}};
    }
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline bool tags_alternate(const std::vector<Letter>& letters) {
    if (letters.size() != 5) return false;
    const std::string& first = letters[0].tag;
    const std::string other = first == "B" ? "A" : "B";
    if (first != "A" && first != "B") return false;
    for (size_t i = 0; i < 5; ++i)
        if (letters[i].tag != (i % 2 == 0 ? first : other)) return false;
    return true;
}

} // namespace detail

/// Independent certificate checker. Re-evaluates the word with its own
/// arithmetic, re-checks every support claim, recounts lengths, and compares
/// against the claimed bound. Failures are data in the report, not
/// exceptions.
inline VerificationReport verify(const Certificate& cert, const TolerancePolicy& tol = {}) {
    VerificationReport rep;
    rep.claimed_bound = cert.claimed_bound;
    rep.paper_bound = cert.paper_bound;

    // Payload homogeneity.
    bool matrix_model = is_matrix(cert.input);
    bool homogeneous = true;
    for (const auto& l : cert.letters) {
        if (l.kind() == Letter::Kind::Generator) continue;
        if (is_matrix(l.payload) != matrix_model) homogeneous = false;
        if (l.conjugator && is_matrix(*l.conjugator) != matrix_model) homogeneous = false;
    }
    for (const auto& g : cert.generators)
        if (is_matrix(g) != matrix_model) homogeneous = false;
    rep.add("homogeneous_payloads", homogeneous);
    if (!homogeneous) return rep;

    // Length accounting.
    long long expanded = total_expanded_length(cert.letters);
    rep.measured_length = expanded;
    rep.add("measured_length_consistent", expanded == cert.measured_length,
            "recomputed " + std::to_string(expanded) + " stored " +
                std::to_string(cert.measured_length));
    bool count_letters = cert.kind == "symmetry" || cert.kind == "involution";
    long long measure = count_letters ? cert.letter_count() : expanded;
    rep.add("claimed_bound_respected", measure <= cert.claimed_bound,
            std::to_string(measure) + " vs bound " + std::to_string(cert.claimed_bound));

    // Product re-evaluation.
    GroupElement product;
    try {
        product = evaluate_word(cert.letters, cert.generators, cert.input);
    } catch (const Error& e) {
        rep.add("product_matches_input", false, e.what());
        return rep;
    }

    if (matrix_model) {
        ComplexMatrix target = std::get<ComplexMatrix>(cert.input);
        ComplexMatrix prod = std::get<ComplexMatrix>(product);
        if (cert.phase && cert.corner) {
            // Projective kinds reconstruct the input up to the reported
            // corner phase: input ~ (phase on corner) * product.
            ComplexMatrix scale = ComplexMatrix::identity(target.dim()) - cert.corner->matrix +
                                  cert.corner->matrix * (*cert.phase);
            prod = scale * prod;
        }
        double res = op_distance(prod, target);
        rep.recomputed_residual = res;
        double bound = tol.tol_residual * static_cast<double>(std::max<long long>(1, expanded));
        rep.add("product_matches_input", res <= bound,
                "residual " + detail::fmt(res) + " bound " + detail::fmt(bound));

        bool unitary_ok = true;
        std::string why;
        for (size_t i = 0; i < cert.letters.size(); ++i) {
            const auto& l = cert.letters[i];
            if (l.kind() == Letter::Kind::Generator) continue;
            double defect = unitarity_defect(std::get<ComplexMatrix>(l.payload));
            if (l.conjugator)
                defect = std::max(defect, unitarity_defect(std::get<ComplexMatrix>(*l.conjugator)));
            if (defect > 1e-9) {
                unitary_ok = false;
                why = "letter " + std::to_string(i) + " defect " + detail::fmt(defect);
                break;
            }
        }
        rep.add("letters_unitary", unitary_ok, why);
    } else {
        TailPermutation target = std::get<TailPermutation>(cert.input);
        TailPermutation prod = std::get<TailPermutation>(product);
        bool equal = (prod == target);
        for (Nat x = 0; x < 200 && equal; ++x) equal = (prod.apply(x) == target.apply(x));
        rep.add("product_matches_input", equal,
                equal ? "exact equality in canonical form" : "composition differs from input");
        rep.add("exact_flag", cert.exact == equal || equal,
                "certificate exactness flag agrees with recomputation");
    }

    // Support claims, letter by letter.
    bool supports_ok = true;
    std::string support_why;
    for (size_t i = 0; i < cert.letters.size(); ++i) {
        const auto& l = cert.letters[i];
        if (std::holds_alternative<std::monostate>(l.support)) continue;
        GroupElement el = evaluate_word({l}, cert.generators, cert.input);
        if (matrix_model) {
            const auto& claim = std::get<Projection>(l.support);
            double res = support_residual(std::get<ComplexMatrix>(el), claim);
            if (res > tol.tol_residual) {
                supports_ok = false;
                support_why = "letter " + std::to_string(i) + " support residual " + detail::fmt(res);
                break;
            }
        } else {
            auto dec = support_in(std::get<TailPermutation>(el), std::get<ClassSet>(l.support));
            if (!dec.contained) {
                supports_ok = false;
                support_why = "letter " + std::to_string(i) + " moves point " +
                              std::to_string(dec.counterexample.value_or(-1)) +
                              " outside its claimed support";
                break;
            }
        }
    }
    rep.add("support_claims", supports_ok, support_why);

    // Kind-specific structure.
    if (cert.kind == "five_factor" || cert.kind == "perm_five_factor") {
        rep.add("five_alternating_letters", detail::tags_alternate(cert.letters));
    } else if (cert.kind == "symmetry") {
        bool shape_ok = cert.corner.has_value();
        std::string why;
        if (shape_ok) {
            int d = cert.corner->dim();
            int off_rank = d - cert.corner->rank;
            for (size_t i = 0; i < cert.letters.size() && shape_ok; ++i) {
                const auto& l = cert.letters[i];
                if (l.kind() != Letter::Kind::Conjugate) {
                    shape_ok = false;
                    why = "letter " + std::to_string(i) + " is not a base conjugate";
                    break;
                }
                ComplexMatrix s = std::get<ComplexMatrix>(
                    evaluate_word({l}, cert.generators, cert.input));
                double herm = operator_norm(s - s.adjoint());
                double invol = op_distance(s * s, ComplexMatrix::identity(d));
                double trace_defect = std::abs(s.trace() - Complex(off_rank, 0));
                double conj_support = support_residual(
                    std::get<ComplexMatrix>(*l.conjugator), *cert.corner);
                if (herm > 1e-9 || invol > 1e-9) {
                    shape_ok = false;
                    why = "letter " + std::to_string(i) + " is not a symmetry";
                } else if (trace_defect > 1e-6) {
                    shape_ok = false;
                    why = "letter " + std::to_string(i) + " corner trace is not zero";
                } else if (conj_support > tol.tol_residual) {
                    shape_ok = false;
                    why = "letter " + std::to_string(i) + " conjugator leaves the corner";
                }
            }
        }
        rep.add("trace_zero_symmetry_letters", shape_ok, why);
    } else if (cert.kind == "involution") {
        bool shape_ok = true;
        std::string why;
        for (size_t i = 0; i < cert.letters.size() && shape_ok; ++i) {
            const auto& l = cert.letters[i];
            if (l.kind() != Letter::Kind::Conjugate) {
                shape_ok = false;
                why = "letter " + std::to_string(i) + " is not a base conjugate";
                break;
            }
            TailPermutation s =
                std::get<TailPermutation>(evaluate_word({l}, cert.generators, cert.input));
            if (!s.compose_after(s).is_identity()) {
                shape_ok = false;
                why = "letter " + std::to_string(i) + " is not an involution";
            }
        }
        rep.add("involution_letters", shape_ok, why);
    } else if (cert.kind == "ladder") {
        bool set_ok = true;
        std::string why;
        for (size_t i = 0; i < cert.letters.size(); ++i) {
            const auto& l = cert.letters[i];
            bool good = l.kind() == Letter::Kind::Generator ||
                        (l.kind() == Letter::Kind::Subgroup &&
                         std::holds_alternative<Projection>(l.support));
            if (!good) {
                set_ok = false;
                why = "letter " + std::to_string(i) + " is outside G(q0) and the generator set";
                break;
            }
        }
        rep.add("letters_from_generating_set", set_ok, why);
    }

    return rep;
}

inline VerificationReport verify_json(const nlohmann::json& j, const TolerancePolicy& tol = {}) {
    try {
        return verify(certificate_from_json(j, tol), tol);
    } catch (const std::exception& e) {
        VerificationReport rep;
        rep.add("well_formed", false, e.what());
        return rep;
    }
}

} // namespace unifact
