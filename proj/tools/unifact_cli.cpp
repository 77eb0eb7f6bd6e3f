// unifact command-line driver: every pipeline as a subcommand with JSON
// input/output, one seed governing all randomness, and benchmark tables of
// measured lengths against the claimed bounds. Timing is segregated from
// result payloads so byte-level reproducibility checks can exclude it.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unifact/assemble.hpp"
#include "unifact/chain_oracle.hpp"
#include "unifact/cond_c.hpp"
#include "unifact/five_factor.hpp"
#include "unifact/generators.hpp"
#include "unifact/involution.hpp"
#include "unifact/ladder.hpp"
#include "unifact/perm_five_factor.hpp"
#include "unifact/random_perm.hpp"
#include "unifact/symmetry_factor.hpp"
#include "unifact/verify.hpp"

using namespace unifact;
using nlohmann::json;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("cannot open output file " + out_path);
    f << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open input file " + path);
    json j;
    f >> j;
    return j;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = seed * 1000003ull + a * 10007ull + b + 1ull;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return x;
}

struct DimRange {
    int lo = 3, hi = 3;
};

DimRange parse_range(const std::string& s) {
    DimRange r;
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoi(s);
    } else {
        r.lo = std::stoi(s.substr(0, dots));
        r.hi = std::stoi(s.substr(dots + 2));
    }
    if (r.lo < 1 || r.hi < r.lo) throw Error("bad range " + s);
    return r;
}

Certificate make_five_factor(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    auto part = random_triple_partition(dim, case_seed(seed, 1, 0), tol);
    auto u = random_unitary(dim, case_seed(seed, 2, 0), tol);
    return five_factor_decompose(u, part, tol);
}

Certificate make_symmetry(int dim, std::uint64_t seed, const TolerancePolicy& tol) {
    CornerContext ctx{full_projection(dim)};
    return symmetry_factorize(random_unitary(dim, case_seed(seed, 3, 0), tol), ctx, tol);
}

Certificate make_ladder(int dim, int levels, std::uint64_t seed, const TolerancePolicy& tol) {
    Ladder l = ladder_build(dim, levels, tol);
    return ladder_express(random_unitary(dim, case_seed(seed, 4, 0), tol), l, tol);
}

TailPermutation cli_perm(std::uint64_t seed, Nat modulus, Nat table, const std::string& in_path) {
    if (!in_path.empty()) return TailPermutation::from_json(read_json(in_path));
    return random_tail_permutation(case_seed(seed, 5, 0), modulus, table);
}

int run_bench(const std::string& suite, const DimRange& dims, int per_dim, std::uint64_t seed,
              const std::string& format, const std::string& out_path,
              const TolerancePolicy& tol) {
    json cases = json::array();
    std::vector<double> case_ms;
    bool all_ok = true;
    int index = 0, ok_count = 0;
    double max_residual = 0.0;

    auto push = [&](json row, double ms, bool ok) {
        row["case"] = index++;
        if (row.contains("residual"))
            max_residual = std::max(max_residual, row["residual"].get<double>());
        cases.push_back(std::move(row));
        case_ms.push_back(ms);
        all_ok = all_ok && ok;
        ok_count += ok;
    };

    for (int d = dims.lo; d <= dims.hi; ++d) {
        for (int i = 0; i < per_dim; ++i) {
            std::uint64_t s = case_seed(seed, static_cast<std::uint64_t>(d),
                                        static_cast<std::uint64_t>(i));
            double t0 = now_ms();
            if (suite == "five_factor") {
                if (d < 3) continue;
                Certificate c = make_five_factor(d, s, tol);
                bool ok = verify(c, tol).ok && c.residual <= tol.tol_residual;
                push({{"dim", d},
                      {"measured_length", c.measured_length},
                      {"paper_bound", c.paper_bound},
                      {"residual", c.residual},
                      {"ok", ok}},
                     now_ms() - t0, ok);
            } else if (suite == "symmetry") {
                if (d % 2 != 0) continue;
                Certificate c = make_symmetry(d, s, tol);
                bool ok = verify(c, tol).ok && c.residual <= tol.tol_residual;
                push({{"dim", d},
                      {"letters", c.letter_count()},
                      {"bound", c.claimed_bound},
                      {"residual", c.residual},
                      {"ok", ok}},
                     now_ms() - t0, ok);
            } else if (suite == "ladder") {
                // The range is the level count n; the dimension is 3^n.
                int n = d;
                int dim = 1;
                for (int k = 0; k < n; ++k) dim *= 3;
                Certificate c = make_ladder(dim, n, s, tol);
                bool ok = verify(c, tol).ok &&
                          c.measured_length == ladder_letter_count(n);
                push({{"levels", n},
                      {"dim", dim},
                      {"measured_length", c.measured_length},
                      {"paper_bound", c.paper_bound},
                      {"residual", c.residual},
                      {"ok", ok}},
                     now_ms() - t0, ok);
            } else if (suite == "sinf") {
                TailPermutation u = random_tail_permutation(s, 6, 30);
                Certificate c = five_factor_decompose_perm(
                    u, ClassSet::residue_classes(3, {0}), ClassSet::residue_classes(3, {1}),
                    ClassSet::residue_classes(3, {2}));
                bool ok = verify(c, tol).ok && c.exact;
                push({{"modulus", u.modulus()},
                      {"measured_length", c.measured_length},
                      {"paper_bound", c.paper_bound},
                      {"exact", c.exact},
                      {"ok", ok}},
                     now_ms() - t0, ok);
            } else {
                throw Error("unknown bench suite " + suite);
            }
        }
    }

    if (format == "csv") {
        std::ostringstream os;
        os << "case";
        if (!cases.empty())
            for (auto it = cases[0].begin(); it != cases[0].end(); ++it)
                if (it.key() != "case") os << "," << it.key();
        os << ",runtime_ms\n";
        for (size_t k = 0; k < cases.size(); ++k) {
            os << cases[k]["case"].get<int>();
            for (auto it = cases[k].begin(); it != cases[k].end(); ++it)
                if (it.key() != "case") os << "," << it.value().dump();
            os << "," << case_ms[k] << "\n";
        }
        if (out_path.empty() || out_path == "-") {
            std::cout << os.str();
        } else {
            std::ofstream f(out_path);
            f << os.str();
        }
    } else {
        json result = {{"suite", suite},
                       {"cases", cases},
                       {"ok", all_ok},
                       {"summary",
                        {{"total", index},
                         {"success", ok_count},
                         {"max_residual", max_residual}}}};
        json timed = {{"result", result}, {"timing", {{"per_case_ms", case_ms}}}};
        emit(timed, out_path);
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unifact: bounded-length factorization engine with verifiable certificates"};
    app.require_subcommand(1);

    int dim = 3;
    int levels = 1;
    std::uint64_t seed = 0;
    double tol_residual = -1;
    std::string in_path, out_path;
    std::string suite = "five_factor";
    std::string dims_s = "3..12";
    int per_dim = 10;
    std::string format = "json";
    Nat modulus = 6, table = 30;
    long long n_arg = 4, m_arg = 8;

    auto add_common = [&](CLI::App* cmd, bool with_dim) {
        if (with_dim) cmd->add_option("--dim", dim, "matrix dimension");
        cmd->add_option("--seed", seed, "seed governing all randomness");
        cmd->add_option("--tol", tol_residual, "residual tolerance override");
        cmd->add_option("--out", out_path, "output path (default stdout)");
    };

    auto* factor = app.add_subcommand("factor", "five-factor decomposition of a random unitary");
    add_common(factor, true);

    auto* symmetry = app.add_subcommand("symmetry", "trace-zero symmetry factorization");
    add_common(symmetry, true);

    auto* ladder = app.add_subcommand("ladder", "build a trace ladder and express a random unitary");
    add_common(ladder, true);
    ladder->add_option("--levels", levels, "ladder depth n");

    auto* sfactor = app.add_subcommand("sinf-factor", "five-factor decomposition in the permutation model");
    add_common(sfactor, false);
    sfactor->add_option("--modulus", modulus, "random permutation modulus bound");
    sfactor->add_option("--table", table, "random permutation table bound");
    sfactor->add_option("--in", in_path, "input TailPermutation JSON");

    auto* sinv = app.add_subcommand("sinf-involution", "factor a permutation into base-conjugate involutions");
    add_common(sinv, false);
    sinv->add_option("--modulus", modulus, "random permutation modulus bound");
    sinv->add_option("--table", table, "random permutation table bound");
    sinv->add_option("--in", in_path, "input TailPermutation JSON");

    auto* scondc = app.add_subcommand("sinf-condc", "express a permutation over G(P) and the class shift");
    add_common(scondc, false);
    scondc->add_option("--modulus", modulus, "random permutation modulus bound");
    scondc->add_option("--table", table, "random permutation table bound");
    scondc->add_option("--in", in_path, "input TailPermutation JSON");

    auto* verify_cmd = app.add_subcommand("verify", "verify a certificate file");
    verify_cmd->add_option("--in", in_path, "certificate JSON path")->required();
    verify_cmd->add_option("--tol", tol_residual, "residual tolerance override");
    verify_cmd->add_option("--out", out_path, "report output path (default stdout)");

    auto* assemble = app.add_subcommand("assemble", "symbolic 3nm length accounting");
    assemble->add_option("--n", n_arg, "condition-(B) exponent");
    assemble->add_option("--m", m_arg, "condition-(C) exponent");
    assemble->add_option("--out", out_path, "output path (default stdout)");

    auto* bench = app.add_subcommand("bench", "sweep a suite and tabulate measured vs claimed");
    bench->add_option("--suite", suite, "five_factor | symmetry | ladder | sinf");
    bench->add_option("--dims", dims_s, "dimension range a..b (ladder: level range)");
    bench->add_option("--per-dim,--sample", per_dim, "cases per dimension");
    bench->add_option("--seed", seed, "seed governing all randomness");
    bench->add_option("--tol", tol_residual, "residual tolerance override");
    bench->add_option("--format", format, "json | csv");
    bench->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << json{{"error", "invalid_config"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    }

    TolerancePolicy tol;
    if (tol_residual >= 0) tol.tol_residual = tol_residual;
    try {
        tol.validate();
        if (factor->parsed()) {
            if (dim < 3) throw Error("factor: need --dim >= 3");
            emit(certificate_to_json(make_five_factor(dim, seed, tol)), out_path);
        } else if (symmetry->parsed()) {
            if (dim < 2 || dim % 2 != 0) throw Error("symmetry: need an even --dim >= 2");
            emit(certificate_to_json(make_symmetry(dim, seed, tol)), out_path);
        } else if (ladder->parsed()) {
            emit(certificate_to_json(make_ladder(dim, levels, seed, tol)), out_path);
        } else if (sfactor->parsed()) {
            TailPermutation u = cli_perm(seed, modulus, table, in_path);
            emit(certificate_to_json(five_factor_decompose_perm(
                     u, ClassSet::residue_classes(3, {0}), ClassSet::residue_classes(3, {1}),
                     ClassSet::residue_classes(3, {2}))),
                 out_path);
        } else if (sinv->parsed()) {
            TailPermutation u = cli_perm(seed, modulus, table, in_path);
            if (in_path.empty()) {
                // Random inputs are drawn as products of two conjugated base
                // involutions, the reversible sampling matching the shape the
                // factorizer certifies.
                TailPermutation w1 =
                    random_tail_permutation(case_seed(seed, 6, 1), modulus, table);
                TailPermutation w2 =
                    random_tail_permutation(case_seed(seed, 6, 2), modulus, table);
                auto conj = [](const TailPermutation& g, const TailPermutation& w) {
                    return w.compose_after(g).compose_after(w.inverse());
                };
                u = conj(base_involution(), w1).compose_after(conj(base_involution(), w2));
            }
            emit(certificate_to_json(involution_factorize(u).cert), out_path);
        } else if (scondc->parsed()) {
            TailPermutation u = cli_perm(seed, modulus, table, in_path);
            emit(certificate_to_json(cond_c_express_perm(u).cert), out_path);
        } else if (verify_cmd->parsed()) {
            VerificationReport rep = verify_json(read_json(in_path), tol);
            emit(rep.to_json(), out_path);
            return rep.ok ? 0 : 1;
        } else if (assemble->parsed()) {
            if (n_arg < 1 || m_arg < 1) throw Error("assemble: need n, m >= 1");
            emit(json{{"n", n_arg},
                      {"m", m_arg},
                      {"bound_3nm", assemble_bound_symbolic(n_arg, m_arg)}},
                 out_path);
        } else if (bench->parsed()) {
            return run_bench(suite, parse_range(dims_s), per_dim, seed, format, out_path, tol);
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", "invalid_input"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
