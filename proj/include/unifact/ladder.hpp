#pragma once

#include <functional>

#include "unifact/five_factor.hpp"
#include "unifact/projection.hpp"
#include "unifact/word.hpp"

namespace unifact {

/// One ladder level: q = (p1 + p2) + p3 where p1 + p2 is the previous level
/// and p3 is fresh; u conjugates p1+p2 onto p2+p3 inside G(q).
struct LadderLevel {
    Projection p1, p2, p3;
    Projection q;
    Unitary u;
};

/// The trace ladder: q0 of rank dim*(2/3)^n, each level multiplying the rank
/// by 3/2 until the identity, with the designated conjugators F = {u_i}.
struct Ladder {
    int dim = 0;
    int n = 0;
    Projection q0;
    std::vector<LadderLevel> levels;

    std::vector<GroupElement> generator_elements() const {
        std::vector<GroupElement> f;
        f.reserve(levels.size());
        for (const auto& l : levels) f.push_back(l.u.matrix);
        return f;
    }
};

namespace detail {

inline std::vector<int> index_range(int first, int count) {
    std::vector<int> v(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<size_t>(i)] = first + i;
    return v;
}

} // namespace detail

/// Build the ladder on standard basis projections: splits and the fresh
/// third part always take the lowest-index basis vectors available, so
/// ladders are reproducible.
inline Ladder ladder_build(int dim, int n, const TolerancePolicy& tol = {}) {
    if (n < 1) throw DivisibilityError("ladder_build: need n >= 1");
    long long p3n = 1;
    for (int i = 0; i < n; ++i) p3n *= 3;
    long long num0 = static_cast<long long>(dim) << n; // dim * 2^n
    if (num0 % p3n != 0)
        throw DivisibilityError("ladder_build: dim*(2/3)^n not integral: " + std::to_string(dim) +
                                "*2^" + std::to_string(n) + " = " + std::to_string(num0) +
                                " is not divisible by 3^" + std::to_string(n) + " = " +
                                std::to_string(p3n));
    long long half0 = static_cast<long long>(dim) << (n - 1); // dim * 2^{n-1}
    if (half0 % p3n != 0)
        throw DivisibilityError("ladder_build: dim*2^(n-1)/3^n not integral: " +
                                std::to_string(half0) + " is not divisible by " +
                                std::to_string(p3n));

    Ladder ladder;
    ladder.dim = dim;
    ladder.n = n;
    int rank = static_cast<int>(num0 / p3n);
    ladder.q0 = basis_projection(dim, detail::index_range(0, rank));

    int used = rank;
    for (int level = 1; level <= n; ++level) {
        int half = rank / 2;
        LadderLevel l;
        l.p1 = basis_projection(dim, detail::index_range(0, half));
        l.p2 = basis_projection(dim, detail::index_range(half, rank - half));
        l.p3 = basis_projection(dim, detail::index_range(used, half));
        l.q = basis_projection(dim, detail::index_range(0, used + half));
        Projection p12 = orthogonal_sum(l.p1, l.p2);
        Projection p23 = orthogonal_sum(l.p2, l.p3);
        l.u = conjugator(p12, p23, CornerContext{l.q}, tol);
        used += half;
        rank = rank + half;
        ladder.levels.push_back(std::move(l));
    }
    if (rank != dim || used != dim)
        throw NumericalDegeneracy("ladder_build: rank arithmetic broke");
    return ladder;
}

/// Closed form of the recursion L(i+1) = 5 L(i) + 6, L(0) = 1: the exact
/// letter count after n levels.
inline long long ladder_letter_count(int n) {
    long long p5 = 5;
    for (int i = 0; i < n; ++i) p5 *= 5;
    return (p5 - 3) / 2;
}

inline long long ladder_paper_bound(int n) {
    long long p = 1;
    for (int i = 0; i < n; ++i) p *= 8;
    return p;
}

/// Express an arbitrary unitary over G(q0) and the ladder conjugators:
/// five-factor at the top level, then each G(p2+p3) factor rewritten as
/// u_i a u_i^{-1} with a one level down, until every letter lies in
/// G(q0) or F or F^{-1}.
inline Certificate ladder_express(const Unitary& u, const Ladder& ladder,
                                  const TolerancePolicy& tol = {}) {
    Certificate cert;
    cert.kind = "ladder";
    cert.input = u.matrix;
    cert.generators = ladder.generator_elements();

    // An input already inside G(q0) is its own one-letter certificate; the
    // recursion below is purely structural and always emits the exact
    // (5^{n+1}-3)/2 letters.
    if (support_residual(u.matrix, ladder.q0) <= tol.tol_residual) {
        cert.letters.push_back(subgroup_letter("subgroup", u.matrix, ladder.q0));
        cert.measured_length = 1;
        cert.claimed_bound = 1;
        cert.paper_bound = ladder_paper_bound(ladder.n);
        cert.residual = 0.0;
        return cert;
    }

    // Recursion products accumulate a little unitarity defect per level.
    TolerancePolicy slack = tol;
    slack.tol_unitary = std::min(1e-2, tol.tol_unitary * 1e3);

    std::function<void(const ComplexMatrix&, int)> express =
        [&](const ComplexMatrix& g, int level) {
            if (level == 0) {
                cert.letters.push_back(subgroup_letter("subgroup", g, ladder.q0));
                return;
            }
            const LadderLevel& l = ladder.levels[static_cast<size_t>(level - 1)];
            TriplePartition part(l.p1, l.p2, l.p3, tol);
            Certificate five = five_factor_decompose(make_unitary(g, slack), part, tol);
            cert.transcript.push_back({level, l.q.rank, five.residual});
            for (size_t i = 0; i < five.letters.size(); ++i) {
                const ComplexMatrix& f = std::get<ComplexMatrix>(five.letters[i].payload);
                if (five.letters[i].tag == "A") {
                    express(f, level - 1);
                } else {
                    // f in G(p2+p3) = u_i G(p1+p2) u_i^{-1}.
                    ComplexMatrix a = l.u.matrix.adjoint() * f * l.u.matrix;
                    cert.letters.push_back(generator_letter(level - 1, 1));
                    express(a, level - 1);
                    cert.letters.push_back(generator_letter(level - 1, -1));
                }
            }
        };

    express(u.matrix, ladder.n);

    cert.measured_length = total_expanded_length(cert.letters);
    cert.claimed_bound = cert.measured_length;
    cert.paper_bound = ladder_paper_bound(ladder.n);
    GroupElement prod = evaluate_word(cert.letters, cert.generators, cert.input);
    cert.residual = op_distance(std::get<ComplexMatrix>(prod), u.matrix);
    return cert;
}

} // namespace unifact
