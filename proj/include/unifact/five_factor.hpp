#pragma once

#include "unifact/projection.hpp"
#include "unifact/word.hpp"

namespace unifact {

/// Orthogonal decomposition p = p1 + p2 + p3 with rank p1 = rank p2, all
/// parts nonzero. The equal-rank condition on the first two parts is what
/// lets an arbitrary corner unitary be rebuilt from the two overlapping
/// sub-corners.
struct TriplePartition {
    Projection p1, p2, p3;
    Projection whole; // p1 + p2 + p3

    TriplePartition(Projection a, Projection b, Projection c, const TolerancePolicy& tol = {})
        : p1(std::move(a)), p2(std::move(b)), p3(std::move(c)),
          whole{p1.matrix + p2.matrix + p3.matrix, p1.rank + p2.rank + p3.rank} {
        if (p1.dim() != p2.dim() || p1.dim() != p3.dim())
            throw DimensionMismatch("TriplePartition: dimension mismatch");
        if (p1.rank < 1 || p2.rank < 1 || p3.rank < 1)
            throw NotAProjection("TriplePartition: all parts must be nonzero");
        if (p1.rank != p2.rank)
            throw TraceMismatch("TriplePartition: rank p1 = " + std::to_string(p1.rank) +
                                " differs from rank p2 = " + std::to_string(p2.rank));
        double ortho = std::max({orthogonality_defect(p1, p2), orthogonality_defect(p1, p3),
                                 orthogonality_defect(p2, p3)});
        if (ortho > tol.tol_projection * 100)
            throw NotAProjection("TriplePartition: parts are not orthogonal, defect " +
                                 std::to_string(ortho));
    }
};

namespace detail {

/// Unitary on eH mapping range(r) onto the span of the first rank(r) basis
/// vectors of p2H, identity off e. r and the meet complement live inside e.
inline ComplexMatrix compress_into(const Projection& r, const Projection& rest,
                                   const Projection& p2, const Projection& e) {
    int d = e.dim();
    ComplexMatrix w = ComplexMatrix::identity(d) - e.matrix;
    if (e.rank == 0) return ComplexMatrix::identity(d);

    auto br = r.rank > 0 ? range_basis(r) : std::vector<std::vector<Complex>>{};
    auto brest = rest.rank > 0 ? range_basis(rest) : std::vector<std::vector<Complex>>{};

    // Target: first rank(r) vectors of p2H, then a basis of their
    // complement inside eH.
    auto b2 = range_basis(p2);
    ComplexMatrix hit(d);
    std::vector<std::vector<Complex>> targets;
    for (int k = 0; k < r.rank; ++k) {
        targets.push_back(b2[static_cast<size_t>(k)]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                hit(i, j) += b2[static_cast<size_t>(k)][i] * std::conj(b2[static_cast<size_t>(k)][j]);
    }
    Projection rest_target = make_projection(e.matrix - hit, TolerancePolicy{1e-10, 1e-6, 1e-8, 1e-8});
    auto btail = rest_target.rank > 0 ? range_basis(rest_target)
                                      : std::vector<std::vector<Complex>>{};

    std::vector<std::vector<Complex>> sources = br;
    sources.insert(sources.end(), brest.begin(), brest.end());
    targets.insert(targets.end(), btail.begin(), btail.end());
    if (sources.size() != targets.size())
        throw NumericalDegeneracy("compress_into: basis count mismatch");
    for (size_t k = 0; k < sources.size(); ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) w(i, j) += targets[k][i] * std::conj(sources[k][j]);
    return w;
}

/// Slackened policy for projections derived from products of certified
/// unitaries; their idempotency defect accumulates a few orders beyond the
/// constructor-grade tolerance but stays far below the rank thresholds.
inline TolerancePolicy derived(const TolerancePolicy& tol) {
    TolerancePolicy t = tol;
    t.tol_projection = std::min(1e-2, tol.tol_projection * 1e4);
    return t;
}

} // namespace detail

/// Five-factor decomposition of u in G(p) over the partition p = p1+p2+p3:
/// factors alternate B, A, B, A, B with A in G(p1+p2) and B in G(p2+p3).
///
/// The construction tracks the conjugated projections q_i = u p_i u*:
/// compress the visible part of e = p2+p3 into p2, align q1 with p1 inside
/// p1+p2, align the image of q2 with p2 inside e; the remaining unitary
/// commutes with the partition and splits into blocks.
inline Certificate five_factor_decompose(const Unitary& u, const TriplePartition& t,
                                         const TolerancePolicy& tol = {}) {
    int d = u.dim();
    if (d != t.p1.dim()) throw DimensionMismatch("five_factor_decompose: dimension mismatch");
    double corner_res = support_residual(u.matrix, t.whole);
    if (corner_res > tol.tol_residual)
        throw NotInCorner("five_factor_decompose: supp u exceeds the partition corner, residual " +
                          std::to_string(corner_res));

    const ComplexMatrix& um = u.matrix;
    ComplexMatrix us = um.adjoint();
    Projection q1 = make_projection(um * t.p1.matrix * us, detail::derived(tol));
    Projection q2{um * t.p2.matrix * us, t.p2.rank};
    Projection e = orthogonal_sum(t.p2, t.p3);

    // r = e - e ^ q1_perp: the part of e that q1 actually sees. The lemma
    // guarantees rank r <= rank p2; a violation is a tolerance failure.
    Projection m = meet(e, complement(q1), tol);
    if (e.rank - m.rank > t.p2.rank)
        throw NumericalDegeneracy("five_factor_decompose: trace inequality rank(e - e^q1perp) <= rank p2 failed: " +
                                  std::to_string(e.rank - m.rank) + " > " + std::to_string(t.p2.rank));
    Projection r{e.matrix - m.matrix, e.rank - m.rank};

    ComplexMatrix u1 = detail::compress_into(r, m, t.p2, e);
    Projection q1t = make_projection(u1 * q1.matrix * u1.adjoint(), detail::derived(tol));

    Projection p12 = orthogonal_sum(t.p1, t.p2);
    ComplexMatrix u2 = conjugator(q1t, t.p1, CornerContext{p12}, tol).matrix;

    Projection q2t{(u2 * u1) * q2.matrix * (u2 * u1).adjoint(), q2.rank};
    ComplexMatrix u3 = conjugator(make_projection(q2t.matrix, detail::derived(tol)), t.p2, CornerContext{e}, tol).matrix;

    ComplexMatrix v = u3 * (u2 * u1);
    ComplexMatrix w = v * um; // commutes with each p_i

    auto block = [&](const Projection& p) {
        return ComplexMatrix::identity(d) - p.matrix + p.matrix * w * p.matrix;
    };
    ComplexMatrix v1 = block(t.p1);
    ComplexMatrix v2 = block(t.p2);
    ComplexMatrix v3 = block(t.p3);

    Certificate cert;
    cert.kind = "five_factor";
    cert.input = um;
    cert.letters = {
        subgroup_letter("B", u1.adjoint(), e),
        subgroup_letter("A", u2.adjoint(), p12),
        subgroup_letter("B", u3.adjoint(), e),
        subgroup_letter("A", v1 * v2, p12),
        subgroup_letter("B", v3, e),
    };
    cert.claimed_bound = 5;
    cert.paper_bound = 5;
    cert.measured_length = 5;
    GroupElement prod = evaluate_word(cert.letters, {}, cert.input);
    cert.residual = op_distance(std::get<ComplexMatrix>(prod), um);
    return cert;
}

} // namespace unifact
