#pragma once

#include <string>
#include <vector>

#include "unifact/eigen.hpp"
#include "unifact/rational.hpp"
#include "unifact/tolerance.hpp"
#include "unifact/unitary.hpp"

namespace unifact {

/// A projection: Hermitian idempotent matrix with exact rank/trace
/// bookkeeping. The rank is an integer extracted by thresholding the
/// spectrum at 1/2; eigenvalues inside (0.1, 0.9) are rejected rather than
/// rounded.
struct Projection {
    ComplexMatrix matrix;
    int rank = 0;

    int dim() const { return matrix.dim(); }
    Rational trace() const { return Rational(rank, dim()); }

    nlohmann::json to_json() const {
        auto j = matrix.to_json();
        j["rank"] = rank;
        return j;
    }
};

inline double projection_defect(const ComplexMatrix& m) {
    double idem = op_distance(m * m, m);
    double herm = operator_norm(m - m.adjoint());
    return std::max(idem, herm);
}

inline Projection make_projection(ComplexMatrix m, const TolerancePolicy& tol = {}) {
    if (projection_defect(m) > tol.tol_projection)
        throw NotAProjection("make_projection: matrix is not idempotent Hermitian within tolerance");
    auto eig = hermitian_eigendecompose((m + m.adjoint()) * Complex(0.5, 0.0), 1e-6);
    int rank = 0;
    for (double v : eig.values) {
        if (v > 0.1 && v < 0.9)
            throw NotAProjection("make_projection: eigenvalue " + std::to_string(v) +
                                 " is ambiguous under tolerance");
        if (v >= 0.5) ++rank;
    }
    return Projection{std::move(m), rank};
}

inline Projection projection_from_json(const nlohmann::json& j, const TolerancePolicy& tol = {}) {
    if (!j.contains("rank")) throw BadFormat("projection JSON: missing \"rank\"");
    Projection p = make_projection(ComplexMatrix::from_json(j), tol);
    if (p.rank != j.at("rank").get<int>())
        throw BadFormat("projection JSON: stored rank disagrees with the spectrum");
    return p;
}

/// Projection onto the span of the given standard basis indices (exact 0/1
/// entries).
inline Projection basis_projection(int dim, const std::vector<int>& indices) {
    ComplexMatrix m(dim);
    for (int i : indices) m(i, i) = 1.0;
    return Projection{std::move(m), static_cast<int>(indices.size())};
}

inline Projection zero_projection(int dim) { return Projection{ComplexMatrix::zero(dim), 0}; }
inline Projection full_projection(int dim) { return Projection{ComplexMatrix::identity(dim), dim}; }

inline Projection complement(const Projection& p) {
    return Projection{ComplexMatrix::identity(p.dim()) - p.matrix, p.dim() - p.rank};
}

/// p + q for orthogonal projections; the caller asserts orthogonality.
inline Projection orthogonal_sum(const Projection& p, const Projection& q) {
    return Projection{p.matrix + q.matrix, p.rank + q.rank};
}

/// Orthonormal basis of the range: the top-`rank` eigenvectors, in the
/// deterministic eigen order. Columns are returned as a dim x rank slab
/// packed into a vector of columns.
inline std::vector<std::vector<Complex>> range_basis(const Projection& p) {
    auto eig = hermitian_eigendecompose((p.matrix + p.matrix.adjoint()) * Complex(0.5, 0.0), 1e-6);
    int d = p.dim();
    std::vector<std::vector<Complex>> cols;
    cols.reserve(p.rank);
    for (int j = d - p.rank; j < d; ++j) {
        if (eig.values[j] < 0.9)
            throw NumericalDegeneracy("range_basis: rank inconsistent with spectrum");
        std::vector<Complex> c(d);
        for (int i = 0; i < d; ++i) c[i] = eig.vectors(i, j);
        cols.push_back(std::move(c));
    }
    return cols;
}

/// ||p q|| as an orthogonality residual.
inline double orthogonality_defect(const Projection& p, const Projection& q) {
    return operator_norm(p.matrix * q.matrix);
}

/// Is p <= q within tolerance, i.e. ||(1-q)p|| small.
inline bool is_subprojection(const Projection& p, const Projection& q,
                             const TolerancePolicy& tol = {}) {
    ComplexMatrix rest = (ComplexMatrix::identity(p.dim()) - q.matrix) * p.matrix;
    return operator_norm(rest) <= tol.tol_residual;
}

/// Corner context: operations tagged with it only produce elements acting as
/// the identity on the complement of the corner.
struct CornerContext {
    Projection corner;
    int dim() const { return corner.dim(); }
};

/// Meet p ^ q: spectral projection of p + q for eigenvalues >= 2 - tol_meet.
/// One eigendecomposition, deterministic.
inline Projection meet(const Projection& p, const Projection& q, const TolerancePolicy& tol = {}) {
    if (p.dim() != q.dim()) throw DimensionMismatch("meet: dimension mismatch");
    ComplexMatrix s = p.matrix + q.matrix;
    auto eig = hermitian_eigendecompose((s + s.adjoint()) * Complex(0.5, 0.0), 1e-6);
    int d = p.dim();
    ComplexMatrix m(d);
    int rank = 0;
    for (int j = 0; j < d; ++j) {
        if (eig.values[j] >= 2.0 - tol.tol_meet) {
            ++rank;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    m(i, k) += eig.vectors(i, j) * std::conj(eig.vectors(k, j));
        }
    }
    return Projection{std::move(m), rank};
}

/// Support of a unitary: 1 minus the spectral projection at eigenvalue 1.
/// Fixed vectors are read off the kernel of the Hermitian 2 - u - u*, whose
/// eigenvalue at mu on the unit circle is |mu - 1|^2; the cutoff is
/// tol_meet, consistent with the meet.
inline Projection support_of(const Unitary& u, const TolerancePolicy& tol = {}) {
    if (!u.certified && unitarity_defect(u.matrix) > tol.tol_unitary)
        throw NotUnitary("support_of: input is not unitary within tolerance");
    int d = u.dim();
    ComplexMatrix h = ComplexMatrix::identity(d) * Complex(2.0, 0.0) - u.matrix - u.matrix.adjoint();
    auto eig = hermitian_eigendecompose((h + h.adjoint()) * Complex(0.5, 0.0), 1e-6);
    ComplexMatrix fixed(d);
    int fixed_rank = 0;
    for (int j = 0; j < d; ++j) {
        if (eig.values[j] <= tol.tol_meet) {
            ++fixed_rank;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    fixed(i, k) += eig.vectors(i, j) * std::conj(eig.vectors(k, j));
        }
    }
    return Projection{ComplexMatrix::identity(d) - fixed, d - fixed_rank};
}

/// ||u(1-e) - (1-e)|| for a claimed support e: zero iff u acts as the
/// identity off e.
inline double support_residual(const ComplexMatrix& u, const Projection& claimed) {
    ComplexMatrix rest = ComplexMatrix::identity(u.dim()) - claimed.matrix;
    return op_distance(u * rest, rest);
}

/// Deterministic unitary w in G(c) with w p w* = q, built by pairing the
/// eigen-sorted orthonormal bases of pH with qH and of (c-p)H with (c-q)H,
/// identity off the corner. For p = q this reproduces the identity.
inline Unitary conjugator(const Projection& p, const Projection& q, const CornerContext& ctx,
                          const TolerancePolicy& tol = {}) {
    if (p.dim() != q.dim() || p.dim() != ctx.dim())
        throw DimensionMismatch("conjugator: dimension mismatch");
    if (p.rank != q.rank)
        throw RankMismatch("conjugator: rank " + std::to_string(p.rank) + " vs " +
                           std::to_string(q.rank));
    if (!is_subprojection(p, ctx.corner, tol) || !is_subprojection(q, ctx.corner, tol))
        throw NotSubprojection("conjugator: p or q exceeds the corner within tolerance");

    int d = p.dim();
    ComplexMatrix w = ComplexMatrix::identity(d) - ctx.corner.matrix;

    auto add_pairing = [&](const Projection& from, const Projection& to) {
        auto bf = range_basis(from);
        auto bt = range_basis(to);
        for (size_t k = 0; k < bf.size(); ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) w(i, j) += bt[k][i] * std::conj(bf[k][j]);
    };

    add_pairing(p, q);
    if (ctx.corner.rank > p.rank) {
        Projection cp{ctx.corner.matrix - p.matrix, ctx.corner.rank - p.rank};
        Projection cq{ctx.corner.matrix - q.matrix, ctx.corner.rank - q.rank};
        add_pairing(cp, cq);
    }
    return make_unitary(std::move(w), tol);
}

/// Symmetry 1 - 2q; Hermitian involution with support q.
inline Unitary symmetry_from(const Projection& q, const CornerContext& ctx,
                             const TolerancePolicy& tol = {}) {
    if (!is_subprojection(q, ctx.corner, tol))
        throw NotSubprojection("symmetry_from: q exceeds the corner within tolerance");
    ComplexMatrix s = ComplexMatrix::identity(q.dim()) - q.matrix * Complex(2.0, 0.0);
    return make_unitary(std::move(s), tol);
}

/// Corner trace of a symmetry 1-2q inside corner c, as an exact rational:
/// (rank c - 2 rank q) / dim.
inline Rational symmetry_corner_trace(const Projection& q, const CornerContext& ctx) {
    return Rational(ctx.corner.rank - 2 * q.rank, ctx.dim());
}

} // namespace unifact
