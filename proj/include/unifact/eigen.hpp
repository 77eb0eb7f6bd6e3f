#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "unifact/complex_matrix.hpp"
#include "unifact/tolerance.hpp"

namespace unifact {

struct EigenDecomposition {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns, unitary, fixed phase convention
};

namespace detail {

inline double offdiag_sq(const ComplexMatrix& h) {
    double s = 0;
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return s;
}

/// Phase convention removing eigenvector gauge freedom: the first component
/// with modulus above the cutoff is made real positive. Ties by index.
inline void fix_column_phase(ComplexMatrix& v, int col) {
    int d = v.dim();
    for (int i = 0; i < d; ++i) {
        double m = std::abs(v(i, col));
        if (m > 1e-12) {
            Complex ph = std::conj(v(i, col)) / m;
            for (int k = 0; k < d; ++k) v(k, col) *= ph;
            return;
        }
    }
}

inline void sort_eigen_ascending(std::vector<double>& lam, ComplexMatrix& v) {
    int d = v.dim();
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return lam[a] < lam[b]; });
    std::vector<double> slam(d);
    ComplexMatrix sv(d);
    for (int j = 0; j < d; ++j) {
        slam[j] = lam[idx[j]];
        for (int i = 0; i < d; ++i) sv(i, j) = v(i, idx[j]);
    }
    lam = std::move(slam);
    v = std::move(sv);
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Deterministic: fixed sweep order (p < q ascending), fixed rotation
/// formulas, stable ascending sort, phase convention per column. Identical
/// inputs give bitwise-identical outputs.
inline EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& a,
                                                   double hermitian_tol = 1e-9) {
    int d = a.dim();
    if (hermitian_defect(a) > hermitian_tol * std::max(1.0, a.frobenius_norm()))
        throw NotHermitian("hermitian_eigendecompose: input is not Hermitian within tolerance");

    // Work on the symmetrized copy; spectral claims refer to it.
    ComplexMatrix h = (a + a.adjoint()) * Complex(0.5, 0.0);
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = std::max(1.0, h.frobenius_norm());
    const double stop = 1e-14 * scale;
    const int max_sweeps = 80;

    int sweep = 0;
    while (std::sqrt(detail::offdiag_sq(h)) > stop) {
        if (++sweep > max_sweeps)
            throw NoConvergence("hermitian_eigendecompose: Jacobi sweep cap exceeded");
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                Complex beta = h(p, q);
                double ab = std::abs(beta);
                if (ab <= 1e-18 * scale) continue;
                // Phase to make the pivot real, then a real Jacobi rotation.
                Complex phase = beta / ab; // e^{i phi}
                double app = h(p, p).real();
                double aqq = h(q, q).real();
                double zeta = (aqq - app) / (2.0 * ab);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // Column rotation J: col_p' = c*col_p - s*conj(phase)... applied
                // as h <- J^* h J with J_pp = c, J_qp = -s*conj(phase),
                // J_pq = s*phase, J_qq = c.
                Complex jpq = s * phase;
                Complex jqp = -s * std::conj(phase);
                for (int k = 0; k < d; ++k) {
                    Complex hkp = h(k, p), hkq = h(k, q);
                    h(k, p) = hkp * c + hkq * jqp;
                    h(k, q) = hkp * jpq + hkq * c;
                }
                for (int k = 0; k < d; ++k) {
                    Complex hpk = h(p, k), hqk = h(q, k);
                    h(p, k) = c * hpk + std::conj(jqp) * hqk;
                    h(q, k) = std::conj(jpq) * hpk + c * hqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }

    std::vector<double> lam(d);
    for (int i = 0; i < d; ++i) lam[i] = h(i, i).real();
    detail::sort_eigen_ascending(lam, v);
    for (int j = 0; j < d; ++j) detail::fix_column_phase(v, j);
    return {std::move(lam), std::move(v)};
}

/// Largest singular value, via the spectrum of a*a.
inline double operator_norm(const ComplexMatrix& a) {
    ComplexMatrix m = a.adjoint() * a;
    auto eig = hermitian_eigendecompose(m, 1e-6);
    double top = eig.values.empty() ? 0.0 : eig.values.back();
    return std::sqrt(std::max(0.0, top));
}

inline double op_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return operator_norm(a - b);
}

/// Determinant by LU with partial pivoting.
inline Complex determinant(const ComplexMatrix& a) {
    int d = a.dim();
    ComplexMatrix lu = a;
    Complex det{1.0, 0.0};
    for (int i = 0; i < d; ++i) {
        int piv = i;
        double best = std::abs(lu(i, i));
        for (int r = i + 1; r < d; ++r) {
            double m = std::abs(lu(r, i));
            if (m > best) { best = m; piv = r; }
        }
        if (best == 0.0) return Complex{};
        if (piv != i) {
            for (int c = 0; c < d; ++c) std::swap(lu(i, c), lu(piv, c));
            det = -det;
        }
        det *= lu(i, i);
        for (int r = i + 1; r < d; ++r) {
            Complex f = lu(r, i) / lu(i, i);
            for (int c = i; c < d; ++c) lu(r, c) -= f * lu(i, c);
        }
    }
    return det;
}

struct UnitaryEigenDecomposition {
    std::vector<Complex> values; // on the unit circle, sorted by angle in (-pi, pi]
    ComplexMatrix vectors;
};

/// Spectral decomposition of a unitary matrix via its commuting Hermitian
/// parts: diagonalize Re(u), then Im(u) compressed to each eigenspace
/// cluster. Eigenvalues are normalized to the unit circle and sorted by
/// angle; the column phase convention applies.
inline UnitaryEigenDecomposition unitary_eigendecompose(const ComplexMatrix& u,
                                                        double residual_tol = 1e-8) {
    int d = u.dim();
    ComplexMatrix re = (u + u.adjoint()) * Complex(0.5, 0.0);
    ComplexMatrix im = (u - u.adjoint()) * Complex(0.0, -0.5);

    auto base = hermitian_eigendecompose(re);
    const double cluster_tol = 1e-7;

    ComplexMatrix vectors(d);
    std::vector<Complex> values(d);

    int start = 0;
    while (start < d) {
        int end = start + 1;
        while (end < d && base.values[end] - base.values[end - 1] <= cluster_tol) ++end;
        int g = end - start;
        // Compress Im(u) onto the cluster and diagonalize it there.
        ComplexMatrix k(g);
        for (int i = 0; i < g; ++i) {
            for (int j = 0; j < g; ++j) {
                Complex s{};
                for (int r = 0; r < d; ++r) {
                    Complex t{};
                    for (int c = 0; c < d; ++c) t += im(r, c) * base.vectors(c, start + j);
                    s += std::conj(base.vectors(r, start + i)) * t;
                }
                k(i, j) = s;
            }
        }
        auto sub = hermitian_eigendecompose(k, 1e-6);
        for (int j = 0; j < g; ++j) {
            for (int r = 0; r < d; ++r) {
                Complex s{};
                for (int i = 0; i < g; ++i) s += base.vectors(r, start + i) * sub.vectors(i, j);
                vectors(r, start + j) = s;
            }
            Complex z(base.values[start + j], sub.values[j]);
            double m = std::abs(z);
            values[start + j] = m > 0 ? z / m : Complex(1.0, 0.0);
        }
        start = end;
    }

    // Sort by angle, ties by index; re-fix phases afterwards.
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::arg(values[a]) < std::arg(values[b]);
    });
    UnitaryEigenDecomposition out;
    out.values.resize(d);
    out.vectors = ComplexMatrix(d);
    for (int j = 0; j < d; ++j) {
        out.values[j] = values[idx[j]];
        for (int i = 0; i < d; ++i) out.vectors(i, j) = vectors(i, idx[j]);
    }
    for (int j = 0; j < d; ++j) detail::fix_column_phase(out.vectors, j);

    // Residual guard: u V = V diag(z) must hold or the cluster split failed.
    ComplexMatrix diag(d);
    for (int j = 0; j < d; ++j) diag(j, j) = out.values[j];
    double res = op_distance(u * out.vectors, out.vectors * diag);
    if (res > residual_tol * std::max(1.0, operator_norm(u)))
        throw NumericalDegeneracy("unitary_eigendecompose: cluster split residual too large");
    return out;
}

} // namespace unifact
