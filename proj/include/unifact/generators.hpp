#pragma once

#include <cstdint>
#include <vector>

#include "unifact/five_factor.hpp"
#include "unifact/projection.hpp"

namespace unifact {

/// Seeded test-input generators shared by the test suites and the CLI bench
/// driver.

inline Projection projection_from_columns(const ComplexMatrix& u, int first, int count) {
    int d = u.dim();
    ComplexMatrix m(d);
    for (int k = first; k < first + count; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) += u(i, k) * std::conj(u(j, k));
    return Projection{std::move(m), count};
}

inline Projection random_projection(int dim, int rank, std::uint64_t seed) {
    return projection_from_columns(random_unitary_matrix(dim, seed), 0, rank);
}

/// exp(i h) through the spectral theorem; supp of the result lies under the
/// support of h.
inline Unitary unitary_exp_i(const ComplexMatrix& h, const TolerancePolicy& tol = {}) {
    auto eig = hermitian_eigendecompose(h);
    int d = h.dim();
    ComplexMatrix u(d);
    for (int k = 0; k < d; ++k) {
        Complex ph = std::exp(Complex(0.0, eig.values[k]));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                u(i, j) += ph * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    return make_unitary(std::move(u), tol);
}

/// Random admissible partition of the full space: ranks (k, k, d - 2k) over
/// a random orthonormal frame, with k seeded from [1, (d-1)/2].
inline TriplePartition random_triple_partition(int dim, std::uint64_t seed,
                                               const TolerancePolicy& tol = {}) {
    if (dim < 3) throw DimensionMismatch("random_triple_partition: need dim >= 3");
    SeededRng rng(seed);
    int kmax = (dim - 1) / 2;
    int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(kmax)));
    ComplexMatrix frame = random_unitary_matrix(dim, rng.bits());
    return TriplePartition(projection_from_columns(frame, 0, k),
                           projection_from_columns(frame, k, k),
                           projection_from_columns(frame, 2 * k, dim - 2 * k), tol);
}

/// Random element of G(c): a unitary acting inside the corner, identity off
/// it.
inline Unitary random_corner_unitary(const Projection& corner, std::uint64_t seed,
                                     const TolerancePolicy& tol = {}) {
    int d = corner.dim();
    if (corner.rank == 0) return make_unitary(ComplexMatrix::identity(d), tol);
    auto basis = range_basis(corner);
    ComplexMatrix small = random_unitary_matrix(corner.rank, seed);
    ComplexMatrix u = ComplexMatrix::identity(d) - corner.matrix;
    for (int k = 0; k < corner.rank; ++k)
        for (int l = 0; l < corner.rank; ++l) {
            Complex s = small(k, l);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) u(i, j) += s * basis[k][i] * std::conj(basis[l][j]);
        }
    return make_unitary(std::move(u), tol);
}

} // namespace unifact
