#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "unifact/eigen.hpp"
#include "unifact/errors.hpp"

namespace unifact {

/// Seeded generator with fully specified output. std::mt19937_64 is exact in
/// the standard; doubles are derived from raw bits rather than through the
/// (implementation-defined) standard distributions, so identical seeds give
/// identical streams everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    double uniform() { // in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Box-Muller normal deviate.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return n == 0 ? 0 : gen_() % n;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0;
    bool have_spare_ = false;
};

inline ComplexMatrix random_gaussian_matrix(int dim, SeededRng& rng) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return g;
}

/// Haar-style random unitary: orthonormalize a seeded complex Gaussian
/// matrix (two modified Gram-Schmidt passes), then apply the fixed phase
/// convention per column. Identical (dim, seed) gives bitwise-identical
/// output.
inline ComplexMatrix random_unitary_matrix(int dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionMismatch("random_unitary: dim must be >= 1");
    SeededRng rng(seed);
    ComplexMatrix u = random_gaussian_matrix(dim, rng);
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < j; ++k) {
                Complex dot{};
                for (int i = 0; i < dim; ++i) dot += std::conj(u(i, k)) * u(i, j);
                for (int i = 0; i < dim; ++i) u(i, j) -= dot * u(i, k);
            }
            double nrm = 0;
            for (int i = 0; i < dim; ++i) nrm += std::norm(u(i, j));
            nrm = std::sqrt(nrm);
            for (int i = 0; i < dim; ++i) u(i, j) /= nrm;
        }
    }
    for (int j = 0; j < dim; ++j) detail::fix_column_phase(u, j);
    return u;
}

inline ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
    SeededRng rng(seed);
    ComplexMatrix g = random_gaussian_matrix(dim, rng);
    return (g + g.adjoint()) * Complex(0.5, 0.0);
}

} // namespace unifact
