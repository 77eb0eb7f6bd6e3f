#pragma once

#include "unifact/eigen.hpp"
#include "unifact/random.hpp"
#include "unifact/tolerance.hpp"

namespace unifact {

/// A unitary group element: the matrix plus a flag that unitarity was
/// actually checked against the policy.
struct Unitary {
    ComplexMatrix matrix;
    bool certified = false;

    int dim() const { return matrix.dim(); }
};

inline double unitarity_defect(const ComplexMatrix& m) {
    return op_distance(m * m.adjoint(), ComplexMatrix::identity(m.dim()));
}

inline Unitary make_unitary(ComplexMatrix m, const TolerancePolicy& tol = {}) {
    double defect = unitarity_defect(m);
    if (defect > tol.tol_unitary)
        throw NotUnitary("make_unitary: ||u u* - 1|| = " + std::to_string(defect));
    return Unitary{std::move(m), true};
}

inline Unitary random_unitary(int dim, std::uint64_t seed, const TolerancePolicy& tol = {}) {
    return make_unitary(random_unitary_matrix(dim, seed), tol);
}

} // namespace unifact
