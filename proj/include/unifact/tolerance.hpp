#pragma once

#include "unifact/errors.hpp"

namespace unifact {

/// Uniform tolerance policy for all residual claims. Nothing in the library
/// compares floating-point values exactly; every equality is a residual bound
/// against one of these.
struct TolerancePolicy {
    double tol_unitary = 1e-10;
    double tol_projection = 1e-10;
    double tol_meet = 1e-8;
    double tol_residual = 1e-8;

    void validate() const {
        auto ok = [](double t) { return t >= 0.0 && t <= 1e-2; };
        if (!ok(tol_unitary) || !ok(tol_projection) || !ok(tol_meet) || !ok(tol_residual))
            throw Error("TolerancePolicy: each tolerance must lie in [0, 1e-2]");
    }
};

} // namespace unifact
