#pragma once

#include "unifact/five_factor.hpp"
#include "unifact/projection.hpp"
#include "unifact/word.hpp"

namespace unifact {

namespace detail {

inline Projection rank_one(const std::vector<Complex>& v, int d) {
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = v[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);
    return Projection{std::move(m), 1};
}

} // namespace detail

/// Factor u in G(c), corner rank 2m, into at most 2(2m-1) trace-zero
/// symmetries, each conjugate to a fixed base symmetry of the corner.
///
/// Works projectively: the corner block is rescaled to determinant one (the
/// phase is reported in the certificate), eigendecomposed, and telescoped
/// into at most 2m-1 planar rotations diag(e^{i s}, e^{-i s}). Each rotation
/// is two rank-one reflections in its plane; a shared padding projection
/// orthogonal to the plane lifts both reflections to corner-trace zero
/// without changing the product, since 1-2(a+c) = (1-2a)(1-2c) for
/// orthogonal a, c and (1-2c)^2 = 1.
inline Certificate symmetry_factorize(const Unitary& u, const CornerContext& ctx,
                                      const TolerancePolicy& tol = {}) {
    int d = u.dim();
    const Projection& c = ctx.corner;
    if (c.rank % 2 != 0 || c.rank == 0)
        throw OddCornerRank("symmetry_factorize: corner rank " + std::to_string(c.rank) +
                            " is not even and positive");
    int m = c.rank / 2;
    double corner_res = support_residual(u.matrix, c);
    if (corner_res > tol.tol_residual)
        throw NotInCorner("symmetry_factorize: supp u exceeds the corner, residual " +
                          std::to_string(corner_res));

    auto cb = range_basis(c);
    Projection q_base = zero_projection(d);
    for (int k = 0; k < m; ++k)
        q_base = orthogonal_sum(q_base, detail::rank_one(cb[static_cast<size_t>(k)], d));
    ComplexMatrix s_base = ComplexMatrix::identity(d) - q_base.matrix * Complex(2, 0);

    Certificate cert;
    cert.kind = "symmetry";
    cert.input = u.matrix;
    cert.corner = c;
    cert.claimed_bound = 2 * (2 * m - 1);
    cert.paper_bound = 16; // the cited dimension-independent constant; out of scope here
    cert.surrogate_constant = cert.claimed_bound;
    cert.phase = Complex(1, 0);

    // Already a trace-zero symmetry: a single conjugate of the base.
    if (operator_norm(u.matrix - u.matrix.adjoint()) <= tol.tol_residual &&
        op_distance(u.matrix * u.matrix, ComplexMatrix::identity(d)) <= tol.tol_residual) {
        Projection q = make_projection(
            (ComplexMatrix::identity(d) - u.matrix) * Complex(0.5, 0.0), detail::derived(tol));
        if (q.rank == m) {
            Unitary w = conjugator(q_base, q, ctx, tol);
            cert.letters = {conjugate_letter("base_conjugate", s_base, w.matrix, 1, c)};
            cert.measured_length = total_expanded_length(cert.letters);
            GroupElement prod = evaluate_word(cert.letters, {}, cert.input);
            cert.residual = op_distance(std::get<ComplexMatrix>(prod), u.matrix);
            return cert;
        }
    }

    // Corner block in the eigen-sorted corner coordinates.
    int n2 = 2 * m;
    ComplexMatrix block(n2);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) {
            Complex s{};
            for (int r = 0; r < d; ++r) {
                Complex t{};
                for (int col = 0; col < d; ++col) t += u.matrix(r, col) * cb[static_cast<size_t>(j)][col];
                s += std::conj(cb[static_cast<size_t>(i)][r]) * t;
            }
            block(i, j) = s;
        }

    Complex det = determinant(block);
    det /= std::abs(det);
    double alpha = std::arg(det);
    Complex lambda = std::exp(Complex(0, alpha / n2));
    cert.phase = lambda;
    ComplexMatrix tilt = block * (Complex(1, 0) / lambda); // determinant one

    auto eig = unitary_eigendecompose(tilt);
    std::vector<double> theta(n2);
    for (int j = 0; j < n2; ++j) theta[j] = std::arg(eig.values[j]);

    // Ambient eigenvectors.
    std::vector<std::vector<Complex>> vec(static_cast<size_t>(n2), std::vector<Complex>(d));
    for (int j = 0; j < n2; ++j)
        for (int r = 0; r < d; ++r) {
            Complex s{};
            for (int i = 0; i < n2; ++i) s += cb[static_cast<size_t>(i)][r] * eig.vectors(i, j);
            vec[static_cast<size_t>(j)][r] = s;
        }

    double partial = 0.0;
    for (int j = 0; j + 1 < n2; ++j) {
        partial += theta[j];
        Complex rot = std::exp(Complex(0, partial));
        if (std::abs(rot - Complex(1, 0)) <= 1e-12) continue; // identity rotation

        const auto& x = vec[static_cast<size_t>(j)];
        const auto& y = vec[static_cast<size_t>(j + 1)];
        std::vector<Complex> va(d), vb(d);
        double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int r = 0; r < d; ++r) {
            va[r] = (x[r] - y[r]) * inv_sqrt2;
            vb[r] = (x[r] - rot * y[r]) * inv_sqrt2;
        }
        Projection a = detail::rank_one(va, d);
        Projection b = detail::rank_one(vb, d);

        // Shared padding: m-1 directions of the corner orthogonal to the plane.
        Projection pad = zero_projection(d);
        if (m > 1) {
            ComplexMatrix plane_rest = c.matrix - detail::rank_one(x, d).matrix -
                                       detail::rank_one(y, d).matrix;
            Projection rest = make_projection(std::move(plane_rest), detail::derived(tol));
            auto rb = range_basis(rest);
            for (int k = 0; k < m - 1; ++k)
                pad = orthogonal_sum(pad, detail::rank_one(rb[static_cast<size_t>(k)], d));
        }

        for (const Projection* half : {&a, &b}) {
            Projection lifted = orthogonal_sum(*half, pad);
            Unitary w = conjugator(q_base, make_projection(lifted.matrix, detail::derived(tol)),
                                   ctx, tol);
            cert.letters.push_back(conjugate_letter("base_conjugate", s_base, w.matrix, 1, c));
        }
    }

    cert.measured_length = total_expanded_length(cert.letters);
    GroupElement prod = evaluate_word(cert.letters, {}, cert.input);
    ComplexMatrix scale = ComplexMatrix::identity(d) - c.matrix + c.matrix * lambda;
    cert.residual = op_distance(scale * std::get<ComplexMatrix>(prod), u.matrix);
    return cert;
}

} // namespace unifact
