#include <catch_amalgamated.hpp>

#include "unifact/generators.hpp"
#include "unifact/symmetry_factor.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

TEST_CASE("a trace-zero symmetry certifies with one letter") {
    int d = 6, m = 3;
    Projection q = random_projection(d, m, 17);
    CornerContext ctx{full_projection(d)};
    Unitary s = symmetry_from(q, ctx);
    auto cert = symmetry_factorize(s, ctx);
    CHECK(cert.letters.size() == 1);
    CHECK(cert.residual <= 1e-9);
    CHECK(verify(cert).ok);
}

TEST_CASE("diag(i, -i) splits into two trace-zero symmetries up to phase") {
    ComplexMatrix u(2);
    u(0, 0) = Complex(0, 1);
    u(1, 1) = Complex(0, -1);
    CornerContext ctx{full_projection(2)};
    auto cert = symmetry_factorize(make_unitary(std::move(u)), ctx);
    CHECK(cert.letters.size() <= 2);
    CHECK(cert.residual <= 1e-10);
    auto rep = verify(cert);
    for (const auto& c : rep.checks) INFO(c.name << ": " << c.detail);
    CHECK(rep.ok);
}

TEST_CASE("random unitaries factor into at most 2(2m-1) base conjugates") {
    for (int m = 1; m <= 4; ++m) {
        int d = 2 * m;
        CornerContext ctx{full_projection(d)};
        for (std::uint64_t s = 0; s < 5; ++s) {
            Unitary u = random_unitary(d, 1000 * static_cast<std::uint64_t>(m) + s);
            auto cert = symmetry_factorize(u, ctx);
            REQUIRE(cert.letter_count() <= 2 * (2 * m - 1));
            REQUIRE(cert.residual <= 1e-8);
            // Every factor: Hermitian, involutive, corner trace zero, and a
            // conjugate of the base by an emitted corner conjugator.
            for (const auto& l : cert.letters) {
                ComplexMatrix sym = std::get<ComplexMatrix>(evaluate_word({l}, {}, cert.input));
                CHECK(operator_norm(sym - sym.adjoint()) <= 1e-9);
                CHECK(op_distance(sym * sym, ComplexMatrix::identity(d)) <= 1e-9);
                CHECK(std::abs(sym.trace()) <= 1e-8);
            }
            auto rep = verify(cert);
            if (!rep.ok)
                for (const auto& c : rep.checks) INFO(c.name << ": " << c.detail);
            REQUIRE(rep.ok);
        }
    }
}

TEST_CASE("factorization works inside a proper even corner") {
    // Corner of rank 4 inside d = 7.
    ComplexMatrix frame = random_unitary_matrix(7, 123);
    Projection c = projection_from_columns(frame, 0, 4);
    CornerContext ctx{c};
    Unitary u = random_corner_unitary(c, 124);
    auto cert = symmetry_factorize(u, ctx);
    CHECK(cert.letter_count() <= 2 * (2 * 2 - 1));
    CHECK(cert.residual <= 1e-8);
    // Corner trace zero here means trace equals d - rank c off the corner.
    for (const auto& l : cert.letters) {
        ComplexMatrix sym = std::get<ComplexMatrix>(evaluate_word({l}, {}, cert.input));
        CHECK(std::abs(sym.trace() - Complex(7 - 4, 0)) <= 1e-8);
        CHECK(support_residual(sym, c) <= 1e-8);
    }
    CHECK(verify(cert).ok);
}

TEST_CASE("odd corners and escaping inputs are rejected") {
    CornerContext odd{basis_projection(3, {0, 1, 2})};
    CHECK_THROWS_AS(symmetry_factorize(random_unitary(3, 5), odd), OddCornerRank);

    CornerContext small{basis_projection(4, {0, 1})};
    CHECK_THROWS_AS(symmetry_factorize(random_unitary(4, 6), small), NotInCorner);
}

TEST_CASE("identity factorizes with zero letters") {
    CornerContext ctx{full_projection(4)};
    auto cert = symmetry_factorize(make_unitary(ComplexMatrix::identity(4)), ctx);
    CHECK(cert.letters.empty());
    CHECK(cert.residual <= 1e-10);
    CHECK(verify(cert).ok);
}
