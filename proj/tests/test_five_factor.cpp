#include <catch_amalgamated.hpp>

#include "unifact/five_factor.hpp"
#include "unifact/generators.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

namespace {

TriplePartition diagonal_partition_3() {
    return TriplePartition(basis_projection(3, {0}), basis_projection(3, {1}),
                           basis_projection(3, {2}));
}

} // namespace

TEST_CASE("identity decomposes into five near-identity factors") {
    auto t = diagonal_partition_3();
    auto cert = five_factor_decompose(make_unitary(ComplexMatrix::identity(3)), t);
    REQUIRE(cert.letters.size() == 5);
    CHECK(cert.residual < 1e-12);
    for (const auto& l : cert.letters)
        CHECK(op_distance(std::get<ComplexMatrix>(l.payload), ComplexMatrix::identity(3)) < 1e-10);
}

TEST_CASE("three-cycle over the diagonal partition") {
    ComplexMatrix c(3);
    c(0, 2) = 1;
    c(1, 0) = 1;
    c(2, 1) = 1;
    auto t = diagonal_partition_3();
    auto cert = five_factor_decompose(make_unitary(std::move(c)), t);
    CHECK(cert.residual <= 1e-10);
    // Support containment of each factor, directly.
    Projection e = orthogonal_sum(t.p2, t.p3);
    Projection p12 = orthogonal_sum(t.p1, t.p2);
    const Projection* expect[5] = {&e, &p12, &e, &p12, &e};
    for (int i = 0; i < 5; ++i) {
        const auto& f = std::get<ComplexMatrix>(cert.letters[static_cast<size_t>(i)].payload);
        CHECK(support_residual(f, *expect[i]) <= 1e-10);
    }
    CHECK(verify(cert).ok);
}

TEST_CASE("five-factor pattern alternates B,A,B,A,B") {
    auto t = diagonal_partition_3();
    auto cert = five_factor_decompose(random_unitary(3, 5), t);
    REQUIRE(cert.letters.size() == 5);
    CHECK(cert.letters[0].tag == "B");
    CHECK(cert.letters[1].tag == "A");
    CHECK(cert.letters[2].tag == "B");
    CHECK(cert.letters[3].tag == "A");
    CHECK(cert.letters[4].tag == "B");
}

TEST_CASE("random unitaries with random admissible partitions verify") {
    for (int d = 3; d <= 8; ++d) {
        for (std::uint64_t s = 0; s < 6; ++s) {
            auto t = random_triple_partition(d, 10 * static_cast<std::uint64_t>(d) + s);
            auto u = random_unitary(d, 77 * static_cast<std::uint64_t>(d) + s);
            auto cert = five_factor_decompose(u, t);
            REQUIRE(cert.residual <= 1e-8);
            auto rep = verify(cert);
            if (!rep.ok)
                for (const auto& c : rep.checks) INFO(c.name << " " << c.detail);
            REQUIRE(rep.ok);
        }
    }
}

TEST_CASE("block commutation: v conjugates q_i back onto p_i") {
    auto t = random_triple_partition(6, 44);
    auto u = random_unitary(6, 45);
    auto cert = five_factor_decompose(u, t);
    // v = u3 u2 u1 = f3* f2* f1*.
    const auto& f1 = std::get<ComplexMatrix>(cert.letters[0].payload);
    const auto& f2 = std::get<ComplexMatrix>(cert.letters[1].payload);
    const auto& f3 = std::get<ComplexMatrix>(cert.letters[2].payload);
    ComplexMatrix v = f3.adjoint() * f2.adjoint() * f1.adjoint();
    for (const Projection* p : {&t.p1, &t.p2, &t.p3}) {
        ComplexMatrix q = u.matrix * p->matrix * u.matrix.adjoint();
        CHECK(op_distance(v * q * v.adjoint(), p->matrix) <= 1e-8);
    }
}

TEST_CASE("corner-restricted input inside a proper corner") {
    // Partition of a rank-4 corner inside d=6; u acts only there.
    ComplexMatrix frame = random_unitary_matrix(6, 91);
    Projection p1 = projection_from_columns(frame, 0, 1);
    Projection p2 = projection_from_columns(frame, 1, 1);
    Projection p3 = projection_from_columns(frame, 2, 2);
    TriplePartition t(p1, p2, p3);
    Unitary u = random_corner_unitary(t.whole, 92);
    auto cert = five_factor_decompose(u, t);
    CHECK(cert.residual <= 1e-8);
    CHECK(verify(cert).ok);
}

TEST_CASE("inputs escaping the corner are rejected") {
    ComplexMatrix frame = random_unitary_matrix(6, 91);
    TriplePartition t(projection_from_columns(frame, 0, 1), projection_from_columns(frame, 1, 1),
                      projection_from_columns(frame, 2, 2));
    auto u = random_unitary(6, 93); // generic: not supported in the corner
    CHECK_THROWS_AS(five_factor_decompose(u, t), NotInCorner);
}

TEST_CASE("partition preconditions") {
    CHECK_THROWS_AS(TriplePartition(basis_projection(4, {0}), basis_projection(4, {1, 2}),
                                    basis_projection(4, {3})),
                    TraceMismatch);
    CHECK_THROWS_AS(TriplePartition(basis_projection(3, {0}), basis_projection(3, {1}),
                                    zero_projection(3)),
                    NotAProjection);
    // Non-orthogonal parts.
    CHECK_THROWS_AS(TriplePartition(basis_projection(3, {0}), basis_projection(3, {0}),
                                    basis_projection(3, {2})),
                    NotAProjection);
}

TEST_CASE("tampered five-factor certificates are rejected") {
    auto t = diagonal_partition_3();
    auto cert = five_factor_decompose(random_unitary(3, 7), t);
    REQUIRE(verify(cert).ok);

    SECTION("letter swap breaks the product") {
        auto bad = cert;
        std::swap(bad.letters[0], bad.letters[2]);
        auto prod = evaluate_word(bad.letters, {}, bad.input);
        if (op_distance(std::get<ComplexMatrix>(prod), std::get<ComplexMatrix>(bad.input)) > 1e-6)
            CHECK(!verify(bad).ok);
    }
    SECTION("payload perturbation breaks unitarity and the product") {
        auto bad = cert;
        auto m = std::get<ComplexMatrix>(bad.letters[1].payload);
        m(0, 0) += 1e-3;
        bad.letters[1].payload = m;
        CHECK(!verify(bad).ok);
    }
    SECTION("bound tampering is caught") {
        auto bad = cert;
        bad.claimed_bound = 4;
        CHECK(!verify(bad).ok);
    }
}
