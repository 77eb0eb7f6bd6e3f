#include <catch_amalgamated.hpp>

#include "unifact/eigen.hpp"
#include "unifact/random.hpp"
#include "unifact/unitary.hpp"

using namespace unifact;

namespace {

ComplexMatrix diag(std::initializer_list<double> entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    int i = 0;
    for (double v : entries) m(i, i) = v, ++i;
    return m;
}

} // namespace

TEST_CASE("eigendecomposition of a diagonal matrix sorts ascending") {
    auto eig = hermitian_eigendecompose(diag({3, 1, 2}));
    REQUIRE(eig.values.size() == 3);
    CHECK(eig.values[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(eig.values[1] == Catch::Approx(2.0).margin(1e-12));
    CHECK(eig.values[2] == Catch::Approx(3.0).margin(1e-12));
    // Eigenvectors form a permutation matrix under the phase convention.
    for (int j = 0; j < 3; ++j) {
        int ones = 0;
        for (int i = 0; i < 3; ++i) {
            double m = std::abs(eig.vectors(i, j));
            if (m > 0.5) {
                ++ones;
                CHECK(eig.vectors(i, j).real() == Catch::Approx(1.0).margin(1e-12));
            } else {
                CHECK(m < 1e-12);
            }
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("eigendecomposition of the zero matrix is the identity basis") {
    auto eig = hermitian_eigendecompose(ComplexMatrix::zero(4));
    for (double v : eig.values) CHECK(v == 0.0);
    CHECK(op_distance(eig.vectors, ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("eigendecomposition of [[0,1],[1,0]]") {
    ComplexMatrix a(2);
    a(0, 1) = 1;
    a(1, 0) = 1;
    auto eig = hermitian_eigendecompose(a);
    CHECK(eig.values[0] == Catch::Approx(-1.0).margin(1e-12));
    CHECK(eig.values[1] == Catch::Approx(1.0).margin(1e-12));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(eig.vectors(0, 0) - Complex(s, 0)) < 1e-12);
    CHECK(std::abs(eig.vectors(1, 0) - Complex(-s, 0)) < 1e-12);
    CHECK(std::abs(eig.vectors(0, 1) - Complex(s, 0)) < 1e-12);
    CHECK(std::abs(eig.vectors(1, 1) - Complex(s, 0)) < 1e-12);
    // a V = V diag by direct multiplication.
    ComplexMatrix d(2);
    d(0, 0) = eig.values[0];
    d(1, 1) = eig.values[1];
    CHECK(op_distance(a * eig.vectors, eig.vectors * d) < 1e-12);
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix a(2);
    a(0, 1) = 1; // a(1,0) stays 0
    CHECK_THROWS_AS(hermitian_eigendecompose(a), NotHermitian);
}

TEST_CASE("reconstruction residual over seeded Hermitian inputs") {
    for (int d = 2; d <= 12; ++d) {
        for (int s = 0; s < 100; ++s) {
            ComplexMatrix a = random_hermitian(d, 1000 * d + s);
            auto eig = hermitian_eigendecompose(a);
            ComplexMatrix dm(d);
            for (int i = 0; i < d; ++i) dm(i, i) = eig.values[i];
            ComplexMatrix rec = eig.vectors * dm * eig.vectors.adjoint();
            double bound = 1e-8 * std::max(1.0, operator_norm(a));
            REQUIRE(op_distance(a, rec) <= bound);
            REQUIRE(unitarity_defect(eig.vectors) <= 1e-10);
        }
    }
}

TEST_CASE("eigendecomposition determinism is bitwise") {
    ComplexMatrix a = random_hermitian(7, 99);
    auto e1 = hermitian_eigendecompose(a);
    auto e2 = hermitian_eigendecompose(a);
    CHECK(e1.values == e2.values);
    CHECK(e1.vectors.bitwise_equal(e2.vectors));
}

TEST_CASE("operator norm basics") {
    CHECK(operator_norm(ComplexMatrix::identity(3)) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(operator_norm(ComplexMatrix::zero(3)) == 0.0);
    ComplexMatrix n(2);
    n(0, 1) = 2; // singular values sqrt(eig(a*a)) = {2, 0}
    CHECK(operator_norm(n) == Catch::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("random_unitary determinism and unitarity") {
    auto u1 = random_unitary(3, 42);
    auto u2 = random_unitary(3, 42);
    CHECK(u1.matrix.bitwise_equal(u2.matrix));
    CHECK(u1.certified);

    auto u = random_unitary(5, 7);
    CHECK(unitarity_defect(u.matrix) <= 1e-10);

    auto z = random_unitary(1, 13);
    CHECK(std::abs(std::abs(z.matrix(0, 0)) - 1.0) < 1e-12);

    for (int d = 2; d <= 10; ++d)
        for (std::uint64_t s = 0; s < 20; ++s)
            REQUIRE(unitarity_defect(random_unitary(d, s).matrix) <= 1e-10);
}

TEST_CASE("unitary eigendecomposition recovers the spectrum") {
    // 3-cycle permutation matrix: eigenvalues are the cube roots of unity.
    ComplexMatrix c(3);
    c(0, 2) = 1;
    c(1, 0) = 1;
    c(2, 1) = 1;
    auto eig = unitary_eigendecompose(c);
    for (const auto& z : eig.values) CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    ComplexMatrix d(3);
    for (int j = 0; j < 3; ++j) d(j, j) = eig.values[j];
    CHECK(op_distance(c * eig.vectors, eig.vectors * d) < 1e-9);

    for (std::uint64_t s = 0; s < 10; ++s) {
        auto u = random_unitary(6, 500 + s);
        auto e = unitary_eigendecompose(u.matrix);
        ComplexMatrix dm(6);
        for (int j = 0; j < 6; ++j) dm(j, j) = e.values[j];
        REQUIRE(op_distance(u.matrix * e.vectors, e.vectors * dm) < 1e-8);
    }
}

TEST_CASE("determinant of a unitary has unit modulus") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto u = random_unitary(5, 900 + s);
        CHECK(std::abs(std::abs(determinant(u.matrix)) - 1.0) < 1e-10);
    }
    CHECK(std::abs(determinant(ComplexMatrix::identity(4)) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("matrix JSON round trip and validation") {
    ComplexMatrix a = random_hermitian(3, 5);
    auto j = a.to_json();
    ComplexMatrix b = ComplexMatrix::from_json(j);
    CHECK(a.bitwise_equal(b));

    auto bad = j;
    bad["data"].erase(0);
    CHECK_THROWS_AS(ComplexMatrix::from_json(bad), BadFormat);
}
