#include <catch_amalgamated.hpp>

#include "unifact/assemble.hpp"
#include "unifact/chain_oracle.hpp"
#include "unifact/generators.hpp"
#include "unifact/symmetry_factor.hpp"

using namespace unifact;

TEST_CASE("symbolic accounting equals 3nm on the worst case") {
    CHECK(assemble_bound_symbolic(1, 1) == 3);
    CHECK(assemble_bound_symbolic(4, 8) == 96);
    CHECK(assemble_bound_symbolic(4, 11) == 132);
    for (long long n = 1; n <= 20; ++n)
        for (long long m = 1; m <= 20; ++m) REQUIRE(assemble_bound_symbolic(n, m) == 3 * n * m);
}

TEST_CASE("witness substitution preserves conjugates exactly") {
    // supp g <= p and w p = v p force w g w* = v g v*.
    Projection p = random_projection(5, 2, 7);
    ComplexMatrix g = random_corner_unitary(p, 8).matrix;
    ComplexMatrix v = random_unitary(5, 9).matrix;
    // w agrees with v on pH but acts differently elsewhere.
    ComplexMatrix tail = random_corner_unitary(complement(p), 10).matrix;
    ComplexMatrix w = v * tail;
    CHECK(operator_norm((w - v) * p.matrix) <= 1e-9);
    CHECK(op_distance(w * g * w.adjoint(), v * g * v.adjoint()) <= 1e-8);
}

TEST_CASE("assembled certificates evaluate to their targets") {
    // Corner p of rank 2 inside d = 4; one condition-(C) slot per G(p)
    // element, expanded through symmetry certificates with perturbed-off-p
    // witnesses.
    ComplexMatrix frame = random_unitary_matrix(4, 21);
    Projection p = projection_from_columns(frame, 0, 2);
    CornerContext ctx{p};

    Certificate c_cert;
    c_cert.kind = "cond_c_matrix";
    std::vector<Certificate> b_certs;
    std::vector<std::vector<GroupElement>> witnesses;

    ComplexMatrix target = ComplexMatrix::identity(4);
    for (std::uint64_t s = 0; s < 3; ++s) {
        Unitary u = random_corner_unitary(p, 100 + s);
        target = target * u.matrix;
        c_cert.letters.push_back(subgroup_letter("subgroup", u.matrix, p));
        Certificate b = symmetry_factorize(u, ctx);
        // Witness: agrees with each conjugator on pH, differs off it.
        std::vector<GroupElement> wit;
        for (size_t k = 0; k < b.letters.size(); ++k) {
            ComplexMatrix conj = std::get<ComplexMatrix>(*b.letters[k].conjugator);
            ComplexMatrix off = random_corner_unitary(complement(p), 500 + 10 * s + k).matrix;
            wit.push_back(conj * off);
        }
        b_certs.push_back(std::move(b));
        witnesses.push_back(std::move(wit));
    }
    c_cert.input = target;
    c_cert.claimed_bound = 3;
    c_cert.paper_bound = 3;
    c_cert.measured_length = 3;

    // The symmetry certificates carry a corner phase; fold the phases into
    // the comparison target.
    Complex phase(1, 0);
    for (const auto& b : b_certs) phase *= b.phase.value_or(Complex(1, 0));
    ComplexMatrix scale = ComplexMatrix::identity(4) - p.matrix + p.matrix * phase;

    Certificate assembled = assemble_3nm(c_cert, b_certs, witnesses);
    CHECK(assembled.measured_length <= assembled.claimed_bound);
    ComplexMatrix prod =
        std::get<ComplexMatrix>(evaluate_word(assembled.letters, assembled.generators, assembled.input));
    CHECK(op_distance(scale * prod, target) <= 1e-8);
}

TEST_CASE("missing and incompatible inputs are reported") {
    Certificate c_cert;
    c_cert.kind = "cond_c_matrix";
    c_cert.input = ComplexMatrix::identity(2);
    c_cert.letters = {subgroup_letter("subgroup", ComplexMatrix::identity(2), full_projection(2))};
    CHECK_THROWS_AS(assemble_3nm(c_cert, {}, {}), MissingWitness);

    Certificate wrong;
    wrong.kind = "symmetry";
    wrong.input = random_unitary(2, 5).matrix;
    wrong.letters = {conjugate_letter("base_conjugate", ComplexMatrix::identity(2),
                                      ComplexMatrix::identity(2))};
    CHECK_THROWS_AS(assemble_3nm(c_cert, {wrong}, {{GroupElement(ComplexMatrix::identity(2))}}),
                    IncompatibleProjections);
}
