#include <catch_amalgamated.hpp>

#include "unifact/random_perm.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

TEST_CASE("empty word evaluates to the identity") {
    GroupElement like_m = ComplexMatrix::identity(3);
    auto m = evaluate_word({}, {}, like_m);
    CHECK(op_distance(std::get<ComplexMatrix>(m), ComplexMatrix::identity(3)) == 0.0);

    GroupElement like_p = TailPermutation::identity();
    auto p = evaluate_word({}, {}, like_p);
    CHECK(std::get<TailPermutation>(p).is_identity());
}

TEST_CASE("generator letters resolve with powers") {
    auto g = random_unitary(3, 3).matrix;
    std::vector<GroupElement> gens = {g};
    std::vector<Letter> word = {generator_letter(0, 1), generator_letter(0, -1)};
    auto prod = evaluate_word(word, gens, GroupElement(g));
    CHECK(op_distance(std::get<ComplexMatrix>(prod), ComplexMatrix::identity(3)) < 1e-9);
}

TEST_CASE("conjugate letters expand to three primitive letters") {
    Letter c = conjugate_letter("base_conjugate", ComplexMatrix::identity(2),
                                ComplexMatrix::identity(2));
    CHECK(c.expanded_length() == 3);
    CHECK(c.kind() == Letter::Kind::Conjugate);
    std::vector<Letter> w = {c, subgroup_letter("subgroup", ComplexMatrix::identity(2),
                                                std::monostate{})};
    CHECK(total_expanded_length(w) == 4);
}

TEST_CASE("conjugate letters evaluate to w g w^{-1} in both models") {
    auto g = random_unitary(3, 11).matrix;
    auto w = random_unitary(3, 12).matrix;
    Letter l = conjugate_letter("base_conjugate", g, w, -1);
    auto val = std::get<ComplexMatrix>(evaluate_word({l}, {}, GroupElement(g)));
    CHECK(op_distance(val, w * g.adjoint() * w.adjoint()) < 1e-10);

    TailPermutation pg = random_tail_permutation(13);
    TailPermutation pw = random_tail_permutation(14);
    Letter pl = conjugate_letter("base_conjugate", pg, pw);
    auto pval = std::get<TailPermutation>(evaluate_word({pl}, {}, GroupElement(pg)));
    CHECK(pval == pw.compose_after(pg).compose_after(pw.inverse()));
}

TEST_CASE("mixed payloads are rejected") {
    std::vector<Letter> w = {subgroup_letter("subgroup", ComplexMatrix::identity(2), std::monostate{}),
                             subgroup_letter("subgroup", TailPermutation::identity(), std::monostate{})};
    CHECK_THROWS_AS(evaluate_word(w, {}, GroupElement(ComplexMatrix::identity(2))), MixedPayloads);
}

TEST_CASE("certificate JSON round trip preserves verification") {
    Certificate cert;
    cert.kind = "five_factor";
    auto u = random_unitary(3, 21).matrix;
    cert.input = u;
    cert.letters = {subgroup_letter("B", u, full_projection(3)),
                    subgroup_letter("A", ComplexMatrix::identity(3), full_projection(3)),
                    subgroup_letter("B", ComplexMatrix::identity(3), full_projection(3)),
                    subgroup_letter("A", ComplexMatrix::identity(3), full_projection(3)),
                    subgroup_letter("B", ComplexMatrix::identity(3), full_projection(3))};
    cert.claimed_bound = 5;
    cert.paper_bound = 5;
    cert.measured_length = 5;
    cert.residual = 0.0;
    REQUIRE(verify(cert).ok);

    auto j = certificate_to_json(cert);
    auto back = certificate_from_json(j);
    CHECK(verify(back).ok);
    CHECK(back.letters.size() == 5);
    CHECK(back.kind == "five_factor");

    // Permutation model round trip.
    Certificate pc;
    pc.kind = "perm_five_factor";
    TailPermutation w = random_tail_permutation(31);
    pc.input = w;
    pc.letters = {subgroup_letter("B", w, ClassSet::all()),
                  subgroup_letter("A", TailPermutation::identity(), ClassSet::all()),
                  subgroup_letter("B", TailPermutation::identity(), ClassSet::all()),
                  subgroup_letter("A", TailPermutation::identity(), ClassSet::all()),
                  subgroup_letter("B", TailPermutation::identity(), ClassSet::all())};
    pc.claimed_bound = 5;
    pc.paper_bound = 5;
    pc.measured_length = 5;
    pc.exact = true;
    REQUIRE(verify(pc).ok);
    auto pj = certificate_to_json(pc);
    CHECK(verify_json(pj).ok);
}

TEST_CASE("malformed certificate JSON yields a failing report, not a crash") {
    nlohmann::json j = {{"kind", "five_factor"}};
    auto rep = verify_json(j);
    CHECK(!rep.ok);
    REQUIRE(!rep.checks.empty());
    CHECK(rep.checks[0].name == "well_formed");
}

TEST_CASE("blockwise assembly over orthogonal class sets stays in the class") {
    // Disjoint blocks covering the naturals, one permutation per block: the
    // assembled bijection is a class member and restricts correctly.
    std::vector<ClassSet> blocks;
    for (Nat r = 0; r < 4; ++r) blocks.push_back(ClassSet::residue_classes(4, {r}));

    std::vector<TailPermutation> parts;
    // Block 0: shift by 4 inside class 0 with a wrap at the bottom is not in
    // the class; instead swap consecutive class members pairwise.
    parts.push_back(TailPermutation(8, {4, 0, 0, 0, -4, 0, 0, 0}, 0, {}));
    parts.push_back(TailPermutation::from_table({0, 5, 2, 3, 4, 1})); // swaps 1 and 5
    parts.push_back(TailPermutation::identity());
    parts.push_back(TailPermutation(8, {0, 0, 0, 4, 0, 0, 0, -4}, 0, {}));

    TailPermutation assembled = TailPermutation::identity();
    for (size_t i = 0; i < blocks.size(); ++i) {
        REQUIRE(support_in(parts[i], blocks[i]).contained);
        assembled = assembled.compose_after(parts[i]);
    }
    // Membership in the class is witnessed by construction; restriction to
    // each block recovers the part.
    for (size_t i = 0; i < blocks.size(); ++i)
        REQUIRE(restrict_to(assembled, blocks[i]) == parts[i]);
}
