#include <catch_amalgamated.hpp>

#include "unifact/cond_c.hpp"
#include "unifact/random_perm.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

TEST_CASE("the default generator is the mod-3 class shift") {
    auto res = cond_c_express_perm(TailPermutation::identity());
    CHECK(res.generator == TailPermutation(3, {1, 1, -2}, 0, {}));
    ClassSet p = default_cond_c_set();
    CHECK(res.generator.image(p) == ClassSet::set_union(res.p2, res.p3));
}

TEST_CASE("elements of G(P) get a single letter") {
    // Supported in classes {0,1} mod 3: a transposition of 0 and 1.
    TailPermutation u = TailPermutation::from_table({1, 0});
    auto res = cond_c_express_perm(u);
    CHECK(res.cert.letters.size() == 1);
    CHECK(res.cert.exact);
    CHECK(verify(res.cert).ok);
}

TEST_CASE("a transposition crossing the partition uses at most 11 letters") {
    TailPermutation u = TailPermutation::from_table({2, 1, 0}); // swaps 0 and 2
    auto res = cond_c_express_perm(u);
    CHECK(res.cert.measured_length <= 11);
    CHECK(res.cert.paper_bound == 8);
    CHECK(res.cert.exact);
    auto rep = verify(res.cert);
    if (!rep.ok)
        for (const auto& c : rep.checks) INFO(c.name << ": " << c.detail);
    CHECK(rep.ok);
    // Letters are G(P) elements or powers of the single generator.
    for (const auto& l : res.cert.letters) {
        if (l.kind() == Letter::Kind::Generator) {
            CHECK(l.generator_index == 0);
        } else {
            CHECK(support_in(std::get<TailPermutation>(l.payload),
                             std::get<ClassSet>(l.support))
                      .contained);
        }
    }
}

TEST_CASE("random permutations express over G(P) and the shift") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        TailPermutation u = random_tail_permutation(7000 + s, 6, 20);
        auto res = cond_c_express_perm(u);
        REQUIRE(res.cert.exact);
        REQUIRE(res.cert.measured_length <= 11);
        REQUIRE(verify(res.cert).ok);
    }
}

TEST_CASE("thin sets are rejected with a density explanation") {
    ClassSet thin = ClassSet::residue_classes(3, {0});
    CHECK_THROWS_AS(cond_c_express_perm(TailPermutation::identity(), thin), NotCarriable);
    ClassSet finite_complement = ClassSet::all();
    CHECK_THROWS_AS(cond_c_express_perm(TailPermutation::identity(), finite_complement),
                    NotInfinite);
}

TEST_CASE("a denser P than the default also works") {
    ClassSet p = ClassSet::residue_classes(4, {0, 1, 2});
    for (std::uint64_t s = 0; s < 5; ++s) {
        TailPermutation u = random_tail_permutation(7100 + s, 4, 12);
        auto res = cond_c_express_perm(u, p);
        REQUIRE(res.cert.exact);
        REQUIRE(verify(res.cert).ok);
    }
}
