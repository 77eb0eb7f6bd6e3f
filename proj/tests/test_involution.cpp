#include <catch_amalgamated.hpp>

#include "unifact/involution.hpp"
#include "unifact/random_perm.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

namespace {

TailPermutation conjugate_by(const TailPermutation& g, const TailPermutation& w) {
    return w.compose_after(g).compose_after(w.inverse());
}

void check_factorization(const TailPermutation& a) {
    auto [i1, i2] = factor_into_two_involutions(a);
    REQUIRE(i1.compose_after(i1).is_identity());
    REQUIRE(i2.compose_after(i2).is_identity());
    REQUIRE(i1.compose_after(i2) == a);
    ClassSet sup = a.support();
    CHECK(support_in(i1, sup).contained);
    CHECK(support_in(i2, sup).contained);
}

} // namespace

TEST_CASE("an involution factors as itself times the identity") {
    TailPermutation a = TailPermutation::from_table({1, 0});
    auto [i1, i2] = factor_into_two_involutions(a);
    CHECK(i1 == a);
    CHECK(i2.is_identity());
}

TEST_CASE("the three-cycle splits into the textbook transpositions") {
    TailPermutation a = TailPermutation::from_table({1, 2, 0});
    auto [i1, i2] = factor_into_two_involutions(a);
    CHECK(i1 == TailPermutation::from_table({1, 0}));
    CHECK(i2 == TailPermutation::from_table({0, 2, 1}));
    check_factorization(a);
}

TEST_CASE("the shift pattern reverses in class") {
    TailPermutation w(3, {1, 1, -2}, 0, {});
    auto [i1, i2] = factor_into_two_involutions(w);
    check_factorization(w);
    for (Nat x = 0; x < 300; ++x) REQUIRE(i1.apply(i2.apply(x)) == w.apply(x));
}

TEST_CASE("a bi-infinite orbit with equal escape rates reverses in place") {
    // class 0 ascends by 2, class 1 descends by 2; one Z-orbit through the
    // low region plus a fixed point.
    TailPermutation a(2, {2, -2}, 3, {0, 2, 4});
    check_factorization(a);
}

TEST_CASE("random finite permutations factor into two involutions") {
    for (std::uint64_t s = 0; s < 25; ++s) {
        check_factorization(random_finite_permutation(9, 800 + s));
    }
}

TEST_CASE("products of conjugated base involutions factor back") {
    for (std::uint64_t s = 0; s < 15; ++s) {
        TailPermutation w1 = random_tail_permutation(900 + s, 4, 12);
        TailPermutation w2 = random_tail_permutation(950 + s, 4, 12);
        TailPermutation a =
            conjugate_by(base_involution(), w1).compose_after(conjugate_by(base_involution(), w2));
        check_factorization(a);
    }
}

TEST_CASE("mixed escape rates are detected as irreversible") {
    // Classes (0 1) ascend at rate 5/2, class 2 descends at rate 5: the
    // single bi-infinite orbit is not conjugate to its inverse in the class.
    TailPermutation a(5, {1, 4, -5, 1, -1}, 5, {0, 1, 3, 4, 5});
    CHECK_THROWS_AS(factor_into_two_involutions(a), NotReversible);
}

TEST_CASE("base involution shape") {
    TailPermutation b = base_involution();
    CHECK(b.compose_after(b).is_identity());
    CHECK(is_base_shaped(b));
    CHECK(has_infinite_two_cycle_set(b));
    CHECK(has_infinite_fixed_set(b));
    CHECK(express_involution_as_base_conjugates(b).size() == 1);
}

TEST_CASE("conjugating involutions onto the base") {
    // A conjugate of the base is base-shaped and conjugates back exactly.
    TailPermutation w = random_tail_permutation(111, 4, 10);
    TailPermutation i = conjugate_by(base_involution(), w);
    REQUIRE(is_base_shaped(i));
    TailPermutation u = conjugate_involutions(base_involution(), i);
    CHECK(conjugate_by(base_involution(), u) == i);
}

TEST_CASE("non-base-shaped involutions split into two base conjugates") {
    // A finite transposition: support density zero.
    TailPermutation i = TailPermutation::from_table({1, 0});
    auto ws = express_involution_as_base_conjugates(i);
    REQUIRE(ws.size() == 2);
    TailPermutation prod = conjugate_by(base_involution(), ws[0])
                               .compose_after(conjugate_by(base_involution(), ws[1]));
    CHECK(prod == i);
    for (const auto& w : ws) {
        TailPermutation s = conjugate_by(base_involution(), w);
        CHECK(s.compose_after(s).is_identity());
        CHECK(has_infinite_two_cycle_set(s));
        CHECK(has_infinite_fixed_set(s));
    }

    // A dense involution: swaps every pair 2k <-> 2k+1, support density one.
    TailPermutation dense(2, {1, -1}, 0, {});
    auto wd = express_involution_as_base_conjugates(dense);
    REQUIRE(wd.size() == 2);
    TailPermutation prod2 = conjugate_by(base_involution(), wd[0])
                                .compose_after(conjugate_by(base_involution(), wd[1]));
    CHECK(prod2 == dense);
}

TEST_CASE("involution_factorize emits at most four base conjugates") {
    std::vector<TailPermutation> inputs = {
        TailPermutation::identity(),
        TailPermutation::from_table({1, 0}),
        TailPermutation::from_table({1, 2, 0}),
        TailPermutation(3, {1, 1, -2}, 0, {}),
        TailPermutation(2, {2, -2}, 3, {0, 2, 4}),
        random_finite_permutation(8, 4242),
    };
    for (const auto& a : inputs) {
        auto fact = involution_factorize(a);
        CHECK(fact.cert.letter_count() <= 4);
        CHECK(fact.cert.exact);
        auto rep = verify(fact.cert);
        if (!rep.ok)
            for (const auto& c : rep.checks) INFO(c.name << ": " << c.detail);
        CHECK(rep.ok);
        // All letters share the fixed base payload.
        for (const auto& l : fact.cert.letters)
            CHECK(std::get<TailPermutation>(l.payload) == base_involution());
    }
}
