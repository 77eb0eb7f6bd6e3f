#include <catch_amalgamated.hpp>

#include "unifact/class_set.hpp"

using namespace unifact;

TEST_CASE("class set membership and canonical form") {
    ClassSet s(3, {0, 1}, {}, {});
    CHECK(s.contains(0));
    CHECK(s.contains(1));
    CHECK(!s.contains(2));
    CHECK(s.contains(3));
    CHECK(s.is_infinite());

    // Full residue coverage reduces to modulus 1.
    ClassSet all(6, {0, 1, 2, 3, 4, 5});
    CHECK(all.modulus() == 1);
    CHECK(all == ClassSet::all());
}

TEST_CASE("redundant corrections are normalized away") {
    // plus inside a class is redundant; minus outside a class is redundant.
    ClassSet s(2, {0}, {4}, {3});
    CHECK(s.plus().empty());
    CHECK(s.minus().empty());
    CHECK(s == ClassSet::residue_classes(2, {0}));

    ClassSet t(2, {0}, {1}, {1}); // plus and minus cancel
    CHECK(t == ClassSet::residue_classes(2, {0}));
}

TEST_CASE("set algebra agrees with pointwise evaluation") {
    ClassSet a(3, {0, 1}, {}, {0});
    ClassSet b(2, {1}, {0}, {});
    ClassSet u = ClassSet::set_union(a, b);
    ClassSet i = ClassSet::set_intersection(a, b);
    ClassSet d = ClassSet::set_difference(a, b);
    ClassSet c = a.complement_set();
    for (Nat x = 0; x < 300; ++x) {
        REQUIRE(u.contains(x) == (a.contains(x) || b.contains(x)));
        REQUIRE(i.contains(x) == (a.contains(x) && b.contains(x)));
        REQUIRE(d.contains(x) == (a.contains(x) && !b.contains(x)));
        REQUIRE(c.contains(x) == !a.contains(x));
    }
}

TEST_CASE("ray machinery") {
    ClassSet s(3, {1}, {0}, {4});
    CHECK(s.ray_count(3) == 1);
    CHECK(s.ray_count(6) == 2);
    // Class 1 mod 3 with 4 removed: tail must start past 4.
    CHECK(s.ray_start(1, 3) == 7);
    auto fin = s.finite_part(3);
    CHECK(fin == std::vector<Nat>{0, 1});
}

TEST_CASE("class set JSON round trip") {
    ClassSet s(4, {1, 3}, {0}, {5});
    ClassSet t = ClassSet::from_json(s.to_json());
    CHECK(s == t);
}
