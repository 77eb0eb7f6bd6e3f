#pragma once

#include "unifact/perm_carry.hpp"
#include "unifact/word.hpp"

namespace unifact {

namespace detail {

/// The five-factor construction in the set model, for a labelled partition
/// (x1, x2, x3): mirrors the matrix construction with set operations. The
/// returned factors have supports (x2+x3, x1+x2, x2+x3, x1+x2, x2+x3).
/// Throws NotCarriable when the visible part of x2+x3 is too dense to
/// compress into x2 (the orientation fallback handles that).
inline std::vector<TailPermutation> perm_five_core(const TailPermutation& u, const ClassSet& x1,
                                                   const ClassSet& x2, const ClassSet& x3) {
    ClassSet e = ClassSet::set_union(x2, x3);
    ClassSet x12 = ClassSet::set_union(x1, x2);

    ClassSet q1 = u.image(x1);
    ClassSet q2 = u.image(x2);
    ClassSet r = ClassSet::set_intersection(e, q1);

    TailPermutation u1 = carry_into(r, x2, e);
    ClassSet q1t = u1.image(q1); // inside x1 + x2 now
    TailPermutation u2 = carry(q1t, x1, x12);
    ClassSet q2t = u2.image(u1.image(q2)); // inside e
    TailPermutation u3 = carry(q2t, x2, e);

    TailPermutation v = u3.compose_after(u2).compose_after(u1);
    TailPermutation w = v.compose_after(u); // fixes each block setwise

    TailPermutation v1 = restrict_to(w, x1);
    TailPermutation v2 = restrict_to(w, x2);
    TailPermutation v3 = restrict_to(w, x3);

    return {u1.inverse(), u2.inverse(), u3.inverse(), v1.compose_after(v2), v3};
}

} // namespace detail

/// Lemma-style five-factor decomposition in the permutation model: factors
/// alternate between G(P2+P3) and G(P1+P2), composition equals u exactly.
/// The direct orientation compresses e ^ u(P1) into P2; when that is too
/// dense for the class (the degenerate configuration), the mirrored
/// construction with P1 and P3 exchanged is used instead.
inline Certificate five_factor_decompose_perm(const TailPermutation& u, const ClassSet& p1,
                                              const ClassSet& p2, const ClassSet& p3) {
    // The three sets partition the naturals and are infinite projections.
    for (const ClassSet* p : {&p1, &p2, &p3})
        if (!p->is_infinite()) throw NotInfinite("five_factor_decompose_perm: part is finite");
    if (!ClassSet::set_intersection(p1, p2).is_empty() ||
        !ClassSet::set_intersection(p1, p3).is_empty() ||
        !ClassSet::set_intersection(p2, p3).is_empty())
        throw NotAPartition("five_factor_decompose_perm: parts overlap");
    ClassSet all = ClassSet::set_union(ClassSet::set_union(p1, p2), p3);
    if (!(all == ClassSet::all()))
        throw NotAPartition("five_factor_decompose_perm: parts do not cover the naturals");

    // Orientation dichotomy: these two overlaps cannot both be finite, else
    // u would squeeze the infinite set P2 into a finite one.
    ClassSet e = ClassSet::set_union(p2, p3);
    ClassSet x12 = ClassSet::set_union(p1, p2);
    ClassSet i1 = ClassSet::set_intersection(e, u.image(e));
    ClassSet i2 = ClassSet::set_intersection(x12, u.image(x12));
    if (!i1.is_infinite() && !i2.is_infinite())
        throw Error("five_factor_decompose_perm: orientation dichotomy violated");

    std::vector<TailPermutation> factors;
    bool mirrored = false;
    try {
        factors = detail::perm_five_core(u, p1, p2, p3);
    } catch (const NotCarriable&) {
        try {
            factors = detail::perm_five_core(u, p3, p2, p1);
            mirrored = true;
        } catch (const NotCarriable&) {
            throw DegenerateOrientation(
                "five_factor_decompose_perm: both orientations fail; the partition densities "
                "leave no room to compress the visible part into P2");
        }
    }

    Certificate cert;
    cert.kind = "perm_five_factor";
    cert.input = u;
    const char* tag_bump = mirrored ? "A" : "B"; // support x2+x3 of the core call
    const char* tag_alt = mirrored ? "B" : "A";
    ClassSet outer = mirrored ? x12 : e;
    ClassSet inner = mirrored ? e : x12;
    cert.letters = {subgroup_letter(tag_bump, factors[0], outer),
                    subgroup_letter(tag_alt, factors[1], inner),
                    subgroup_letter(tag_bump, factors[2], outer),
                    subgroup_letter(tag_alt, factors[3], inner),
                    subgroup_letter(tag_bump, factors[4], outer)};
    cert.claimed_bound = 5;
    cert.paper_bound = 5;
    cert.measured_length = 5;
    TailPermutation prod = std::get<TailPermutation>(evaluate_word(cert.letters, {}, cert.input));
    cert.exact = (prod == u);
    cert.residual = cert.exact ? 0.0 : 1.0;
    if (!cert.exact)
        throw Error("five_factor_decompose_perm: composition does not reproduce the input");
    return cert;
}

} // namespace unifact
