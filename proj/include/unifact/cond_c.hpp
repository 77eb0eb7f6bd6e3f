#pragma once

#include "unifact/perm_five_factor.hpp"

namespace unifact {

/// Condition (C) in the permutation model: express u over G(P) and one
/// designated generator w (the class shift carrying P onto P2+P3), by
/// rewriting the five-factor letters outside G(P) as w a w^{-1}. The direct
/// construction yields 11 letters against the claimed 8; both are recorded.
struct CondCResult {
    Certificate cert;
    TailPermutation generator;
    ClassSet p1, p2, p3;
};

inline ClassSet default_cond_c_set() { return ClassSet::residue_classes(3, {0, 1}); }

inline CondCResult cond_c_express_perm(const TailPermutation& u,
                                       const ClassSet& p = default_cond_c_set()) {
    ClassSet p3 = p.complement_set();
    if (!p.is_infinite() || !p3.is_infinite())
        throw NotInfinite("cond_c_express_perm: P and its complement must be infinite");

    // Split P = P1 + P2 so that P1+P2 can be carried onto P2+P3 in class:
    // density(P2) = 2 density(P) - 1 must be positive.
    Nat L = p.modulus();
    Nat k = p.ray_count(L);
    if (2 * k <= L)
        throw NotCarriable("cond_c_express_perm: density of P is at most one half; the class "
                           "admits no shift of P onto P2+P3");
    Nat k2 = 2 * k - L;
    std::vector<Nat> res = p.residues_at(L);
    ClassSet mask2(L, std::vector<Nat>(res.end() - static_cast<size_t>(k2), res.end()));
    ClassSet p2 = ClassSet::set_intersection(p, mask2);
    ClassSet p1 = ClassSet::set_difference(p, p2);
    ClassSet p23 = ClassSet::set_union(p2, p3);

    TailPermutation w = carry(p, p23, ClassSet::all());

    CondCResult out;
    out.generator = w;
    out.p1 = p1;
    out.p2 = p2;
    out.p3 = p3;
    out.cert.kind = "cond_c";
    out.cert.input = u;
    out.cert.generators = {GroupElement(w)};
    out.cert.claimed_bound = 11;
    out.cert.paper_bound = 8;

    if (support_in(u, p).contained) {
        out.cert.letters = {subgroup_letter("subgroup", u, p)};
    } else {
        Certificate five = five_factor_decompose_perm(u, p1, p2, p3);
        TailPermutation winv = w.inverse();
        for (const auto& letter : five.letters) {
            const ClassSet& claim = std::get<ClassSet>(letter.support);
            const TailPermutation& f = std::get<TailPermutation>(letter.payload);
            if (ClassSet::set_difference(claim, p).is_empty()) {
                out.cert.letters.push_back(subgroup_letter("subgroup", f, p));
            } else {
                TailPermutation inner = winv.compose_after(f).compose_after(w);
                out.cert.letters.push_back(generator_letter(0, 1));
                out.cert.letters.push_back(subgroup_letter("subgroup", inner, p));
                out.cert.letters.push_back(generator_letter(0, -1));
            }
        }
    }

    out.cert.measured_length = total_expanded_length(out.cert.letters);
    TailPermutation prod = std::get<TailPermutation>(
        evaluate_word(out.cert.letters, out.cert.generators, out.cert.input));
    out.cert.exact = (prod == u);
    if (!out.cert.exact)
        throw Error("cond_c_express_perm: rewritten word does not reproduce the input");
    return out;
}

} // namespace unifact
