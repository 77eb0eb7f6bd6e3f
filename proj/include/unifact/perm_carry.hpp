#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "unifact/class_set.hpp"
#include "unifact/tail_permutation.hpp"

namespace unifact {

/// A partial bijection given as tail-ray translations plus finite pairs.
/// Several matchings over disjoint sets combine into one TailPermutation.
struct PartialMatch {
    Nat modulus = 1;
    struct Ray {
        Nat cls;    // residue class mod modulus
        Nat start;  // translation applies for x >= start in the class
        Nat offset; // x -> x + offset
    };
    std::vector<Ray> rays;
    std::vector<std::pair<Nat, Nat>> pairs;
};

/// Deterministic bijection of A onto B: residue rays are matched
/// order-preservingly by class index; finite leftovers are balanced by
/// peeling leading ray points and matched order-preservingly. Requires equal
/// ray counts at the common modulus (equal densities) and, for finite sets,
/// equal cardinality. Ray starts can be forced beyond min_a / min_b (peeled
/// points join the finite matching), which callers use to keep ray points
/// inside a tail regime.
inline PartialMatch match_onto(const ClassSet& a, const ClassSet& b, Nat min_a = 0,
                               Nat min_b = 0) {
    PartialMatch out;
    Nat M = std::lcm(a.modulus(), b.modulus());
    out.modulus = M;

    std::vector<Nat> ra = a.residues_at(M);
    std::vector<Nat> rb = b.residues_at(M);
    if (ra.size() != rb.size())
        throw NotCarriable("match_onto: ray counts differ at the common modulus (" +
                           std::to_string(ra.size()) + " vs " + std::to_string(rb.size()) + ")");

    std::vector<Nat> fa = a.finite_part(M);
    std::vector<Nat> fb = b.finite_part(M);
    std::vector<Nat> starts_a(ra.size()), starts_b(rb.size());
    for (size_t i = 0; i < ra.size(); ++i) {
        starts_a[i] = a.ray_start(ra[i], M);
        while (starts_a[i] < min_a) {
            fa.push_back(starts_a[i]);
            starts_a[i] += M;
        }
    }
    for (size_t i = 0; i < rb.size(); ++i) {
        starts_b[i] = b.ray_start(rb[i], M);
        while (starts_b[i] < min_b) {
            fb.push_back(starts_b[i]);
            starts_b[i] += M;
        }
    }
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());

    // Balance the finite sides by peeling leading ray points.
    auto peel = [&](std::vector<Nat>& starts, std::vector<Nat>& fin, size_t need) {
        size_t ray = starts.size();
        while (need > 0) {
            if (ray == 0) ray = starts.size();
            --ray;
            fin.push_back(starts[ray]);
            starts[ray] += M;
            --need;
        }
        std::sort(fin.begin(), fin.end());
    };
    if (fa.size() < fb.size()) {
        if (ra.empty()) throw NotCarriable("match_onto: finite sets of different size");
        peel(starts_a, fa, fb.size() - fa.size());
    } else if (fb.size() < fa.size()) {
        if (rb.empty()) throw NotCarriable("match_onto: finite sets of different size");
        peel(starts_b, fb, fa.size() - fb.size());
    }

    for (size_t i = 0; i < ra.size(); ++i)
        out.rays.push_back({ra[i], starts_a[i], starts_b[i] - starts_a[i]});
    for (size_t i = 0; i < fa.size(); ++i) out.pairs.emplace_back(fa[i], fb[i]);
    return out;
}

/// Assemble matches over disjoint domains (with disjoint images) into one
/// TailPermutation; unmatched points stay fixed. The constructor's exact
/// bijection check is the safety net for the whole carry machinery.
inline TailPermutation combine_matches(const std::vector<PartialMatch>& matches) {
    Nat M = 1;
    for (const auto& pm : matches) M = std::lcm(M, pm.modulus);

    // Expand rays to the common modulus and index by class.
    struct FullRay { Nat start; Nat offset; };
    std::vector<std::optional<FullRay>> by_class(static_cast<size_t>(M));
    Nat maxstart = 0, maxpair = 0;
    for (const auto& pm : matches) {
        for (const auto& ray : pm.rays) {
            for (Nat lift = ray.cls; lift < M; lift += pm.modulus) {
                Nat start = ray.start + TailPermutation::mod(lift - ray.start, M);
                auto& slot = by_class[static_cast<size_t>(lift)];
                if (slot.has_value()) throw NotCarriable("combine_matches: overlapping rays");
                slot = FullRay{start, ray.offset};
                maxstart = std::max(maxstart, start);
            }
        }
        for (const auto& [x, y] : pm.pairs) maxpair = std::max({maxpair, x + 1, y + 1});
    }

    Nat T = std::max(maxstart, maxpair);
    std::vector<Nat> offsets(static_cast<size_t>(M), 0);
    for (Nat r = 0; r < M; ++r)
        if (by_class[static_cast<size_t>(r)]) offsets[static_cast<size_t>(r)] = by_class[static_cast<size_t>(r)]->offset;

    std::vector<Nat> table(static_cast<size_t>(T));
    for (Nat x = 0; x < T; ++x) {
        const auto& slot = by_class[static_cast<size_t>(x % M)];
        table[static_cast<size_t>(x)] = (slot && x >= slot->start) ? x + slot->offset : x;
    }
    for (const auto& pm : matches)
        for (const auto& [x, y] : pm.pairs) {
            if (x >= T) throw NotCarriable("combine_matches: pair beyond threshold");
            table[static_cast<size_t>(x)] = y;
        }
    return TailPermutation(M, std::move(offsets), T, std::move(table));
}

/// Unitary-conjugator analogue: w with w(A) = B and supp w inside C, for
/// A, B subsets of C of equal density. Deterministic.
inline TailPermutation carry(const ClassSet& a, const ClassSet& b, const ClassSet& c) {
    if (!ClassSet::set_difference(a, c).is_empty() || !ClassSet::set_difference(b, c).is_empty())
        throw NotCarriable("carry: sets escape the support corner");
    ClassSet ca = ClassSet::set_difference(c, a);
    ClassSet cb = ClassSet::set_difference(c, b);
    return combine_matches({match_onto(a, b), match_onto(ca, cb)});
}

/// A deterministic subset of B with the shape of A (equal ray count at the
/// common modulus; for finite A, the first |A| points of B): the target for
/// carrying A *into* B.
inline ClassSet sub_like(const ClassSet& a, const ClassSet& b) {
    Nat M = std::lcm(a.modulus(), b.modulus());
    Nat ka = a.ray_count(M);
    Nat kb = b.ray_count(M);
    if (ka > kb)
        throw NotCarriable("sub_like: target has too few rays (" + std::to_string(ka) + " > " +
                           std::to_string(kb) + ")");
    if (ka == 0) {
        auto fin_a = a.finite_part(M);
        if (kb == 0 && b.finite_part(M).size() < fin_a.size())
            throw NotCarriable("sub_like: target is too small");
        std::vector<Nat> take;
        for (Nat x = 0; take.size() < fin_a.size(); ++x)
            if (b.contains(x)) take.push_back(x);
        return ClassSet::finite(std::move(take));
    }
    std::vector<Nat> rb = b.residues_at(M);
    std::vector<Nat> chosen(rb.begin(), rb.begin() + static_cast<size_t>(ka));
    ClassSet mask(M, std::move(chosen));
    return ClassSet::set_intersection(b, mask);
}

/// w in G(C) with w(A) contained in B (not necessarily onto), for
/// density(A) <= density(B), A, B inside C.
inline TailPermutation carry_into(const ClassSet& a, const ClassSet& b, const ClassSet& c) {
    ClassSet target = sub_like(a, b);
    return carry(a, target, c);
}

} // namespace unifact
