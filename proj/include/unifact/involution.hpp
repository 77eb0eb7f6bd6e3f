#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "unifact/perm_carry.hpp"
#include "unifact/word.hpp"

namespace unifact {

/// Decided from tail parameters: some residue class moves wholesale.
inline bool has_infinite_two_cycle_set(const TailPermutation& i) {
    for (Nat c : i.offsets())
        if (c != 0) return true;
    return false;
}

/// Decided from tail parameters: some residue class is fixed wholesale.
inline bool has_infinite_fixed_set(const TailPermutation& i) {
    for (Nat c : i.offsets())
        if (c == 0) return true;
    return false;
}

namespace detail {

struct SigmaCycle {
    std::vector<Nat> classes; // in visiting order, starting at the least class
    Nat net = 0;              // sum of offsets along the cycle
    Nat length() const { return static_cast<Nat>(classes.size()); }
};

inline std::vector<SigmaCycle> sigma_cycles(const TailPermutation& a, std::vector<int>& of_class) {
    Nat m = a.modulus();
    auto sig = a.sigma();
    of_class.assign(static_cast<size_t>(m), -1);
    std::vector<SigmaCycle> cycles;
    for (Nat r = 0; r < m; ++r) {
        if (of_class[static_cast<size_t>(r)] >= 0) continue;
        SigmaCycle c;
        Nat x = r;
        do {
            of_class[static_cast<size_t>(x)] = static_cast<int>(cycles.size());
            c.classes.push_back(x);
            c.net += a.offsets()[static_cast<size_t>(x)];
            x = sig[static_cast<size_t>(x)];
        } while (x != r);
        cycles.push_back(std::move(c));
    }
    return cycles;
}

inline Nat iterate(const TailPermutation& a, Nat x, Nat times) {
    for (Nat t = 0; t < times; ++t) x = a.apply(x);
    return x;
}

struct ZOrbit {
    std::vector<Nat> mid; // mid[0] = backward exit, mid.back() = forward exit
    int fwd_cycle = -1;   // ascending sigma-cycle reached by the forward tail
    int bwd_cycle = -1;   // descending sigma-cycle feeding the backward tail
};

/// Reduced escape rates (offset per step along the cycle).
struct Rate {
    Nat num = 0, den = 1;
    Rate() = default;
    Rate(Nat n, Nat d) : num(n), den(d) {
        Nat g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { num /= g; den /= g; }
    }
    bool operator==(const Rate& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rate& o) const {
        return num * o.den < o.num * den;
    }
};

} // namespace detail

/// Write a as a product of two involutions of the class, supports inside
/// supp a. Finite cycles reverse in place (pattern families by a positional
/// formula, so the infinitely many high instances stay in class);
/// bi-infinite orbits reverse about their exits when forward and backward
/// escape rates agree, and otherwise pair up with a rate-swapped partner
/// orbit. Throws NotReversible when the rate spectrum is not symmetric:
/// such elements admit no such factorization in this class, since escape
/// rates and densities are conjugation invariants.
inline std::pair<TailPermutation, TailPermutation> factor_into_two_involutions(
    const TailPermutation& a) {
    if (a.compose_after(a).is_identity()) return {a, TailPermutation::identity()};

    TailPermutation ainv = a.inverse();
    const Nat m = a.modulus();
    const Nat maxabs = a.max_abs_offset();
    const Nat z_esc = std::max(a.threshold(), ainv.threshold()) + m * maxabs;
    const Nat enum_bound = z_esc + m * maxabs + m;

    std::vector<int> cycle_of_class;
    auto cycles = detail::sigma_cycles(a, cycle_of_class);

    auto escapes_fwd = [&](Nat x) {
        return x >= z_esc && cycles[static_cast<size_t>(cycle_of_class[static_cast<size_t>(x % m)])].net > 0;
    };
    auto escapes_bwd = [&](Nat x) {
        return x >= z_esc && cycles[static_cast<size_t>(cycle_of_class[static_cast<size_t>(x % m)])].net < 0;
    };

    std::set<Nat> visited;
    std::vector<std::vector<Nat>> plain_cycles;   // touch the table region; min-anchored
    std::vector<std::vector<Nat>> pattern_cycles; // pure tail instances (handled by formula)
    std::vector<detail::ZOrbit> zorbits;

    for (Nat seed = 0; seed < enum_bound; ++seed) {
        if (visited.count(seed) || a.apply(seed) == seed) continue;
        std::vector<Nat> fwd = {seed};
        bool cycle_closed = false;
        while (true) {
            if (escapes_fwd(fwd.back())) break;
            Nat next = a.apply(fwd.back());
            if (next == seed) { cycle_closed = true; break; }
            fwd.push_back(next);
        }
        if (cycle_closed) {
            for (Nat x : fwd) visited.insert(x);
            bool pure = true;
            for (Nat x : fwd) pure = pure && x >= a.threshold();
            (pure ? pattern_cycles : plain_cycles).push_back(std::move(fwd));
            continue;
        }
        std::vector<Nat> bwd; // strictly-backward points from the seed
        {
            Nat y = seed;
            while (!escapes_bwd(y)) y = ainv.apply(y), bwd.push_back(y);
        }
        detail::ZOrbit z;
        z.mid.assign(bwd.rbegin(), bwd.rend());
        z.mid.insert(z.mid.end(), fwd.begin(), fwd.end());
        z.fwd_cycle = cycle_of_class[static_cast<size_t>(fwd.back() % m)];
        z.bwd_cycle = bwd.empty() ? cycle_of_class[static_cast<size_t>(seed % m)]
                                  : cycle_of_class[static_cast<size_t>(bwd.back() % m)];
        for (Nat x : z.mid) visited.insert(x);
        // Tail points can dip back under the enumeration bound; mark them so
        // they cannot seed a duplicate copy of this orbit.
        for (Nat x = a.apply(z.mid.back()); x < enum_bound + m * maxabs; x = a.apply(x))
            if (x < enum_bound) visited.insert(x);
        for (Nat x = ainv.apply(z.mid.front()); x < enum_bound + m * maxabs; x = ainv.apply(x))
            if (x < enum_bound) visited.insert(x);
        zorbits.push_back(std::move(z));
    }

    // Reflection data: explicit point pairs plus tail rays.
    std::map<Nat, Nat> reflect;
    auto set_pair = [&](Nat x, Nat y) {
        auto it = reflect.find(x);
        if (it != reflect.end() && it->second != y)
            throw NotReversible("factor_into_two_involutions: inconsistent reflection");
        reflect[x] = y;
        reflect[y] = x;
    };
    std::vector<PartialMatch> ray_groups;

    // Finite cycles that touch the table region: reverse about the minimum.
    for (const auto& cyc : plain_cycles) {
        size_t L = cyc.size();
        size_t mn = 0;
        for (size_t j = 1; j < L; ++j)
            if (cyc[j] < cyc[mn]) mn = j;
        for (size_t j = 0; j < L; ++j)
            set_pair(cyc[(mn + j) % L], cyc[(mn + (L - j) % L) % L]);
    }

    // Pattern families: positional reversal anchored at the least class of
    // each zero-net sigma-cycle. Valid for every instance whose base lies in
    // the tail; low instances repeat the same formula explicitly.
    for (const auto& cyc : cycles) {
        if (cyc.net != 0 || cyc.length() == 1) continue;
        Nat L = cyc.length();
        std::vector<Nat> delta(static_cast<size_t>(L), 0);
        for (Nat j = 0; j + 1 < L; ++j)
            delta[static_cast<size_t>(j + 1)] =
                delta[static_cast<size_t>(j)] + a.offsets()[static_cast<size_t>(cyc.classes[static_cast<size_t>(j)])];
        Nat anchor = cyc.classes[0];
        Nat base0 = z_esc + TailPermutation::mod(anchor - z_esc, m);
        PartialMatch pm;
        pm.modulus = m;
        for (Nat j = 0; j < L; ++j) {
            Nat off = delta[static_cast<size_t>((L - j) % L)] - delta[static_cast<size_t>(j)];
            if (off == 0) continue; // position is its own mirror
            pm.rays.push_back({cyc.classes[static_cast<size_t>(j)],
                               base0 + delta[static_cast<size_t>(j)], off});
        }
        if (!pm.rays.empty()) ray_groups.push_back(std::move(pm));
    }
    for (const auto& cyc : pattern_cycles) {
        // Explicit instances below the pattern rays use the same anchored
        // formula, so table and rays agree wherever both could apply.
        size_t L = cyc.size();
        const auto& sc = cycles[static_cast<size_t>(cycle_of_class[static_cast<size_t>(cyc[0] % m)])];
        size_t anchor_pos = 0;
        for (size_t j = 0; j < L; ++j)
            if (cyc[j] % m == sc.classes[0]) { anchor_pos = j; break; }
        for (size_t j = 0; j < L; ++j)
            set_pair(cyc[(anchor_pos + j) % L], cyc[(anchor_pos + (L - j) % L) % L]);
    }

    // Pair bi-infinite orbits: self when the two escape rates agree, else
    // with a rate-swapped partner.
    using Key = std::pair<detail::Rate, detail::Rate>;
    auto key_of = [&](const detail::ZOrbit& z) {
        const auto& cf = cycles[static_cast<size_t>(z.fwd_cycle)];
        const auto& cb = cycles[static_cast<size_t>(z.bwd_cycle)];
        return Key{detail::Rate(cf.net, cf.length()), detail::Rate(-cb.net, cb.length())};
    };
    std::map<Key, std::vector<size_t>> pending;
    std::vector<std::pair<size_t, size_t>> orbit_pairs;
    for (size_t i = 0; i < zorbits.size(); ++i) {
        Key k = key_of(zorbits[i]);
        if (k.first == k.second) {
            orbit_pairs.emplace_back(i, i);
            continue;
        }
        Key want{k.second, k.first};
        auto it = pending.find(want);
        if (it != pending.end() && !it->second.empty()) {
            orbit_pairs.emplace_back(it->second.front(), i);
            it->second.erase(it->second.begin());
        } else {
            pending[k].push_back(i);
        }
    }
    for (const auto& [k, rest] : pending)
        if (!rest.empty())
            throw NotReversible(
                "factor_into_two_involutions: an escape orbit has no rate-swapped partner; the "
                "element is not conjugate to its inverse in this class");

    for (const auto& [ia, ib] : orbit_pairs) {
        const auto& oa = zorbits[ia];
        const auto& ob = zorbits[ib];
        Nat la = static_cast<Nat>(oa.mid.size()) - 1;
        Nat lb = static_cast<Nat>(ob.mid.size()) - 1;

        // Index model: s^a_j for j in [0, la] is oa.mid, tails beyond; the
        // reflection is i2(s^a_j) = s^b_{la - j} and symmetrically.
        auto point_a = [&](Nat j) {
            if (j < 0) return detail::iterate(ainv, oa.mid[0], -j);
            if (j <= la) return oa.mid[static_cast<size_t>(j)];
            return detail::iterate(a, oa.mid.back(), j - la);
        };
        auto point_b = [&](Nat j) {
            if (j < 0) return detail::iterate(ainv, ob.mid[0], -j);
            if (j <= lb) return ob.mid[static_cast<size_t>(j)];
            return detail::iterate(a, ob.mid.back(), j - lb);
        };

        const auto& cf_a = cycles[static_cast<size_t>(oa.fwd_cycle)];
        const auto& cb_a = cycles[static_cast<size_t>(oa.bwd_cycle)];
        const auto& cf_b = cycles[static_cast<size_t>(ob.fwd_cycle)];
        const auto& cb_b = cycles[static_cast<size_t>(ob.bwd_cycle)];

        Nat lam1 = std::lcm(cf_a.length(), cb_b.length());
        Nat delta1 = cf_a.net * (lam1 / cf_a.length());
        Nat lam2 = std::lcm(cb_a.length(), cf_b.length());
        Nat delta2 = (-cb_a.net) * (lam2 / cb_a.length());

        Nat window = std::max(lam1, lam2) + (la > lb ? la - lb : lb - la) + 2;
        for (Nat j = -window; j <= la + window; ++j) set_pair(point_a(j), point_b(la - j));

        // Tail rays beyond the explicit window: forward tail of a against
        // backward tail of b, and the mirror family.
        PartialMatch pm1;
        pm1.modulus = delta1;
        for (Nat t = window + 1; t <= window + lam1; ++t) {
            Nat x = point_a(la + t);
            Nat y = point_b(-t);
            pm1.rays.push_back({x % delta1, x, y - x});
            if (ia != ib || x != y) pm1.rays.push_back({y % delta1, y, x - y});
        }
        ray_groups.push_back(std::move(pm1));
        if (ia != ib) {
            PartialMatch pm2;
            pm2.modulus = delta2;
            for (Nat t = window + 1; t <= window + lam2; ++t) {
                Nat x = point_a(-t);
                Nat y = point_b(la + t);
                pm2.rays.push_back({x % delta2, x, y - x});
                pm2.rays.push_back({y % delta2, y, x - y});
            }
            ray_groups.push_back(std::move(pm2));
        }
    }

    // Assemble: shared modulus, rays as class-wide offsets, everything else
    // explicit below the threshold.
    Nat M = m;
    for (const auto& pm : ray_groups) M = std::lcm(M, pm.modulus);
    struct Claim { Nat start; Nat offset; };
    std::vector<std::optional<Claim>> claim(static_cast<size_t>(M));
    Nat t2 = 0;
    for (const auto& pm : ray_groups)
        for (const auto& ray : pm.rays)
            for (Nat lift = ray.cls; lift < M; lift += pm.modulus) {
                Nat start = ray.start + TailPermutation::mod(lift - ray.start, M);
                auto& slot = claim[static_cast<size_t>(lift)];
                if (slot && slot->offset != ray.offset)
                    throw NotReversible("factor_into_two_involutions: conflicting tail claims");
                if (!slot || slot->start > start) slot = Claim{start, ray.offset};
                t2 = std::max(t2, start);
            }
    for (const auto& [x, y] : reflect) t2 = std::max({t2, x + 1, y + 1});

    std::vector<Nat> offsets(static_cast<size_t>(M), 0);
    for (Nat r = 0; r < M; ++r)
        if (claim[static_cast<size_t>(r)]) offsets[static_cast<size_t>(r)] = claim[static_cast<size_t>(r)]->offset;
    std::vector<Nat> table(static_cast<size_t>(t2));
    for (Nat x = 0; x < t2; ++x) {
        auto it = reflect.find(x);
        if (it != reflect.end()) {
            table[static_cast<size_t>(x)] = it->second;
        } else {
            const auto& slot = claim[static_cast<size_t>(x % M)];
            table[static_cast<size_t>(x)] = (slot && x >= slot->start) ? x + slot->offset : x;
        }
    }

    TailPermutation i2(M, std::move(offsets), t2, std::move(table));
    TailPermutation i1 = a.compose_after(i2);
    if (!i2.compose_after(i2).is_identity() || !i1.compose_after(i1).is_identity())
        throw NotReversible("factor_into_two_involutions: reflection failed the involution check");
    return {i1, i2};
}

/// The fixed base involution: swaps 4k <-> 4k+1, fixes the other two
/// classes. Support and fixed set both have density one half.
inline TailPermutation base_involution() { return TailPermutation(4, {1, -1, 0, 0}, 0, {}); }

/// Conjugacy to the base is decided by the support density: one half
/// exactly, with infinite two-cycle and fixed sets.
inline bool is_base_shaped(const TailPermutation& i) {
    if (!has_infinite_two_cycle_set(i) || !has_infinite_fixed_set(i)) return false;
    ClassSet sup = i.support();
    Nat L = std::lcm(sup.modulus(), static_cast<Nat>(2));
    return 2 * sup.ray_count(L) == L;
}

/// w with w src w^{-1} = dst, for involutions src, dst of equal support
/// density with infinite fixed sets: two-cycle representatives are matched
/// ray-to-ray, partners follow pointwise, fixed sets are matched
/// independently.
inline TailPermutation conjugate_involutions(const TailPermutation& src,
                                             const TailPermutation& dst) {
    auto reps = [](const TailPermutation& i) {
        Nat M = std::lcm(i.modulus(), i.support().modulus());
        Nat bound = std::max(i.threshold(), i.support().correction_bound());
        return ClassSet::from_predicate(M, bound,
                                        [&](Nat x) { return i.apply(x) > x; });
    };
    ClassSet rs = reps(src);
    ClassSet rd = reps(dst);
    PartialMatch rep_match = match_onto(rs, rd, src.threshold(), dst.threshold());

    // Lift to a modulus where both involutions have constant class offsets
    // along every matched ray, then extend to partners: w(src(x)) = dst(w(x)).
    Nat M2 = std::lcm(std::lcm(rep_match.modulus, src.modulus()), dst.modulus());
    PartialMatch full;
    full.modulus = M2;
    for (const auto& ray : rep_match.rays) {
        for (Nat lift = ray.cls; lift < M2; lift += rep_match.modulus) {
            Nat start = ray.start + TailPermutation::mod(lift - ray.start, M2);
            Nat csrc = src.offsets()[static_cast<size_t>(start % src.modulus())];
            Nat cdst = dst.offsets()[static_cast<size_t>((start + ray.offset) % dst.modulus())];
            full.rays.push_back({lift, start, ray.offset});
            full.rays.push_back({TailPermutation::mod(lift + csrc, M2), start + csrc,
                                 ray.offset + cdst - csrc});
        }
    }
    for (const auto& [x, y] : rep_match.pairs) {
        full.pairs.emplace_back(x, y);
        full.pairs.emplace_back(src.apply(x), dst.apply(y));
    }

    ClassSet fix_src = src.support().complement_set();
    ClassSet fix_dst = dst.support().complement_set();
    TailPermutation w = combine_matches({full, match_onto(fix_src, fix_dst)});
    TailPermutation check = w.compose_after(src).compose_after(w.inverse());
    if (!(check == dst))
        throw NotCarriable("conjugate_involutions: conjugation check failed");
    return w;
}

/// Conjugators w_j with i = prod_j w_j base w_j^{-1}, at most two. A
/// non-base-shaped involution is split into two halves of its two-cycle set,
/// each padded by one shared pattern involution on half of the complement:
/// the paddings cancel in the product and land both factors exactly on
/// support density one half.
inline std::vector<TailPermutation> express_involution_as_base_conjugates(
    const TailPermutation& i) {
    if (i.is_identity()) return {};
    if (!i.compose_after(i).is_identity())
        throw NotReversible("express_involution_as_base_conjugates: input is not an involution");
    if (is_base_shaped(i)) return {conjugate_involutions(base_involution(), i)};

    ClassSet a = i.support();
    Nat M = std::lcm(a.modulus(), i.modulus());
    Nat bound = std::max(i.threshold(), a.correction_bound());
    ClassSet r = ClassSet::from_predicate(
        M, bound, [&](Nat x) { return a.contains(x) && i.apply(x) > x; });
    std::vector<Nat> low_lifts(static_cast<size_t>(M));
    std::iota(low_lifts.begin(), low_lifts.end(), 0);
    ClassSet low(2 * M, std::move(low_lifts));
    ClassSet r1 = ClassSet::set_intersection(r, low);
    ClassSet a1 = ClassSet::set_union(r1, i.image(r1));
    ClassSet a2 = ClassSet::set_difference(a, a1);

    TailPermutation i1p = restrict_to(i, a1);
    TailPermutation i2p = restrict_to(i, a2);

    // Shared padding: a pattern involution on half of the complement.
    ClassSet x = a.complement_set();
    Nat mx = x.modulus();
    std::vector<Nat> lowx(static_cast<size_t>(mx));
    std::iota(lowx.begin(), lowx.end(), 0);
    ClassSet c = ClassSet::set_intersection(x, ClassSet(2 * mx, std::move(lowx)));
    Nat mc = c.modulus();
    auto cfin = c.finite_part(mc);
    if (cfin.size() % 2 == 1) c = ClassSet::set_difference(c, ClassSet::finite({cfin.back()}));

    PartialMatch pk;
    pk.modulus = 2 * mc;
    for (Nat cls : c.residues_at(mc)) {
        Nat s = c.ray_start(cls, mc);
        pk.rays.push_back({s % (2 * mc), s, mc});
        pk.rays.push_back({(s + mc) % (2 * mc), s + mc, -mc});
    }
    cfin = c.finite_part(mc);
    for (size_t j = 0; j + 1 < cfin.size(); j += 2) pk.pairs.emplace_back(cfin[j], cfin[j + 1]);
    for (size_t j = 1; j < cfin.size(); j += 2) pk.pairs.emplace_back(cfin[j], cfin[j - 1]);
    TailPermutation k = combine_matches({pk});
    if (!k.compose_after(k).is_identity())
        throw NotCarriable("express_involution_as_base_conjugates: padding is not an involution");

    TailPermutation s1 = i1p.compose_after(k);
    TailPermutation s2 = i2p.compose_after(k);
    if (!(s1.compose_after(s2) == i))
        throw NotCarriable("express_involution_as_base_conjugates: halves do not recombine");
    return {conjugate_involutions(base_involution(), s1),
            conjugate_involutions(base_involution(), s2)};
}

/// Full condition-(B) pipeline in the permutation model: a = i1 i2, each
/// involution a product of at most two conjugates of the fixed base, giving
/// at most four conjugates total.
struct InvolutionFactorization {
    TailPermutation i1, i2;
    Certificate cert;
};

inline InvolutionFactorization involution_factorize(const TailPermutation& a) {
    InvolutionFactorization out;
    auto pair = factor_into_two_involutions(a);
    out.i1 = pair.first;
    out.i2 = pair.second;

    TailPermutation base = base_involution();
    out.cert.kind = "involution";
    out.cert.input = a;
    for (const TailPermutation* ik : {&out.i1, &out.i2})
        for (auto& w : express_involution_as_base_conjugates(*ik))
            out.cert.letters.push_back(conjugate_letter("base_conjugate", base, std::move(w)));
    out.cert.claimed_bound = 4;
    out.cert.paper_bound = 4;
    out.cert.measured_length = total_expanded_length(out.cert.letters);
    TailPermutation prod =
        std::get<TailPermutation>(evaluate_word(out.cert.letters, {}, out.cert.input));
    out.cert.exact = (prod == a);
    if (!out.cert.exact)
        throw NotReversible("involution_factorize: conjugate product does not reproduce the input");
    return out;
}

} // namespace unifact
