#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include <json.hpp>

#include "unifact/errors.hpp"

namespace unifact {

using Nat = std::int64_t;

/// Subset of the naturals of the form
///     (union of residue classes mod m, union plus_finite) minus minus_finite.
/// These play the role of diagonal projections in the permutation model:
/// "infinite" means at least one residue class survives. Canonical form has
/// minimal modulus, plus disjoint from the classes, minus inside them.
class ClassSet {
public:
    ClassSet() = default;
    ClassSet(Nat modulus, std::vector<Nat> residues, std::vector<Nat> plus = {},
             std::vector<Nat> minus = {})
        : m_(modulus), residues_(std::move(residues)), plus_(std::move(plus)),
          minus_(std::move(minus)) {
        normalize();
    }

    static ClassSet empty() { return ClassSet(1, {}); }
    static ClassSet all() { return ClassSet(1, {0}); }
    static ClassSet finite(std::vector<Nat> points) { return ClassSet(1, {}, std::move(points)); }
    static ClassSet residue_classes(Nat modulus, std::vector<Nat> residues) {
        return ClassSet(modulus, std::move(residues));
    }

    Nat modulus() const { return m_; }
    const std::vector<Nat>& residues() const { return residues_; }
    const std::vector<Nat>& plus() const { return plus_; }
    const std::vector<Nat>& minus() const { return minus_; }

    bool contains(Nat x) const {
        if (x < 0) return false;
        bool periodic = std::binary_search(residues_.begin(), residues_.end(), x % m_);
        if (periodic) return !std::binary_search(minus_.begin(), minus_.end(), x);
        return std::binary_search(plus_.begin(), plus_.end(), x);
    }

    bool is_infinite() const { return !residues_.empty(); }
    bool is_empty() const { return residues_.empty() && plus_.empty(); }

    /// Number of residue classes when viewed at modulus M (a multiple of m);
    /// the in-class "dimension" of the set. Density is ray_count(M)/M.
    Nat ray_count(Nat M) const {
        if (M % m_ != 0) throw Error("ClassSet::ray_count: modulus must be a multiple");
        return static_cast<Nat>(residues_.size()) * (M / m_);
    }

    /// Residues at modulus M (lifts of the stored residues), sorted.
    std::vector<Nat> residues_at(Nat M) const {
        if (M % m_ != 0) throw Error("ClassSet::residues_at: modulus must be a multiple");
        std::vector<Nat> out;
        out.reserve(static_cast<size_t>(ray_count(M)));
        for (Nat k = 0; k < M / m_; ++k)
            for (Nat r : residues_) out.push_back(r + k * m_);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// All corrections live below this bound; beyond it the set is purely
    /// periodic.
    Nat correction_bound() const {
        Nat b = 0;
        if (!plus_.empty()) b = std::max(b, plus_.back() + 1);
        if (!minus_.empty()) b = std::max(b, minus_.back() + 1);
        return b;
    }

    /// Smallest x == r (mod M) such that the whole tail {y == r mod M, y >= x}
    /// lies in the set. Requires r to be a residue lift of this set.
    Nat ray_start(Nat r, Nat M) const {
        Nat start = r % M;
        for (Nat y : minus_)
            if (y % M == r % M) start = std::max(start, y + M);
        return start;
    }

    /// The finitely many members below the rays: set minus union of tails.
    std::vector<Nat> finite_part(Nat M) const {
        std::vector<Nat> out = plus_;
        for (Nat r : residues_at(M)) {
            Nat start = ray_start(r, M);
            for (Nat x = r % M; x < start; x += M)
                if (contains(x)) out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Nat> elements_below(Nat bound) const {
        std::vector<Nat> out;
        for (Nat x = 0; x < bound; ++x)
            if (contains(x)) out.push_back(x);
        return out;
    }

    /// Build from a predicate that is promised to be m-periodic at and above
    /// `bound`. Exact under that promise.
    static ClassSet from_predicate(Nat modulus, Nat bound,
                                   const std::function<bool(Nat)>& pred) {
        Nat base = ((bound + modulus - 1) / modulus) * modulus;
        std::vector<Nat> residues;
        for (Nat r = 0; r < modulus; ++r)
            if (pred(base + r)) residues.push_back(r);
        std::vector<Nat> plus, minus;
        for (Nat x = 0; x < base; ++x) {
            bool periodic = std::binary_search(residues.begin(), residues.end(), x % modulus);
            bool actual = pred(x);
            if (actual && !periodic) plus.push_back(x);
            if (!actual && periodic) minus.push_back(x);
        }
        return ClassSet(modulus, std::move(residues), std::move(plus), std::move(minus));
    }

    static ClassSet set_union(const ClassSet& a, const ClassSet& b) {
        return combine(a, b, [](bool x, bool y) { return x || y; });
    }
    static ClassSet set_intersection(const ClassSet& a, const ClassSet& b) {
        return combine(a, b, [](bool x, bool y) { return x && y; });
    }
    static ClassSet set_difference(const ClassSet& a, const ClassSet& b) {
        return combine(a, b, [](bool x, bool y) { return x && !y; });
    }
    ClassSet complement_set() const {
        ClassSet all_set = all();
        return set_difference(all_set, *this);
    }

    bool operator==(const ClassSet& o) const {
        return m_ == o.m_ && residues_ == o.residues_ && plus_ == o.plus_ && minus_ == o.minus_;
    }

    nlohmann::json to_json() const {
        return {{"m", m_}, {"residues", residues_}, {"plus", plus_}, {"minus", minus_}};
    }

    static ClassSet from_json(const nlohmann::json& j) {
        for (const char* key : {"m", "residues", "plus", "minus"})
            if (!j.contains(key)) throw BadFormat("ClassSet JSON: missing field");
        return ClassSet(j.at("m").get<Nat>(), j.at("residues").get<std::vector<Nat>>(),
                        j.at("plus").get<std::vector<Nat>>(),
                        j.at("minus").get<std::vector<Nat>>());
    }

private:
    static ClassSet combine(const ClassSet& a, const ClassSet& b,
                            const std::function<bool(bool, bool)>& op) {
        Nat M = std::lcm(a.m_, b.m_);
        Nat bound = std::max(a.correction_bound(), b.correction_bound());
        return from_predicate(M, bound,
                              [&](Nat x) { return op(a.contains(x), b.contains(x)); });
    }

    void normalize() {
        if (m_ < 1) throw Error("ClassSet: modulus must be >= 1");
        auto canon = [&](std::vector<Nat>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            for (Nat x : v)
                if (x < 0) throw Error("ClassSet: negative element");
        };
        canon(residues_);
        for (Nat r : residues_)
            if (r >= m_) throw Error("ClassSet: residue out of range");
        canon(plus_);
        canon(minus_);

        // plus \cap minus cancels; plus inside classes is redundant; minus
        // outside classes is redundant.
        std::vector<Nat> both;
        std::set_intersection(plus_.begin(), plus_.end(), minus_.begin(), minus_.end(),
                              std::back_inserter(both));
        auto remove_all = [](std::vector<Nat>& v, const std::vector<Nat>& drop) {
            std::vector<Nat> out;
            std::set_difference(v.begin(), v.end(), drop.begin(), drop.end(),
                                std::back_inserter(out));
            v = std::move(out);
        };
        if (!both.empty()) {
            remove_all(plus_, both);
            remove_all(minus_, both);
        }
        auto in_classes = [&](Nat x) {
            return std::binary_search(residues_.begin(), residues_.end(), x % m_);
        };
        std::erase_if(plus_, in_classes);
        std::erase_if(minus_, [&](Nat x) { return !in_classes(x); });

        // Minimal period of the residue indicator.
        for (Nat p = 1; p < m_; ++p) {
            if (m_ % p != 0) continue;
            bool periodic = true;
            for (Nat r = 0; r < m_ && periodic; ++r) {
                bool a = std::binary_search(residues_.begin(), residues_.end(), r);
                bool b = std::binary_search(residues_.begin(), residues_.end(), (r + p) % m_);
                periodic = (a == b);
            }
            if (periodic) {
                std::vector<Nat> reduced;
                for (Nat r : residues_)
                    if (r < p) reduced.push_back(r);
                residues_ = std::move(reduced);
                m_ = p;
                break;
            }
        }
    }

    Nat m_ = 1;
    std::vector<Nat> residues_;
    std::vector<Nat> plus_;
    std::vector<Nat> minus_;
};

} // namespace unifact
