#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include <json.hpp>

#include "unifact/class_set.hpp"
#include "unifact/errors.hpp"

namespace unifact {

/// A computable bijection of the naturals: an eventual residue-class
/// translation (x >= T in class r maps to x + offset[r]) corrected by an
/// explicit finite table on [0, T). The class is closed under composition
/// and inversion; validation is exact, not sampled. Canonical form has
/// minimal modulus and threshold, so equality is field equality.
class TailPermutation {
public:
    TailPermutation() : m_(1), offsets_{0}, T_(0) {}

    TailPermutation(Nat modulus, std::vector<Nat> offsets, Nat threshold,
                    std::vector<Nat> table)
        : m_(modulus), offsets_(std::move(offsets)), T_(threshold), table_(std::move(table)) {
        validate();
        canonicalize();
    }

    static TailPermutation identity() { return TailPermutation(); }

    /// Finite permutation given as the image list of [0, n).
    static TailPermutation from_table(std::vector<Nat> images) {
        Nat n = static_cast<Nat>(images.size());
        return TailPermutation(1, {0}, n, std::move(images));
    }

    Nat modulus() const { return m_; }
    const std::vector<Nat>& offsets() const { return offsets_; }
    Nat threshold() const { return T_; }
    const std::vector<Nat>& table() const { return table_; }

    /// Class map sigma(r) = (r + offset[r]) mod m.
    std::vector<Nat> sigma() const {
        std::vector<Nat> s(offsets_.size());
        for (Nat r = 0; r < m_; ++r) s[r] = mod(r + offsets_[r], m_);
        return s;
    }

    Nat apply(Nat x) const {
        if (x < 0) throw Error("TailPermutation::apply: negative input");
        if (x < T_) return table_[x];
        return x + offsets_[x % m_];
    }

    Nat max_abs_offset() const {
        Nat b = 0;
        for (Nat c : offsets_) b = std::max(b, c < 0 ? -c : c);
        return b;
    }

    bool is_identity() const { return m_ == 1 && offsets_[0] == 0 && T_ == 0; }

    bool operator==(const TailPermutation& o) const {
        return m_ == o.m_ && offsets_ == o.offsets_ && T_ == o.T_ && table_ == o.table_;
    }

    TailPermutation inverse() const {
        Nat maxpos = 0;
        for (Nat c : offsets_) maxpos = std::max(maxpos, c);
        Nat Tinv = T_ + maxpos;
        std::vector<Nat> inv_offsets(m_);
        for (Nat r = 0; r < m_; ++r) inv_offsets[mod(r + offsets_[r], m_)] = -offsets_[r];
        // Invert the low region by scanning a window that provably covers
        // every preimage of [0, Tinv).
        Nat window = Tinv + max_abs_offset() + m_;
        std::vector<Nat> inv_table(Tinv, -1);
        for (Nat x = 0; x < window; ++x) {
            Nat y = apply(x);
            if (y < Tinv) inv_table[y] = x;
        }
        for (Nat y = 0; y < Tinv; ++y)
            if (inv_table[y] < 0) throw NotABijection("inverse: uncovered point");
        return TailPermutation(m_, std::move(inv_offsets), Tinv, std::move(inv_table));
    }

    /// Composition a.compose(b) applies b first: x -> a(b(x)).
    TailPermutation compose_after(const TailPermutation& b) const {
        const TailPermutation& a = *this;
        Nat M = std::lcm(a.m_, b.m_);
        Nat Tc = std::max(b.T_, a.T_ + b.max_abs_offset());
        std::vector<Nat> offs(M);
        for (Nat r = 0; r < M; ++r) {
            Nat cb = b.offsets_[r % b.m_];
            offs[r] = cb + a.offsets_[mod(r + cb, a.m_)];
        }
        std::vector<Nat> tab(Tc);
        for (Nat x = 0; x < Tc; ++x) tab[x] = a.apply(b.apply(x));
        return TailPermutation(M, std::move(offs), Tc, std::move(tab));
    }

    /// Support {x : a(x) != x} as a ClassSet.
    ClassSet support() const {
        Nat m = m_;
        auto moved = [this](Nat x) { return apply(x) != x; };
        return ClassSet::from_predicate(m, T_, moved);
    }

    /// Image {a(x) : x in S}, exact.
    ClassSet image(const ClassSet& s) const {
        TailPermutation inv = inverse();
        Nat M = std::lcm(inv.m_, s.modulus());
        Nat bound = std::max(inv.T_, s.correction_bound() + inv.max_abs_offset() + M);
        return ClassSet::from_predicate(M, bound,
                                        [&](Nat y) { return s.contains(inv.apply(y)); });
    }

    nlohmann::json to_json() const {
        nlohmann::json tab = nlohmann::json::array();
        for (Nat x = 0; x < T_; ++x) tab.push_back({x, table_[x]});
        return {{"m", m_}, {"sigma", sigma()}, {"offsets", offsets_}, {"T", T_}, {"table", tab}};
    }

    static TailPermutation from_json(const nlohmann::json& j) {
        for (const char* key : {"m", "sigma", "offsets", "T", "table"})
            if (!j.contains(key)) throw BadFormat("TailPermutation JSON: missing field");
        Nat m = j.at("m").get<Nat>();
        Nat T = j.at("T").get<Nat>();
        auto offsets = j.at("offsets").get<std::vector<Nat>>();
        std::vector<Nat> table(T, -1);
        for (const auto& e : j.at("table")) {
            if (!e.is_array() || e.size() != 2) throw BadFormat("TailPermutation JSON: bad table entry");
            Nat x = e[0].get<Nat>();
            if (x < 0 || x >= T) throw BadFormat("TailPermutation JSON: table key out of range");
            table[x] = e[1].get<Nat>();
        }
        for (Nat x = 0; x < T; ++x)
            if (table[x] < 0) throw BadFormat("TailPermutation JSON: incomplete table");
        auto sigma = j.at("sigma").get<std::vector<Nat>>();
        if (sigma.size() != offsets.size()) throw BadFormat("TailPermutation JSON: sigma length");
        for (size_t r = 0; r < offsets.size(); ++r)
            if (sigma[r] != mod(static_cast<Nat>(r) + offsets[r], m))
                throw BadFormat("TailPermutation JSON: sigma disagrees with offsets");
        return TailPermutation(m, offsets, T, table);
    }

    static Nat mod(Nat x, Nat m) { return ((x % m) + m) % m; }

private:
    void validate() const {
        if (m_ < 1) throw NotABijection("TailPermutation: modulus must be >= 1");
        if (static_cast<Nat>(offsets_.size()) != m_)
            throw NotABijection("TailPermutation: need one offset per residue");
        if (T_ < 0 || static_cast<Nat>(table_.size()) != T_)
            throw NotABijection("TailPermutation: table must cover exactly [0, T)");

        // sigma must permute the residues.
        std::vector<bool> hit(m_, false);
        for (Nat r = 0; r < m_; ++r) {
            Nat s = mod(r + offsets_[r], m_);
            if (hit[s]) throw NotABijection("TailPermutation: class map is not a permutation");
            hit[s] = true;
        }

        // Tail rays must stay inside the naturals.
        std::vector<Nat> ray_start(m_);
        for (Nat r = 0; r < m_; ++r) {
            Nat t = T_ + mod(r - T_, m_); // first x >= T in class r
            if (t + offsets_[r] < 0)
                throw NotABijection("TailPermutation: tail ray escapes below zero");
            ray_start[r] = t + offsets_[r];
        }

        // The table must biject [0, T) onto the complement of the tail-ray
        // images. That complement is exactly the union over classes s of the
        // class points below the incoming ray start.
        std::vector<Nat> uncovered;
        for (Nat r = 0; r < m_; ++r) {
            Nat s = mod(r + offsets_[r], m_);
            for (Nat y = s; y < ray_start[r]; y += m_) uncovered.push_back(y);
        }
        std::sort(uncovered.begin(), uncovered.end());
        std::vector<Nat> values = table_;
        std::sort(values.begin(), values.end());
        if (values != uncovered)
            throw NotABijection("TailPermutation: table does not biject onto the uncovered set");
    }

    void canonicalize() {
        // Minimal period of the offset vector.
        for (Nat p = 1; p < m_; ++p) {
            if (m_ % p != 0) continue;
            bool periodic = true;
            for (Nat r = 0; r < m_ && periodic; ++r)
                periodic = (offsets_[r] == offsets_[(r + p) % m_]);
            if (periodic) {
                offsets_.resize(p);
                m_ = p;
                break;
            }
        }
        // Minimal threshold: drop table entries that agree with the tail rule.
        while (T_ > 0 && table_[T_ - 1] == (T_ - 1) + offsets_[(T_ - 1) % m_]) {
            table_.pop_back();
            --T_;
        }
    }

    Nat m_;
    std::vector<Nat> offsets_;
    Nat T_;
    std::vector<Nat> table_;
};

struct SupportDecision {
    bool contained = false;
    std::optional<Nat> counterexample; // a moved point outside S, when not contained
};

/// Exact decision of supp(a) <= S, i.e. {x : a(x) != x} is a subset of S.
/// Tail classes with a nonzero offset must lie inside S wholesale; the
/// finite window is checked pointwise.
inline SupportDecision support_in(const TailPermutation& a, const ClassSet& s) {
    for (Nat x = 0; x < a.threshold(); ++x)
        if (a.apply(x) != x && !s.contains(x)) return {false, x};

    Nat M = std::lcm(a.modulus(), s.modulus());
    std::vector<Nat> lifted = s.residues_at(M);
    for (Nat r = 0; r < M; ++r) {
        if (a.offsets()[r % a.modulus()] == 0) continue;
        // The whole tail of this class moves; find any tail point outside S.
        bool class_in = std::binary_search(lifted.begin(), lifted.end(), r);
        Nat first = a.threshold() + TailPermutation::mod(r - a.threshold(), M);
        if (!class_in) {
            for (Nat x = first;; x += M)
                if (!s.contains(x)) return {false, x};
        }
        for (Nat y : s.minus())
            if (y >= a.threshold() && y % M == r) return {false, y};
    }
    return {true, std::nullopt};
}

/// Restriction of a to an invariant set: x -> a(x) on S, identity elsewhere.
/// Requires a(S) = S; the constructor validation catches violations.
inline TailPermutation restrict_to(const TailPermutation& a, const ClassSet& s) {
    Nat M = std::lcm(a.modulus(), s.modulus());
    Nat bound = std::max(a.threshold(), s.correction_bound());
    Nat T = ((bound + M - 1) / M) * M;
    std::vector<Nat> offsets(M);
    for (Nat r = 0; r < M; ++r)
        offsets[r] = s.contains(T + r) ? a.offsets()[r % a.modulus()] : 0;
    std::vector<Nat> table(T);
    for (Nat x = 0; x < T; ++x) table[x] = s.contains(x) ? a.apply(x) : x;
    return TailPermutation(M, std::move(offsets), T, std::move(table));
}

} // namespace unifact
