#pragma once

#include <vector>

#include "unifact/random.hpp"
#include "unifact/tail_permutation.hpp"

namespace unifact {

/// Seeded random TailPermutation with modulus <= max_modulus and threshold
/// <= max_table (before canonicalization). Offsets are balanced so the tail
/// pattern admits a bijection; the table is a random matching onto the
/// uncovered points.
inline TailPermutation random_tail_permutation(std::uint64_t seed, Nat max_modulus = 6,
                                               Nat max_table = 30) {
    SeededRng rng(seed);
    Nat m = 1 + static_cast<Nat>(rng.below(static_cast<std::uint64_t>(max_modulus)));

    std::vector<Nat> sigma(m);
    for (Nat r = 0; r < m; ++r) sigma[r] = r;
    for (Nat r = m - 1; r > 0; --r)
        std::swap(sigma[r], sigma[static_cast<Nat>(rng.below(static_cast<std::uint64_t>(r + 1)))]);

    std::vector<Nat> laps(m, 0);
    Nat sum = 0;
    for (Nat r = 0; r + 1 < m; ++r) {
        laps[r] = static_cast<Nat>(rng.below(5)) - 2;
        sum += laps[r];
    }
    laps[m - 1] = -sum;

    std::vector<Nat> offsets(m);
    Nat min_off = 0;
    for (Nat r = 0; r < m; ++r) {
        offsets[r] = sigma[r] - r + m * laps[r];
        min_off = std::min(min_off, offsets[r]);
    }

    Nat T = static_cast<Nat>(rng.below(static_cast<std::uint64_t>(max_table + 1)));
    T = std::max(T, -min_off);

    // Uncovered points below the incoming tail rays; |uncovered| == T because
    // the offsets sum to zero.
    std::vector<Nat> uncovered;
    for (Nat r = 0; r < m; ++r) {
        Nat t = T + TailPermutation::mod(r - T, m);
        Nat s = TailPermutation::mod(r + offsets[r], m);
        for (Nat y = s; y < t + offsets[r]; y += m) uncovered.push_back(y);
    }
    std::sort(uncovered.begin(), uncovered.end());
    for (size_t i = uncovered.size(); i > 1; --i)
        std::swap(uncovered[i - 1], uncovered[rng.below(i)]);

    return TailPermutation(m, std::move(offsets), T, std::move(uncovered));
}

/// Random permutation of [0, n) as a TailPermutation with identity tail.
inline TailPermutation random_finite_permutation(Nat n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Nat> images(n);
    for (Nat i = 0; i < n; ++i) images[i] = i;
    for (size_t i = static_cast<size_t>(n); i > 1; --i)
        std::swap(images[i - 1], images[rng.below(i)]);
    return TailPermutation::from_table(std::move(images));
}

} // namespace unifact
