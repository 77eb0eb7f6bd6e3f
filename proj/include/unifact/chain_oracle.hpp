#pragma once

#include <functional>
#include <map>
#include <optional>

#include "unifact/projection.hpp"
#include "unifact/tail_permutation.hpp"

namespace unifact {

/// Membership view of an exhaustive increasing chain W_1 <= W_2 <= ... of
/// symmetric subsets. Oracles must be monotone in the level and safe for
/// concurrent queries.
struct ChainOracle {
    std::function<bool(const ComplexMatrix&, int)> member;
    std::function<std::vector<ComplexMatrix>(int)> enumerate; // optional
    int level_cap = 10000;
};

/// W_n = { u : ||u - 1|| <= n * step }. Symmetric since ||u^{-1} - 1|| =
/// ||u - 1||; exhaustive because every unitary is within distance 2.
inline ChainOracle norm_ball_oracle(double step = 0.1) {
    ChainOracle o;
    o.member = [step](const ComplexMatrix& u, int n) {
        return op_distance(u, ComplexMatrix::identity(u.dim())) <= step * n;
    };
    return o;
}

namespace detail {

inline std::vector<int> permutation_of_matrix(const ComplexMatrix& u) {
    int d = u.dim();
    std::vector<int> perm(static_cast<size_t>(d), -1);
    for (int j = 0; j < d; ++j) {
        int hit = -1;
        for (int i = 0; i < d; ++i) {
            double a = std::abs(u(i, j));
            if (a > 0.5) {
                if (hit >= 0 || std::abs(u(i, j) - Complex(1, 0)) > 1e-9) return {};
                hit = i;
            } else if (a > 1e-9) {
                return {};
            }
        }
        if (hit < 0) return {};
        perm[static_cast<size_t>(j)] = hit;
    }
    return perm;
}

} // namespace detail

/// Cayley-ball chain over a finite permutation group: W_n = words of length
/// at most n over the generators and their inverses, by breadth-first
/// distance. Elements are permutation matrices.
inline ChainOracle cayley_ball_oracle(int points, std::vector<std::vector<int>> generators) {
    auto dist = std::make_shared<std::map<std::vector<int>, int>>();
    std::vector<int> id(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) id[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> gens = generators;
    for (const auto& g : generators) {
        std::vector<int> inv(g.size());
        for (size_t i = 0; i < g.size(); ++i) inv[static_cast<size_t>(g[i])] = static_cast<int>(i);
        gens.push_back(std::move(inv));
    }
    (*dist)[id] = 0;
    std::vector<std::vector<int>> frontier = {id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier) {
            int dp = (*dist)[p];
            for (const auto& g : gens) {
                std::vector<int> q(p.size());
                for (size_t i = 0; i < p.size(); ++i) q[i] = g[static_cast<size_t>(p[i])];
                if (!dist->count(q)) {
                    (*dist)[q] = dp + 1;
                    next.push_back(std::move(q));
                }
            }
        }
        frontier = std::move(next);
    }

    ChainOracle o;
    o.member = [dist, points](const ComplexMatrix& u, int n) {
        if (u.dim() != points) return false;
        auto perm = detail::permutation_of_matrix(u);
        if (perm.empty()) return false;
        auto it = dist->find(perm);
        return it != dist->end() && it->second <= n;
    };
    return o;
}

/// Unitary agreeing with g on pH, completed on the complement by projecting
/// the complement basis away from g(pH) and re-orthonormalizing (the
/// polar-style completion). For g already in G(p) this returns g itself up
/// to rounding.
inline ComplexMatrix canonical_completion(const ComplexMatrix& g, const Projection& p) {
    int d = g.dim();
    std::vector<std::vector<Complex>> cols;
    for (auto& b : range_basis(p)) {
        std::vector<Complex> c(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            Complex s{};
            for (int j = 0; j < d; ++j) s += g(i, j) * b[static_cast<size_t>(j)];
            c[static_cast<size_t>(i)] = s;
        }
        cols.push_back(std::move(c));
    }
    for (auto& b : range_basis(complement(p))) cols.push_back(b);
    // Gram-Schmidt; the leading block is already orthonormal.
    for (size_t j = 0; j < cols.size(); ++j) {
        for (size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (int i = 0; i < d; ++i)
                dot += std::conj(cols[k][static_cast<size_t>(i)]) * cols[j][static_cast<size_t>(i)];
            for (int i = 0; i < d; ++i)
                cols[j][static_cast<size_t>(i)] -= dot * cols[k][static_cast<size_t>(i)];
        }
        double nrm = 0;
        for (int i = 0; i < d; ++i) nrm += std::norm(cols[j][static_cast<size_t>(i)]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12)
            throw NumericalDegeneracy("canonical_completion: complement collapsed");
        for (int i = 0; i < d; ++i) cols[j][static_cast<size_t>(i)] /= nrm;
    }
    ComplexMatrix h(d);
    // Reassemble: h maps the p-basis like g and the complement basis to the
    // completed frame: h = sum target_k source_k^*.
    auto bp = range_basis(p);
    auto bc = range_basis(complement(p));
    size_t idx = 0;
    for (auto& b : bp) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                h(i, j) += cols[idx][static_cast<size_t>(i)] * std::conj(b[static_cast<size_t>(j)]);
        ++idx;
    }
    for (auto& b : bc) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                h(i, j) += cols[idx][static_cast<size_t>(i)] * std::conj(b[static_cast<size_t>(j)]);
        ++idx;
    }
    return h;
}

struct FullnessWitness {
    ComplexMatrix h;
    int level = 0;
    double agreement = 0.0; // ||(g - h) p||
};

struct FullnessResult {
    int level = 0; // max witness level over the sample
    std::vector<FullnessWitness> witnesses;
};

/// Desk-scale realization of the fullness search: for each sample g in
/// G(p), find a chain element agreeing with g on p and the least level
/// containing it. The definition quantifies over all of G(p); this tool
/// quantifies over the sample, which callers must state when reporting.
inline FullnessResult fullness_search(const ChainOracle& oracle, const Projection& p,
                                      const std::vector<ComplexMatrix>& sample,
                                      const TolerancePolicy& tol = {}) {
    FullnessResult out;
    for (const auto& g : sample) {
        if (support_residual(g, p) > tol.tol_residual)
            throw NotInCorner("fullness_search: sample element escapes G(p)");
        FullnessWitness w;
        bool found = false;
        for (int n = 1; n <= oracle.level_cap && !found; ++n) {
            if (oracle.enumerate) {
                for (const auto& cand : oracle.enumerate(n)) {
                    if (operator_norm((g - cand) * p.matrix) <= tol.tol_residual) {
                        w = {cand, n, operator_norm((g - cand) * p.matrix)};
                        found = true;
                        break;
                    }
                }
            } else {
                ComplexMatrix h = canonical_completion(g, p);
                if (oracle.member(h, n)) {
                    w = {h, n, operator_norm((g - h) * p.matrix)};
                    found = true;
                }
            }
        }
        if (!found)
            throw OracleExhausted("fullness_search: no witness within the level cap " +
                                  std::to_string(oracle.level_cap));
        out.level = std::max(out.level, w.level);
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

/// Set-model chain oracle and fullness search: witnesses agree with the
/// sample exactly on P.
struct PermChainOracle {
    std::function<bool(const TailPermutation&, int)> member;
    int level_cap = 10000;
};

struct PermFullnessResult {
    int level = 0;
    std::vector<std::pair<TailPermutation, int>> witnesses;
};

inline PermFullnessResult fullness_search_perm(const PermChainOracle& oracle, const ClassSet& p,
                                               const std::vector<TailPermutation>& sample) {
    PermFullnessResult out;
    for (const auto& g : sample) {
        if (!support_in(g, p).contained)
            throw NotInCorner("fullness_search_perm: sample element escapes G(P)");
        bool found = false;
        for (int n = 1; n <= oracle.level_cap && !found; ++n) {
            if (oracle.member(g, n)) {
                out.witnesses.emplace_back(g, n);
                out.level = std::max(out.level, n);
                found = true;
            }
        }
        if (!found)
            throw OracleExhausted("fullness_search_perm: no witness within the level cap");
    }
    return out;
}

} // namespace unifact
