#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unifact/projection.hpp"
#include "unifact/tail_permutation.hpp"

namespace unifact {

/// Group element payload of a letter: dense unitary matrix or computable
/// permutation. Words are homogeneous; mixing payloads is an error.
using GroupElement = std::variant<ComplexMatrix, TailPermutation>;
using SupportClaim = std::variant<std::monostate, Projection, ClassSet>;

inline bool is_matrix(const GroupElement& g) { return std::holds_alternative<ComplexMatrix>(g); }

/// One factor of a word.
///
/// Tags follow the certificate vocabulary: "A"/"B" for the alternating
/// five-factor pattern, "subgroup" for plain support-restricted letters,
/// "generator" for references into the certificate's generator list, and
/// "base_conjugate" for letters of the form w g^{+-1} w^{-1}. Conjugate
/// letters expand to exactly three primitive letters.
struct Letter {
    enum class Kind { Subgroup, Generator, Conjugate };

    std::string tag = "subgroup";
    GroupElement payload;                  // Subgroup: the element; Conjugate: the base
    SupportClaim support;                  // claimed support, when tagged
    int generator_index = -1;              // Generator letters
    int generator_power = 1;               // +-1
    std::optional<GroupElement> conjugator; // Conjugate letters
    int base_power = 1;                    // Conjugate letters: g^{+-1}

    Kind kind() const {
        if (tag == "generator") return Kind::Generator;
        if (conjugator.has_value()) return Kind::Conjugate;
        return Kind::Subgroup;
    }

    long long expanded_length() const { return kind() == Kind::Conjugate ? 3 : 1; }
};

inline Letter subgroup_letter(std::string tag, GroupElement g, SupportClaim claim) {
    Letter l;
    l.tag = std::move(tag);
    l.payload = std::move(g);
    l.support = std::move(claim);
    return l;
}

inline Letter generator_letter(int index, int power) {
    Letter l;
    l.tag = "generator";
    l.generator_index = index;
    l.generator_power = power;
    return l;
}

inline Letter conjugate_letter(std::string tag, GroupElement base, GroupElement conj,
                               int base_power = 1, SupportClaim claim = std::monostate{}) {
    Letter l;
    l.tag = std::move(tag);
    l.payload = std::move(base);
    l.conjugator = std::move(conj);
    l.base_power = base_power;
    l.support = std::move(claim);
    return l;
}

struct TranscriptEntry {
    int level = 0;
    int corner_rank = 0;
    double residual = 0.0;
};

/// A factorization record: the unit of verification. Every engine emits one
/// of these; the verifier re-derives everything it claims.
struct Certificate {
    std::string kind;                     // five_factor | symmetry | ladder | ...
    GroupElement input;
    std::vector<Letter> letters;
    std::vector<GroupElement> generators; // referents of generator letters
    long long claimed_bound = 0;
    long long paper_bound = 0;
    long long measured_length = 0;        // sum of expanded letter counts
    std::optional<Complex> phase;         // projective kinds: corner phase
    std::optional<Projection> corner;     // corner the phase/trace claims refer to
    std::optional<long long> surrogate_constant; // dimension-dependent bound replacing a
                                                 // dimension-independent citation
    double residual = 0.0;                // matrix model
    bool exact = false;                   // permutation model: exact equality held
    std::vector<TranscriptEntry> transcript;

    long long letter_count() const { return static_cast<long long>(letters.size()); }
};

inline long long total_expanded_length(const std::vector<Letter>& letters) {
    long long n = 0;
    for (const auto& l : letters) n += l.expanded_length();
    return n;
}

namespace detail {

inline ComplexMatrix as_matrix(const GroupElement& g) {
    if (!is_matrix(g)) throw MixedPayloads("expected a matrix payload");
    return std::get<ComplexMatrix>(g);
}

inline TailPermutation as_perm(const GroupElement& g) {
    if (is_matrix(g)) throw MixedPayloads("expected a permutation payload");
    return std::get<TailPermutation>(g);
}

} // namespace detail

/// Left-to-right product of a homogeneous word. Generator letters resolve
/// against `generators`; conjugate letters evaluate to w g^{+-1} w^{-1}.
inline GroupElement evaluate_word(const std::vector<Letter>& letters,
                                  const std::vector<GroupElement>& generators,
                                  const GroupElement& like) {
    auto element_of = [&](const Letter& l) -> GroupElement {
        switch (l.kind()) {
        case Letter::Kind::Generator: {
            if (l.generator_index < 0 ||
                l.generator_index >= static_cast<int>(generators.size()))
                throw MissingWitness("generator letter index out of range");
            const GroupElement& g = generators[static_cast<size_t>(l.generator_index)];
            if (l.generator_power == 1) return g;
            if (is_matrix(g)) return detail::as_matrix(g).adjoint();
            return detail::as_perm(g).inverse();
        }
        case Letter::Kind::Conjugate: {
            if (is_matrix(l.payload)) {
                ComplexMatrix g = detail::as_matrix(l.payload);
                if (l.base_power != 1) g = g.adjoint();
                ComplexMatrix w = detail::as_matrix(*l.conjugator);
                return w * g * w.adjoint();
            }
            TailPermutation g = detail::as_perm(l.payload);
            if (l.base_power != 1) g = g.inverse();
            TailPermutation w = detail::as_perm(*l.conjugator);
            return w.compose_after(g).compose_after(w.inverse());
        }
        case Letter::Kind::Subgroup:
        default:
            return l.payload;
        }
    };

    if (is_matrix(like)) {
        ComplexMatrix acc = ComplexMatrix::identity(detail::as_matrix(like).dim());
        for (const auto& l : letters) acc = acc * detail::as_matrix(element_of(l));
        return acc;
    }
    TailPermutation acc = TailPermutation::identity();
    for (const auto& l : letters) acc = acc.compose_after(detail::as_perm(element_of(l)));
    return acc;
}

} // namespace unifact
