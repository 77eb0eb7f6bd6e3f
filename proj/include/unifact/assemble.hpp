#pragma once

#include "unifact/verify.hpp"
#include "unifact/word.hpp"

namespace unifact {

/// Symbolic worst-case length of the three-stage assembly: m slots, each a
/// product of n conjugates, each conjugate three chain letters after
/// substituting fullness witnesses.
inline long long assemble_bound_symbolic(long long n, long long m) {
    long long total = 0;
    for (long long slot = 0; slot < m; ++slot)
        for (long long conj = 0; conj < n; ++conj) total += 3;
    return total;
}

/// Substitute fullness witnesses into condition-(B) certificates and splice
/// the expansions into the slots of the condition-(C) word. Every conjugate
/// letter becomes three chain letters; generator slots pass through.
///
/// witnesses[i][k] replaces the conjugator of the k-th letter of b_certs[i];
/// substitution is sound when the witness agrees with the conjugator on the
/// certificate's corner (the gp = hp condition).
inline Certificate assemble_3nm(const Certificate& c_cert,
                                const std::vector<Certificate>& b_certs,
                                const std::vector<std::vector<GroupElement>>& witnesses,
                                const TolerancePolicy& tol = {}) {
    if (b_certs.size() != witnesses.size())
        throw MissingWitness("assemble_3nm: one witness list per condition-(B) certificate");

    Certificate out;
    out.kind = "assembled";
    out.input = c_cert.input;
    out.generators = c_cert.generators;

    long long n_max = 1;
    size_t next_b = 0;
    for (const auto& slot : c_cert.letters) {
        if (slot.kind() == Letter::Kind::Generator) {
            out.letters.push_back(slot);
            continue;
        }
        if (next_b >= b_certs.size())
            throw MissingWitness("assemble_3nm: not enough condition-(B) certificates");
        const Certificate& b = b_certs[next_b];
        const auto& wit = witnesses[next_b];
        ++next_b;

        if (is_matrix(slot.payload) != is_matrix(b.input))
            throw MixedPayloads("assemble_3nm: slot and certificate models differ");
        if (is_matrix(slot.payload)) {
            double gap = op_distance(std::get<ComplexMatrix>(slot.payload),
                                     std::get<ComplexMatrix>(b.input));
            if (gap > tol.tol_residual)
                throw IncompatibleProjections(
                    "assemble_3nm: condition-(B) certificate does not target the slot element");
        } else if (!(std::get<TailPermutation>(slot.payload) ==
                     std::get<TailPermutation>(b.input))) {
            throw IncompatibleProjections(
                "assemble_3nm: condition-(B) certificate does not target the slot element");
        }
        if (wit.size() != b.letters.size())
            throw MissingWitness("assemble_3nm: witness count mismatch for a certificate");

        n_max = std::max(n_max, static_cast<long long>(b.letters.size()));
        for (size_t k = 0; k < b.letters.size(); ++k) {
            Letter l = b.letters[k];
            if (l.kind() != Letter::Kind::Conjugate)
                throw IncompatibleProjections("assemble_3nm: condition-(B) letters must be conjugates");
            l.conjugator = wit[k];
            l.tag = "chain_conjugate";
            out.letters.push_back(std::move(l));
        }
    }
    if (next_b != b_certs.size())
        throw MissingWitness("assemble_3nm: unused condition-(B) certificates");

    long long m_slots = static_cast<long long>(c_cert.letters.size());
    out.claimed_bound = 3 * n_max * m_slots;
    out.paper_bound = 3 * n_max * m_slots;
    out.measured_length = total_expanded_length(out.letters);

    GroupElement prod = evaluate_word(out.letters, out.generators, out.input);
    if (is_matrix(out.input)) {
        out.residual = op_distance(std::get<ComplexMatrix>(prod),
                                   std::get<ComplexMatrix>(out.input));
    } else {
        out.exact = std::get<TailPermutation>(prod) == std::get<TailPermutation>(out.input);
        out.residual = out.exact ? 0.0 : 1.0;
    }
    return out;
}

} // namespace unifact
