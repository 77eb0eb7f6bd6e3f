#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace unifact {

/// Exact rational used for trace bookkeeping (rank/dim). Traces are never
/// floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace unifact
