#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <string>

namespace wakeford {

/// Unbounded integer for pairing counts.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal_string(const BigInt& v) { return v.str(); }

/// Exact rational bound term over 64-bit parts (all bound numerators and
/// denominators here are tiny). A term can degenerate two ways: to +infinity
/// (never met, dropped from a min) or to "trivial" (met by any nonnegative
/// value). Comparisons cross-multiply; nothing goes through floating point.
struct ExtRat {
    enum class Kind { finite, infinite, trivial };
    Kind kind = Kind::finite;
    long long num = 0;
    long long den = 1;  // > 0 when finite

    static ExtRat inf() { return ExtRat{Kind::infinite, 0, 1}; }
    static ExtRat auto_satisfied() { return ExtRat{Kind::trivial, 0, 1}; }

    static ExtRat of(long long n, long long d) {
        if (d <= 0) throw std::logic_error("ExtRat requires a positive denominator");
        return ExtRat{Kind::finite, n, d};
    }

    bool is_infinite() const { return kind == Kind::infinite; }

    friend ExtRat min(const ExtRat& a, const ExtRat& b) {
        if (a.kind == Kind::trivial || b.kind == Kind::infinite) return a;
        if (b.kind == Kind::trivial || a.kind == Kind::infinite) return b;
        // a <= b  <=>  a.num * b.den <= b.num * a.den
        __int128 lhs = static_cast<__int128>(a.num) * b.den;
        __int128 rhs = static_cast<__int128>(b.num) * a.den;
        return lhs <= rhs ? a : b;
    }

    /// x >= this (an infinite bound is never met, a trivial one always is).
    bool satisfied_by(long long x) const {
        if (kind == Kind::infinite) return false;
        if (kind == Kind::trivial) return true;
        return static_cast<__int128>(x) * den >= static_cast<__int128>(num);
    }

    bool satisfied_by(const BigInt& x) const {
        if (kind == Kind::infinite) return false;
        if (kind == Kind::trivial) return true;
        return x * den >= num;
    }

    std::string str() const {
        if (kind == Kind::infinite) return "inf";
        if (kind == Kind::trivial) return "auto";
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0) g = 1;
        long long n = num / g, d = den / g;
        return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
    }
};

} // namespace wakeford
