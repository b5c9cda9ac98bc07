#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace percom {

// Exact nonnegative ratio used for persistence values. Comparisons are by
// cross-multiplication, so equal ratios compare equal regardless of the
// stored representation. Counts stay far below 2^31, keeping the
// cross products inside 64 bits.
struct ratio {
    long long num = 0;
    long long den = 1;

    ratio() = default;
    ratio(long long n, long long d) : num(n), den(d) {}

    static ratio zero() { return ratio(0, 1); }
    static ratio one() { return ratio(1, 1); }

    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

    ratio reduced() const {
        if (num == 0) return ratio(0, 1);
        long long g = std::gcd(num, den);
        return ratio(num / g, den / g);
    }

    friend bool operator==(const ratio& a, const ratio& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator!=(const ratio& a, const ratio& b) { return !(a == b); }
    friend bool operator<(const ratio& a, const ratio& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator>(const ratio& a, const ratio& b) { return b < a; }
    friend bool operator<=(const ratio& a, const ratio& b) { return !(b < a); }
    friend bool operator>=(const ratio& a, const ratio& b) { return !(a < b); }
};

} // namespace percom
