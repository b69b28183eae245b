#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace fbheat {

/// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
/// giving roughly 32 significant decimal digits.  Only the operations the
/// eigensolvers need are provided (field ops, sqrt, abs, comparisons).
/// The error-free transformations assume round-to-nearest and no FTZ, and
/// two_prod relies on a correctly rounded fused multiply-add.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    constexpr DD(int v) : hi(v), lo(0.0) {}

    explicit operator double() const { return hi; }
};

namespace detail_dd {

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// |a| >= |b| required.
inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail_dd

inline double to_double(const DD& a) { return a.hi; }
inline double to_double(double a) { return a; }

inline DD operator+(const DD& a, const DD& b) {
    using namespace detail_dd;
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }

inline DD operator*(const DD& a, const DD& b) {
    using namespace detail_dd;
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(const DD& a, const DD& b) {
    using namespace detail_dd;
    const double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD& operator+=(DD& a, const DD& b) { a = a + b; return a; }
inline DD& operator-=(DD& a, const DD& b) { a = a - b; return a; }
inline DD& operator*=(DD& a, const DD& b) { a = a * b; return a; }
inline DD& operator/=(DD& a, const DD& b) { a = a / b; return a; }

inline DD operator+(double a, const DD& b) { return DD(a) + b; }
inline DD operator-(double a, const DD& b) { return DD(a) - b; }
inline DD operator*(double a, const DD& b) { return DD(a) * b; }
inline DD operator/(double a, const DD& b) { return DD(a) / b; }
inline DD operator+(const DD& a, double b) { return a + DD(b); }
inline DD operator-(const DD& a, double b) { return a - DD(b); }
inline DD operator*(const DD& a, double b) { return a * DD(b); }
inline DD operator/(const DD& a, double b) { return a / DD(b); }

inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) { return !(a == b); }
inline bool operator<(const DD& a, const DD& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }

inline DD abs(const DD& a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a; }

inline DD sqrt(const DD& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
    // One dd-corrected Newton step on the double seed.
    const double x = 1.0 / std::sqrt(a.hi);
    const double ax = a.hi * x;
    const DD err = a - DD(ax) * DD(ax);
    return DD(ax) + DD(err.hi * (x * 0.5));
}

inline std::string to_string(const DD& a) {
    return std::to_string(a.hi) + (a.lo >= 0 ? "+" : "") + std::to_string(a.lo);
}

} // namespace fbheat
