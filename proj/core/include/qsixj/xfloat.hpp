// Extended-precision real scalar: an unevaluated sum of two doubles
// (~31 significant decimal digits).  Arithmetic uses the classical
// error-free transforms (two_sum / FMA-based two_prod); transcendental
// functions live in xfloat.cpp.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsixj {

// Thrown on mathematical-domain violations (sqrt of negative, ln of
// non-positive, arccos beyond clamp tolerance, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace eft {
// s + err == a + b exactly.
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
}
// Requires |a| >= |b| (or a == 0).
inline void quick_two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    err = b - (s - a);
}
// p + err == a * b exactly.
inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}
}  // namespace eft

class XFloat {
  public:
    double hi{0.0};
    double lo{0.0};

    constexpr XFloat() = default;
    constexpr XFloat(double x) : hi(x), lo(0.0) {}
    constexpr XFloat(double h, double l) : hi(h), lo(l) {}
    explicit XFloat(int n) : hi(double(n)), lo(0.0) {}
    explicit XFloat(long long n);

    double to_double() const { return hi + lo; }
    bool is_zero() const { return hi == 0.0; }
    bool is_negative() const { return hi < 0.0 || (hi == 0.0 && lo < 0.0); }
    bool is_finite() const { return std::isfinite(hi); }

    // ---- arithmetic ----
    friend XFloat operator+(const XFloat& a, const XFloat& b) {
        double s1, s2, t1, t2;
        eft::two_sum(a.hi, b.hi, s1, s2);
        eft::two_sum(a.lo, b.lo, t1, t2);
        s2 += t1;
        eft::quick_two_sum(s1, s2, s1, s2);
        s2 += t2;
        eft::quick_two_sum(s1, s2, s1, s2);
        return XFloat(s1, s2);
    }
    friend XFloat operator-(const XFloat& a, const XFloat& b) {
        return a + XFloat(-b.hi, -b.lo);
    }
    friend XFloat operator-(const XFloat& a) { return XFloat(-a.hi, -a.lo); }
    friend XFloat operator*(const XFloat& a, const XFloat& b) {
        double p, e;
        eft::two_prod(a.hi, b.hi, p, e);
        e += a.hi * b.lo + a.lo * b.hi;
        eft::quick_two_sum(p, e, p, e);
        return XFloat(p, e);
    }
    friend XFloat operator/(const XFloat& a, const XFloat& b) {
        if (b.hi == 0.0 && b.lo == 0.0) throw DomainError("XFloat: division by zero");
        double q1 = a.hi / b.hi;
        XFloat r = a - b * XFloat(q1);
        double q2 = r.hi / b.hi;
        r = r - b * XFloat(q2);
        double q3 = r.hi / b.hi;
        double s, e;
        eft::quick_two_sum(q1, q2, s, e);
        e += q3;
        eft::quick_two_sum(s, e, s, e);
        return XFloat(s, e);
    }

    XFloat& operator+=(const XFloat& b) { return *this = *this + b; }
    XFloat& operator-=(const XFloat& b) { return *this = *this - b; }
    XFloat& operator*=(const XFloat& b) { return *this = *this * b; }
    XFloat& operator/=(const XFloat& b) { return *this = *this / b; }

    // ---- comparison (exact on the normalized pair) ----
    friend bool operator==(const XFloat& a, const XFloat& b) {
        return a.hi == b.hi && a.lo == b.lo;
    }
    friend bool operator!=(const XFloat& a, const XFloat& b) { return !(a == b); }
    friend bool operator<(const XFloat& a, const XFloat& b) {
        return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
    }
    friend bool operator>(const XFloat& a, const XFloat& b) { return b < a; }
    friend bool operator<=(const XFloat& a, const XFloat& b) { return !(b < a); }
    friend bool operator>=(const XFloat& a, const XFloat& b) { return !(a < b); }

    // ---- decimal strings ----
    std::string to_string(int digits = 35) const;
    static XFloat from_string(const std::string& s);
};

inline XFloat abs(const XFloat& a) { return a.is_negative() ? -a : a; }
XFloat sqrt(const XFloat& a);
XFloat floor(const XFloat& a);
XFloat round(const XFloat& a);
XFloat ldexp(const XFloat& a, int n);  // a * 2^n, exact
XFloat pow10(int e);                   // 10^e
XFloat powi(const XFloat& a, int n);   // integer power by squaring

// transcendental functions; accuracy <= 1e-28 relative on |x| <= 1e3
XFloat exp(const XFloat& x);
XFloat log(const XFloat& x);
XFloat sin(const XFloat& x);
XFloat cos(const XFloat& x);
void sincos(const XFloat& x, XFloat& s, XFloat& c);
XFloat sinh(const XFloat& x);
XFloat cosh(const XFloat& x);
XFloat atan2(const XFloat& y, const XFloat& x);
// arccos/arcsin clamp inputs within 1e-24 of +-1; beyond that -> DomainError
XFloat acos(const XFloat& x);
XFloat asin(const XFloat& x);

namespace consts {
const XFloat& pi();
const XFloat& two_pi();
const XFloat& half_pi();
const XFloat& quarter_pi();
const XFloat& ln2();
const XFloat& e();
const XFloat& sqrt_two_pi();
const XFloat& gamma23();  // Gamma(2/3)
const XFloat& gamma13();  // Gamma(1/3)
}  // namespace consts

}  // namespace qsixj
