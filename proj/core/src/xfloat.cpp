#include "qsixj/xfloat.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace qsixj {

XFloat::XFloat(long long n) {
    // |n| up to 2^63 does not fit one double; split exactly.
    double h = double(n);
    double l = double(n - (long long)h);
    eft::quick_two_sum(h, l, hi, lo);
}

// ---------------------------------------------------------------- constants

namespace consts {
// Leading double expansions (each term is the correctly rounded remainder).
static const double PI0 = 3.14159265358979312e+00;
static const double PI1 = 1.22464679914735321e-16;
static const double PI2 = -2.99476980971833967e-33;
static const double PI3 = 1.11245422086336528e-49;

static const double HPI0 = 1.57079632679489656e+00;
static const double HPI1 = 6.12323399573676604e-17;
static const double HPI2 = -1.49738490485916983e-33;
static const double HPI3 = 5.56227110431682641e-50;

static const double TWO_OVER_PI = 6.36619772367581382e-01;

static const double LN2_0 = 6.93147180559945286e-01;
static const double LN2_1 = 2.31904681384629956e-17;
static const double LN2_2 = 5.70770843841621207e-34;

const XFloat& pi() {
    static const XFloat v(PI0, PI1);
    return v;
}
const XFloat& two_pi() {
    static const XFloat v(2 * PI0, 2 * PI1);
    return v;
}
const XFloat& half_pi() {
    static const XFloat v(HPI0, HPI1);
    return v;
}
const XFloat& quarter_pi() {
    static const XFloat v(HPI0 / 2, HPI1 / 2);
    return v;
}
const XFloat& ln2() {
    static const XFloat v(LN2_0, LN2_1);
    return v;
}
const XFloat& e() {
    static const XFloat v = exp(XFloat(1.0));
    return v;
}
const XFloat& sqrt_two_pi() {
    static const XFloat v(2.50662827463100069e+00, -1.83285799804591668e-16);
    return v;
}
const XFloat& gamma23() {
    static const XFloat v(1.35411793942640046e+00, -4.62312039113664165e-17);
    return v;
}
const XFloat& gamma13() {
    static const XFloat v(2.67893853470774745e+00, 1.79477986482252436e-16);
    return v;
}
}  // namespace consts

// ---------------------------------------------------------------- helpers

XFloat ldexp(const XFloat& a, int n) {
    return XFloat(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

XFloat floor(const XFloat& a) {
    double f = std::floor(a.hi);
    if (f == a.hi) {
        // high part integral: the fraction lives entirely in lo
        return XFloat(f) + XFloat(std::floor(a.lo));
    }
    return XFloat(f);
}

XFloat round(const XFloat& a) { return floor(a + XFloat(0.5)); }

XFloat sqrt(const XFloat& a) {
    if (a.is_zero()) return XFloat(0.0);
    if (a.is_negative()) throw DomainError("XFloat: sqrt of negative");
    XFloat y(std::sqrt(a.hi));
    // one Newton step in full precision squares the seed accuracy
    y = (y + a / y) * XFloat(0.5);
    return y;
}

XFloat powi(const XFloat& a, int n) {
    if (n < 0) return XFloat(1.0) / powi(a, -n);
    XFloat r(1.0), b = a;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

XFloat pow10(int e) { return powi(XFloat(10.0), e); }

// ---------------------------------------------------------------- exp / log

XFloat exp(const XFloat& x) {
    if (x.hi > 709.0) return XFloat(HUGE_VAL);
    if (x.hi < -745.0) return XFloat(0.0);
    double m = std::nearbyint(x.hi / consts::LN2_0);
    XFloat t = x - consts::ln2() * XFloat(m) - XFloat(consts::LN2_2) * XFloat(m);
    // |t| <= ln2/2; scale down 2^9 then square back up (expm1 form keeps
    // relative accuracy through the squarings)
    t = ldexp(t, -9);
    XFloat p = t;  // expm1(t)
    XFloat term = t;
    for (int k = 2; k <= 12; ++k) {
        term *= t / XFloat(double(k));
        p += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(p.hi)) break;
    }
    for (int i = 0; i < 9; ++i) p = ldexp(p, 1) + p * p;  // expm1(2u)=2e+e^2
    return ldexp(XFloat(1.0) + p, int(m));
}

XFloat log(const XFloat& x) {
    if (x.hi <= 0.0) throw DomainError("XFloat: log of non-positive");
    // split x = f * 2^n with f in [0.5, 1) so the Newton iteration below
    // never evaluates exp near the underflow range
    int n = 0;
    std::frexp(x.hi, &n);
    XFloat f = ldexp(x, -n);
    XFloat y(std::log(f.hi));
    for (int i = 0; i < 2; ++i) y = y + f * exp(-y) - XFloat(1.0);
    return y + consts::ln2() * XFloat(double(n));
}

// ---------------------------------------------------------------- sin / cos

namespace {

XFloat sin_taylor(const XFloat& t) {
    XFloat t2 = t * t, s = t, term = t;
    for (int k = 1; k <= 20; ++k) {
        term *= -t2 / XFloat(double((2 * k) * (2 * k + 1)));
        s += term;
        if (std::fabs(term.hi) < 1e-35 * (std::fabs(s.hi) + 1e-300)) break;
    }
    return s;
}

XFloat cos_taylor(const XFloat& t) {
    XFloat t2 = t * t, c(1.0), term(1.0);
    for (int k = 1; k <= 20; ++k) {
        term *= -t2 / XFloat(double((2 * k - 1) * (2 * k)));
        c += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(c.hi)) break;
    }
    return c;
}

// x = q*(pi/2) + t with |t| ~<= pi/4; returns q mod 4.
int reduce_half_pi(const XFloat& x, XFloat& t) {
    double q = std::nearbyint(x.hi * consts::TWO_OVER_PI);
    XFloat qq(q);
    t = x - XFloat(consts::HPI0) * qq;
    t = t - XFloat(consts::HPI1) * qq;
    t = t - XFloat(consts::HPI2) * qq;
    t = t - XFloat(consts::HPI3) * qq;
    long long qi = (long long)q;
    return int(((qi % 4) + 4) % 4);
}

}  // namespace

void sincos(const XFloat& x, XFloat& s, XFloat& c) {
    XFloat t;
    int n = reduce_half_pi(x, t);
    XFloat st = sin_taylor(t), ct = cos_taylor(t);
    switch (n) {
        case 0: s = st; c = ct; break;
        case 1: s = ct; c = -st; break;
        case 2: s = -st; c = -ct; break;
        default: s = -ct; c = st; break;
    }
}

XFloat sin(const XFloat& x) {
    XFloat s, c;
    sincos(x, s, c);
    return s;
}

XFloat cos(const XFloat& x) {
    XFloat s, c;
    sincos(x, s, c);
    return c;
}

XFloat sinh(const XFloat& x) {
    if (std::fabs(x.hi) < 0.5) {
        XFloat x2 = x * x, s = x, term = x;
        for (int k = 1; k <= 20; ++k) {
            term *= x2 / XFloat(double((2 * k) * (2 * k + 1)));
            s += term;
            if (std::fabs(term.hi) < 1e-35 * (std::fabs(s.hi) + 1e-300)) break;
        }
        return s;
    }
    XFloat e = exp(x);
    return (e - XFloat(1.0) / e) * XFloat(0.5);
}

XFloat cosh(const XFloat& x) {
    XFloat e = exp(x);
    return (e + XFloat(1.0) / e) * XFloat(0.5);
}

// ---------------------------------------------------------------- inverse trig

XFloat atan2(const XFloat& y, const XFloat& x) {
    if (x.is_zero() && y.is_zero()) return XFloat(0.0);
    XFloat z(std::atan2(y.hi, x.hi));
    // Newton on f(z) = x sin z - y cos z; f'(z) = x cos z + y sin z
    for (int i = 0; i < 2; ++i) {
        XFloat s, c;
        sincos(z, s, c);
        z = z + (y * c - x * s) / (x * c + y * s);
    }
    return z;
}

namespace {
XFloat clamp_unit(const XFloat& x, const char* who) {
    XFloat one(1.0);
    if (x > one) {
        if ((x - one).hi > 1e-24) throw DomainError(std::string(who) + ": argument > 1");
        return one;
    }
    if (x < -one) {
        if ((-one - x).hi > 1e-24) throw DomainError(std::string(who) + ": argument < -1");
        return -one;
    }
    return x;
}
}  // namespace

XFloat acos(const XFloat& x0) {
    XFloat x = clamp_unit(x0, "acos");
    if (x == XFloat(1.0)) return XFloat(0.0);
    if (x == XFloat(-1.0)) return consts::pi();
    XFloat s = sqrt((XFloat(1.0) - x) * (XFloat(1.0) + x));
    return atan2(s, x);
}

XFloat asin(const XFloat& x0) {
    XFloat x = clamp_unit(x0, "asin");
    if (x == XFloat(1.0)) return consts::half_pi();
    if (x == XFloat(-1.0)) return -consts::half_pi();
    XFloat c = sqrt((XFloat(1.0) - x) * (XFloat(1.0) + x));
    return atan2(x, c);
}

// ---------------------------------------------------------------- strings

std::string XFloat::to_string(int digits) const {
    if (std::isnan(hi)) return "nan";
    if (std::isinf(hi)) return hi > 0 ? "inf" : "-inf";
    if (hi == 0.0) return "0";
    bool neg = is_negative();
    XFloat v = neg ? -*this : *this;

    int e10 = int(std::floor(std::log10(std::fabs(v.hi))));
    v = v * pow10(-e10);
    while (v.hi >= 10.0) {
        v = v / XFloat(10.0);
        ++e10;
    }
    while (v.hi < 1.0) {
        v = v * XFloat(10.0);
        --e10;
    }

    std::vector<int> d(digits + 1, 0);
    for (int i = 0; i <= digits; ++i) {
        int di = int(v.hi);
        if (di < 0) di = 0;
        if (di > 9) di = 9;
        d[i] = di;
        v = (v - XFloat(double(di))) * XFloat(10.0);
    }
    // round on the guard digit, propagate carries
    if (d[digits] >= 5) {
        int i = digits - 1;
        while (i >= 0 && ++d[i] == 10) {
            d[i] = 0;
            --i;
        }
        if (i < 0) {
            d.insert(d.begin(), 1);
            ++e10;
        }
    }

    std::string out;
    if (neg) out += '-';
    out += char('0' + d[0]);
    out += '.';
    for (int i = 1; i < digits; ++i) out += char('0' + d[i]);
    char ebuf[16];
    std::snprintf(ebuf, sizeof ebuf, "e%+03d", e10);
    out += ebuf;
    return out;
}

XFloat XFloat::from_string(const std::string& str) {
    const char* p = str.c_str();
    while (std::isspace((unsigned char)*p)) ++p;
    bool neg = false;
    if (*p == '+' || *p == '-') neg = (*p++ == '-');
    XFloat v(0.0);
    int frac_digits = 0, ndig = 0;
    bool seen_point = false, any = false;
    for (; *p; ++p) {
        if (std::isdigit((unsigned char)*p)) {
            any = true;
            if (ndig < 40) {
                v = v * XFloat(10.0) + XFloat(double(*p - '0'));
                ++ndig;
                if (seen_point) ++frac_digits;
            } else if (!seen_point) {
                --frac_digits;  // excess integer digit: shifts the exponent up
            }
        } else if (*p == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any) throw DomainError("XFloat: unparsable number: " + str);
    int e10 = 0;
    if (*p == 'e' || *p == 'E') {
        char* end = nullptr;
        e10 = int(std::strtol(p + 1, &end, 10));
        p = end;
    }
    e10 -= frac_digits;
    // apply the exponent in two halves: pow10 of a large magnitude would
    // overflow even when the final value is representable
    if (e10 != 0) {
        int h = e10 / 2;
        v = (v * pow10(h)) * pow10(e10 - h);
    }
    return neg ? -v : v;
}

}  // namespace qsixj
