#include "qsixj/airy.hpp"

#include <cmath>

namespace qsixj {

namespace {

// Ai(0) and -Ai'(0); Bi(0) = sqrt(3) Ai(0), Bi'(0) = -sqrt(3) Ai'(0)
XFloat airy_c1() { return XFloat(3.55028053887817219e-01, 2.05233632436211994e-17); }
XFloat airy_c2() { return XFloat(2.58819403792806824e-01, -2.52224311161083207e-17); }

XFloat sqrt3() { return sqrt(XFloat(3.0)); }
XFloat sqrt_pi() { return sqrt(consts::pi()); }

}  // namespace

AiryPair airy_series(const XFloat& x) {
    // Ai = c1 f - c2 g, Bi = sqrt(3)(c1 f + c2 g) where f, g solve y'' = x y
    // with f = 1 + x^3/6 + ..., g = x + x^4/12 + ...
    XFloat x3 = x * x * x;
    XFloat f(1.0), g = x, fp(0.0), gp(1.0);
    XFloat tf(1.0), tg = x;                       // a_k x^{3k}, b_k x^{3k+1}
    XFloat td = ldexp(x * x, -1), te(1.0);        // f' and g' term streams
    fp += td;
    for (int k = 1; k < 400; ++k) {
        double k3 = 3.0 * k;
        tf = tf * x3 / XFloat(k3 * (k3 - 1));
        tg = tg * x3 / XFloat(k3 * (k3 + 1));
        te = te * x3 / XFloat(k3 * (k3 - 2));
        if (k >= 2) td = td * x3 / XFloat((k3 - 1) * (k3 - 3));
        f += tf;
        g += tg;
        gp += te;
        if (k >= 2) fp += td;
        double scale = std::fabs(f.to_double()) + std::fabs(g.to_double()) + 1.0;
        if (std::fabs(tf.to_double()) < 1e-45 * scale &&
            std::fabs(tg.to_double()) < 1e-45 * scale)
            break;
    }
    XFloat c1 = airy_c1(), c2 = airy_c2(), s3 = sqrt3();
    AiryPair out;
    out.ai = c1 * f - c2 * g;
    out.dai = c1 * fp - c2 * gp;
    out.bi = s3 * (c1 * f + c2 * g);
    out.dbi = s3 * (c1 * fp + c2 * gp);
    return out;
}

namespace {

// Sums of the Poincare coefficient series u_k / v_k against powers of 1/zeta.
// alt=true alternates signs; even/odd pick the k-parity subsets used on the
// oscillatory side. Truncated at the smallest term.
struct USums {
    XFloat u_alt, u_pos, v_alt, v_pos;  // sum (-+1)^k u_k z^-k etc.
    XFloat u_even, u_odd, v_even, v_odd;
    // u_even = sum (-1)^j u_{2j} z^{-2j}, u_odd = sum (-1)^j u_{2j+1} z^{-2j-1}
};

USums u_sums(const XFloat& zeta) {
    USums s{XFloat(1.0), XFloat(1.0), XFloat(1.0), XFloat(1.0),
            XFloat(1.0), XFloat(0.0), XFloat(1.0), XFloat(0.0)};
    XFloat u(1.0), zk(1.0);
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        double a = 6.0 * k;
        u = u * XFloat((a - 5) * (a - 3) * (a - 1)) / XFloat(216.0 * k * (2 * k - 1));
        zk = zk / zeta;
        XFloat term = u * zk;
        double mag = std::fabs(term.to_double());
        if (mag >= prev || mag < 1e-40) break;  // past the optimal truncation
        prev = mag;
        XFloat v = -term * XFloat(a + 1) / XFloat(a - 1);
        bool odd = (k % 2) != 0;
        s.u_pos += term;
        s.v_pos += v;
        s.u_alt += odd ? -term : term;
        s.v_alt += odd ? -v : v;
        // (-1)^j with k = 2j or k = 2j+1
        bool flip = (k / 2 % 2) != 0;
        if (odd) {
            s.u_odd += flip ? -term : term;
            s.v_odd += flip ? -v : v;
        } else {
            s.u_even += flip ? -term : term;
            s.v_even += flip ? -v : v;
        }
    }
    return s;
}

}  // namespace

AiryPair airy_asymptotic(const XFloat& x) {
    AiryPair out;
    XFloat sp = sqrt_pi();
    if (!x.is_negative()) {
        XFloat x14 = sqrt(sqrt(x));
        XFloat zeta = XFloat(2.0) / XFloat(3.0) * x * sqrt(x);
        USums s = u_sums(zeta);
        XFloat em = exp(-zeta), ep = exp(zeta);
        out.ai = em * s.u_alt / (ldexp(sp, 1) * x14);
        out.dai = -x14 * em * s.v_alt / ldexp(sp, 1);
        out.bi = ep * s.u_pos / (sp * x14);
        out.dbi = x14 * ep * s.v_pos / sp;
        return out;
    }
    XFloat t = -x;
    XFloat t14 = sqrt(sqrt(t));
    XFloat zeta = XFloat(2.0) / XFloat(3.0) * t * sqrt(t);
    USums s = u_sums(zeta);
    XFloat c, sn;
    sincos(zeta - consts::quarter_pi(), sn, c);
    out.ai = (c * s.u_even + sn * s.u_odd) / (sp * t14);
    out.bi = (-sn * s.u_even + c * s.u_odd) / (sp * t14);
    out.dai = t14 * (sn * s.v_even - c * s.v_odd) / sp;
    out.dbi = t14 * (c * s.v_even + sn * s.v_odd) / sp;
    return out;
}

AiryPair airy(const XFloat& x) {
    // asymmetric crossover: the Maclaurin series is rounding-limited out to
    // x ~ -12 (mild oscillatory cancellation) but loses digits much faster on
    // the positive side, where Ai decays under the exponentially growing terms
    double xd = x.to_double();
    if (xd >= -12.0 && xd <= 8.0) return airy_series(x);
    return airy_asymptotic(x);
}

}  // namespace qsixj
