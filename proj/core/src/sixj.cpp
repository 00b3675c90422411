#include "qsixj/sixj.hpp"

#include <algorithm>
#include <cmath>

namespace qsixj {

Label SixLabels::at(int a, int b) const {
    return const_cast<SixLabels*>(this)->at(a, b);
}

Label& SixLabels::at(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 1 && b == 2) return j12;
    if (a == 2 && b == 3) return j23;
    if (a == 1 && b == 3) return j13;
    if (a == 3 && b == 4) return j34;
    if (a == 1 && b == 4) return j14;
    if (a == 2 && b == 4) return j24;
    throw DomainError("SixLabels::at: bad vertex pair");
}

bool faces_admissible(const QContext& ctx, const SixLabels& s) {
    return admissible(ctx, s.j12, s.j23, s.j13) &&
           admissible(ctx, s.j13, s.j34, s.j14) &&
           admissible(ctx, s.j23, s.j34, s.j24) &&
           admissible(ctx, s.j12, s.j24, s.j14);
}

namespace {

struct RacahBounds {
    long long t1, t2, t3, t4;  // face sums (lower bounds for z)
    long long q1, q2, q3;      // opposite-pair sums (upper bounds)
    long long zlo, zhi;
};

RacahBounds racah_bounds(const QContext& ctx, const SixLabels& s) {
    const int n12 = s.j12.twice, n23 = s.j23.twice, n13 = s.j13.twice;
    const int n34 = s.j34.twice, n14 = s.j14.twice, n24 = s.j24.twice;
    RacahBounds b;
    b.t1 = (n12 + n23 + n13) / 2;
    b.t2 = (n13 + n34 + n14) / 2;
    b.t3 = (n23 + n34 + n24) / 2;
    b.t4 = (n12 + n24 + n14) / 2;
    b.q1 = (n12 + n23 + n34 + n14) / 2;
    b.q2 = (n12 + n13 + n34 + n24) / 2;
    b.q3 = (n23 + n13 + n14 + n24) / 2;
    b.zlo = std::max({b.t1, b.t2, b.t3, b.t4});
    b.zhi = std::min({b.q1, b.q2, b.q3});
    if (ctx.regime() == Regime::RootOfUnity && ctx.r_integral())
        b.zhi = std::min(b.zhi, ctx.r_int() - 2);  // need z+1 <= r-1
    return b;
}

XFloat sixj_linear(const QContext& ctx, const SixLabels& s) {
    RacahBounds b = racah_bounds(ctx, s);
    XFloat sum(0.0);
    for (long long z = b.zlo; z <= b.zhi; ++z) {
        XFloat term = ctx.qfact(z + 1);
        term /= ctx.qfact(z - b.t1) * ctx.qfact(z - b.t2);
        term /= ctx.qfact(z - b.t3) * ctx.qfact(z - b.t4);
        term /= ctx.qfact(b.q1 - z) * ctx.qfact(b.q2 - z) * ctx.qfact(b.q3 - z);
        sum += (z % 2 != 0) ? -term : term;
    }
    return qdelta(ctx, s.j12, s.j23, s.j13) * qdelta(ctx, s.j13, s.j34, s.j14) *
           qdelta(ctx, s.j23, s.j34, s.j24) * qdelta(ctx, s.j12, s.j24, s.j14) *
           sum;
}

// PositiveReal/Classical: factorial magnitudes overflow, so carry term
// logarithms and factor out the largest one.
XFloat sixj_log(const QContext& ctx, const SixLabels& s) {
    RacahBounds b = racah_bounds(ctx, s);
    std::vector<XFloat> lt;
    lt.reserve(size_t(b.zhi - b.zlo + 1));
    for (long long z = b.zlo; z <= b.zhi; ++z) {
        XFloat l = ctx.log_qfact(z + 1);
        l -= ctx.log_qfact(z - b.t1) + ctx.log_qfact(z - b.t2) +
             ctx.log_qfact(z - b.t3) + ctx.log_qfact(z - b.t4);
        l -= ctx.log_qfact(b.q1 - z) + ctx.log_qfact(b.q2 - z) +
             ctx.log_qfact(b.q3 - z);
        lt.push_back(l);
    }
    XFloat lmax = lt[0];
    for (const XFloat& l : lt)
        if (l > lmax) lmax = l;
    XFloat sum(0.0);
    for (size_t i = 0; i < lt.size(); ++i) {
        long long z = b.zlo + (long long)i;
        XFloat t = exp(lt[i] - lmax);
        sum += (z % 2 != 0) ? -t : t;
    }
    XFloat ldelta = log_qdelta(ctx, s.j12, s.j23, s.j13) +
                    log_qdelta(ctx, s.j13, s.j34, s.j14) +
                    log_qdelta(ctx, s.j23, s.j34, s.j24) +
                    log_qdelta(ctx, s.j12, s.j24, s.j14);
    return exp(ldelta + lmax) * sum;
}

}  // namespace

XFloat sixj(const QContext& ctx, const SixLabels& s) {
    if (!faces_admissible(ctx, s)) return XFloat(0.0);
    if (ctx.regime() == Regime::RootOfUnity) {
        // the linear-domain sum overflows once factorials reach ~(r/pi)^n;
        // switch to term logarithms when every factorial argument stays
        // below r (all factors then positive, so the logs are defined)
        RacahBounds b = racah_bounds(ctx, s);
        double rd = ctx.r().to_double();
        double log_qmax = std::log(std::max(2.72, rd / 3.14));
        bool fits = double(b.zhi + 1) * log_qmax < 600.0;
        if (fits || double(b.zhi) + 1.0 >= rd) return sixj_linear(ctx, s);
        return sixj_log(ctx, s);
    }
    return sixj_log(ctx, s);
}

std::vector<SixLabels> symmetry_orbit(const SixLabels& s) {
    int perm[4] = {1, 2, 3, 4};
    std::vector<SixLabels> orbit;
    do {
        SixLabels t;
        for (int a = 1; a <= 4; ++a)
            for (int b = a + 1; b <= 4; ++b) t.at(a, b) = s.at(perm[a - 1], perm[b - 1]);
        orbit.push_back(t);
    } while (std::next_permutation(perm, perm + 4));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

XFloat pentagon_residual(const QContext& ctx, Label j12, Label j13, Label j14,
                         Label j23, Label j24, Label j25, Label j34, Label j35,
                         Label j45) {
    XFloat lhs = sixj(ctx, SixLabels{j23, j34, j24, j14, j12, j13}) *
                 sixj(ctx, SixLabels{j23, j34, j24, j45, j25, j35});
    XFloat rhs(0.0);
    int base = j12.twice + j13.twice + j14.twice + j23.twice + j24.twice +
               j25.twice + j34.twice + j35.twice + j45.twice;
    int hi = std::min(j14.twice + j45.twice, j13.twice + j35.twice);
    for (int n15 = 0; n15 <= hi; ++n15) {
        if ((base + n15) % 2 != 0) continue;  // z must be an integer
        Label j15(n15);
        XFloat t = ctx.qint(n15 + 1) *
                   sixj(ctx, SixLabels{j13, j34, j14, j45, j15, j35}) *
                   sixj(ctx, SixLabels{j12, j24, j14, j45, j15, j25}) *
                   sixj(ctx, SixLabels{j12, j23, j13, j35, j15, j25});
        long long z = (base + n15) / 2;
        rhs += (z % 2 != 0) ? -t : t;
    }
    return abs(lhs - rhs);
}

// ------------------------------------------------------- Schulten-Gordon

namespace {

// [x/2 + shift] with x in doubled units; x must be even.
XFloat qj(const QContext& ctx, int twice_sum, int shift) {
    if (twice_sum % 2 != 0)
        throw DomainError("sg_coefficients: face parity violated");
    return ctx.qint(twice_sum / 2 + shift);
}

// Q radicand at j23 = c (doubled units), sign separated out.
void q_radicand(const QContext& ctx, const SixLabels& s, int c, XFloat& q,
                int& sign) {
    const int n12 = s.j12.twice, n13 = s.j13.twice;
    const int n34 = s.j34.twice, n24 = s.j24.twice;
    // the eight factors pair into q-deformed differences of squares:
    // [j23^2 - (j12-j13)^2], [(j12+j13+1)^2 - j23^2] and the 24/34 analogs
    XFloat rad = qj(ctx, n12 + c - n13, 0) * qj(ctx, n12 + n13 - c, 1) *
                 qj(ctx, n24 + n34 - c, 1) * qj(ctx, n24 + c - n34, 0) *
                 qj(ctx, n12 + c + n13, 1) * qj(ctx, n13 + c - n12, 0) *
                 qj(ctx, n24 + n34 + c, 1) * qj(ctx, n34 + c - n24, 0);
    sign = rad.is_negative() ? -1 : 1;
    q = sqrt(abs(rad));
}

}  // namespace

SGCoefficients sg_coefficients(const QContext& ctx, const SixLabels& s) {
    const int n12 = s.j12.twice, n23 = s.j23.twice, n13 = s.j13.twice;
    const int n34 = s.j34.twice, n14 = s.j14.twice, n24 = s.j24.twice;
    XFloat t1 = ctx.qint(n23) * ctx.qint(n23 + 1) * ctx.qint(n23 + 2) *
                qj(ctx, n14 + n13 + n34, 1) * qj(ctx, n13 + n34 - n14, 0);
    XFloat t2 = ctx.qint(n23) * qj(ctx, n12 + n13 - n23, 0) *
                qj(ctx, n12 + n23 - n13, 1) * qj(ctx, n24 + n34 - n23, 0) *
                qj(ctx, n24 + n23 - n34, 1);
    XFloat t3 = ctx.qint(n23 + 2) * qj(ctx, n12 + n23 + n13, 1) *
                qj(ctx, n13 + n23 - n12, 0) * qj(ctx, n24 + n34 + n23, 1) *
                qj(ctx, n34 + n23 - n24, 0);
    SGCoefficients out;
    out.P = t1 - t2 - t3;
    q_radicand(ctx, s, n23 + 2, out.Qplus, out.sign_qplus);
    q_radicand(ctx, s, n23, out.Qminus, out.sign_qminus);
    return out;
}

std::vector<XFloat> sg_propagate(const QContext& ctx, const XFloat& seed0,
                                 const XFloat& seed1, const SixLabels& s,
                                 int steps) {
    std::vector<XFloat> out;
    out.reserve(size_t(std::max(steps, 0)));
    XFloat prev = seed0, cur = seed1;
    for (int i = 0; i < steps; ++i) {
        SixLabels c = s;
        c.j23 = Label(s.j23.twice + 2 * (i + 1));  // center of the relation
        SGCoefficients sg = sg_coefficients(ctx, c);
        if (sg.sign_qplus < 0 || sg.sign_qminus < 0)
            throw BreakdownError("sg_propagate: Q radicand changed sign");
        XFloat lead = ctx.qint(c.j23.twice) * sg.Qplus;
        if (lead.is_zero())
            throw BreakdownError("sg_propagate: vanishing leading coefficient");
        XFloat next =
            -(sg.P * cur + ctx.qint(c.j23.twice + 2) * sg.Qminus * prev) / lead;
        out.push_back(next);
        prev = cur;
        cur = next;
    }
    return out;
}

}  // namespace qsixj
