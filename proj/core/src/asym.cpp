#include "qsixj/asym.hpp"

#include <algorithm>
#include <cmath>

namespace qsixj {

namespace {

// x^(num/den) for positive x
XFloat fpow(const XFloat& x, int num, int den) {
    return exp(XFloat(double(num)) / XFloat(double(den)) * log(x));
}

XFloat sin_or_sinh(Curvature c, const XFloat& x) {
    return c == Curvature::Spherical ? sin(x) : sinh(x);
}

// cos/sin of (pi/2) * m without range reduction
void half_pi_trig(long long m, int& c, int& s) {
    switch (((m % 4) + 4) % 4) {
        case 0: c = 1; s = 0; break;
        case 1: c = 0; s = 1; break;
        case 2: c = -1; s = 0; break;
        default: c = 0; s = -1; break;
    }
}

int parity_sign(long long twice_sum, int k) {
    long long h = twice_sum * k;
    if (h % 2 != 0)
        throw DomainError("asym: sign exponent is not an integer");
    return (h / 2) % 2 != 0 ? -1 : 1;
}

void require_faces(const EdgeLengths& L) {
    for (int a = 1; a <= 4; ++a)
        if (face_det(L, a).to_double() <= 1e-12)
            throw DomainError("asym: degenerate face");
}

}  // namespace

// ------------------------------------------------------------ ScaledFamily

XFloat ScaledFamily::r_at() const {
    return XFloat(double(k)) * (base_r - XFloat(2.0)) + XFloat(2.0);
}

SixLabels ScaledFamily::labels() const {
    std::array<Label, 6> a = base.as_array();
    return SixLabels{Label(a[0].twice * k), Label(a[1].twice * k),
                     Label(a[2].twice * k), Label(a[3].twice * k),
                     Label(a[4].twice * k), Label(a[5].twice * k)};
}

QContext ScaledFamily::context() const { return QContext(regime, r_at()); }

Curvature ScaledFamily::curvature() const {
    switch (regime) {
        case Regime::RootOfUnity: return Curvature::Spherical;
        case Regime::PositiveReal: return Curvature::Hyperbolic;
        default: return Curvature::Euclidean;
    }
}

EdgeLengths ScaledFamily::lengths() const {
    EdgeLengths out;
    out.curvature = curvature();
    XFloat rk = r_at();
    std::array<Label, 6> a = base.as_array();
    for (int e = 0; e < 6; ++e)
        out.l[size_t(e)] =
            consts::pi() * XFloat(double(k) * a[size_t(e)].twice + 1.0) / rk;
    return out;
}

EdgeLengths ScaledFamily::limit_lengths() const {
    EdgeLengths out;
    out.curvature = curvature();
    std::array<Label, 6> a = base.as_array();
    for (int e = 0; e < 6; ++e)
        out.l[size_t(e)] =
            consts::pi() * XFloat(double(a[size_t(e)].twice)) / (base_r - XFloat(2.0));
    return out;
}

XFloat ScaledFamily::exact() const {
    QContext ctx = context();
    return sixj(ctx, labels());
}

SixLabels apply_vertex_perm(const SixLabels& s, const std::array<int, 4>& perm) {
    SixLabels out;
    for (auto [a, b] : kEdgeVerts)
        out.at(a, b) = s.at(perm[size_t(a - 1)], perm[size_t(b - 1)]);
    return out;
}

std::array<int, 6> theta_limit_bins(const EdgeLengths& L, double guard) {
    std::array<XFloat, 6> ci = interior_cosines(L);
    std::array<int, 6> bins{};
    for (int e = 0; e < 6; ++e) {
        // exterior angle above pi/2 <=> interior cosine positive
        double c = ci[size_t(e)].to_double();
        if (std::fabs(c) <= guard)
            throw DomainError("asym: dihedral angle at pi/2, binning ambiguous");
        bins[size_t(e)] = c > 0.0 ? 1 : 0;
    }
    return bins;
}

// ------------------------------------------------------------------ case A

AsymEval asym_envelope(const EdgeLengths& L, const XFloat& r_eff) {
    if (classify(L) != TetClass::A_NonDegenerate)
        throw DomainError("asym_nondegenerate: geometry is not class A");
    XFloat det = volume_det(L);
    XFloat amp = ldexp(consts::pi(), 1) / (fpow(r_eff, 3, 2) * sqrt(sqrt(det)));
    DihedralAngles th = dihedral(L);
    XFloat slt(0.0);
    for (int e = 0; e < 6; ++e) slt += th.exterior[size_t(e)] * L.l[size_t(e)];
    XFloat vol2 = ldexp(volume(L), 1);
    // exterior angles; the volume term carries the curvature sign
    XFloat phi = r_eff / consts::two_pi() *
                 (L.curvature == Curvature::Spherical ? slt + vol2 : slt - vol2);
    AsymEval out;
    out.amplitude = amp;
    out.phase = phi;
    out.value = amp * cos(phi + consts::quarter_pi());
    out.tet_class = TetClass::A_NonDegenerate;
    return out;
}

AsymEval asym_nondegenerate(const ScaledFamily& fam) {
    return asym_envelope(fam.lengths(), fam.r_at());
}

// ------------------------------------------------------------------ case B

XFloat tangent_amplitude(const EdgeLengths& L, const XFloat& r_eff) {
    require_faces(L);
    std::array<XFloat, 4> A = face_areas(L);
    XFloat prod = A[0] * A[1] * A[2] * A[3];
    // r^{-4/3} 2^{2/3} 3^{-2/3} pi^{4/3} / Gamma(2/3) / (A1 A2 A3 A4)^{1/6}
    // (the constant is fixed by the Z -> 0 limit of the uniform formula,
    // which in turn is pinned down by the exact engine)
    return fpow(r_eff, -4, 3) * fpow(XFloat(2.0), 2, 3) * fpow(XFloat(3.0), -2, 3) *
           fpow(consts::pi(), 4, 3) / consts::gamma23() / fpow(prod, 1, 6);
}

AsymEval asym_tangent(const ScaledFamily& fam) {
    EdgeLengths L = fam.lengths();
    TetClass cls = classify(L);
    // the tangent boundary is a measure-zero set for scaled families; accept
    // members jittering about it from either side as long as every face is
    // non-degenerate
    if (cls != TetClass::A_NonDegenerate && cls != TetClass::B_Tangent &&
        cls != TetClass::Forbidden)
        throw DomainError("asym_tangent: geometry not near the tangent boundary");
    require_faces(L);
    std::array<int, 6> bins = theta_limit_bins(L);
    std::array<Label, 6> n = fam.base.as_array();
    long long m = 0;  // sum of k n_ab over the theta = pi edges
    for (int e = 0; e < 6; ++e)
        if (bins[size_t(e)]) m += (long long)n[size_t(e)].twice * fam.k;
    int c, s;
    half_pi_trig(m, c, s);
    if (c == 0) throw DomainError("asym_tangent: sign is not +-1");
    AsymEval out;
    out.amplitude = tangent_amplitude(L, fam.r_at());
    out.value = c < 0 ? -out.amplitude : out.amplitude;
    out.phase = c < 0 ? consts::pi() : XFloat(0.0);
    out.tet_class = TetClass::B_Tangent;
    return out;
}

// ------------------------------------------------------------------ uniform

AsymEval asym_uniform(const ScaledFamily& fam, int /*varying_edge*/) {
    EdgeLengths L = fam.lengths();
    TetClass cls = classify(L);
    if (cls != TetClass::A_NonDegenerate && cls != TetClass::B_Tangent)
        throw DomainError("asym_uniform: geometry is not class A or B");
    require_faces(L);
    XFloat r_eff = fam.r_at();
    DihedralAngles th = dihedral_unchecked(L);
    std::array<int, 6> bins = theta_limit_bins(L);
    std::array<Label, 6> n = fam.base.as_array();

    // phi0 = (pi/2) M exactly, M = sum over the theta0 = pi edges of (k n + 1)
    long long M = 0;
    XFloat resid(0.0);  // sum (theta - theta0) l, accumulated in full precision
    for (int e = 0; e < 6; ++e) {
        XFloat t = th.exterior[size_t(e)];
        if (bins[size_t(e)]) {
            M += (long long)n[size_t(e)].twice * fam.k + 1;
            t -= consts::pi();
        }
        resid += t * L.l[size_t(e)];
    }
    int c0, s0;
    half_pi_trig(M, c0, s0);

    XFloat vol2 = ldexp(volume(L), 1);
    XFloat delta = r_eff / consts::two_pi() *
                   (L.curvature == Curvature::Spherical ? resid + vol2 : resid - vol2);

    XFloat det = volume_det(L);
    XFloat Z(0.0);
    double ad = std::fabs(delta.to_double());
    if (ad > 0.0) Z = fpow(XFloat(1.5) * abs(delta), 2, 3);

    XFloat ratio;  // Z^{1/4} / det^{1/4}
    if (det.to_double() > 1e-18 && ad > 1e-12) {
        ratio = sqrt(sqrt(Z / det));
    } else {
        // turning-point limit of the ratio: (r / 4 pi A1 A2 A3 A4)^{1/6}
        std::array<XFloat, 4> A = face_areas(L);
        XFloat prod = A[0] * A[1] * A[2] * A[3];
        ratio = fpow(r_eff / (ldexp(consts::pi(), 2) * prod), 1, 6);
    }

    AiryPair ai = airy(-Z);
    XFloat combo = delta.to_double() <= 0.0
                       ? XFloat(double(c0)) * ai.ai - XFloat(double(s0)) * ai.bi
                       : XFloat(double(c0)) * ai.bi - XFloat(double(s0)) * ai.ai;
    AsymEval out;
    out.value = ldexp(consts::pi() * sqrt(consts::pi()), 1) / fpow(r_eff, 3, 2) *
                ratio * combo;
    out.amplitude = det.to_double() > 1e-18
                        ? ldexp(consts::pi(), 1) / (fpow(r_eff, 3, 2) * sqrt(sqrt(det)))
                        : abs(out.value);
    out.phase = consts::half_pi() * XFloat(double(((M % 4) + 4) % 4)) + delta;
    out.tet_class = cls;
    return out;
}

// --------------------------------------------------------- degenerate cases

namespace {

// Vertex order a,b,c,d along a geodesic: additive doubled labels
// n_ac = n_ab + n_bc etc., with the two diagonals l_ac, l_bd non-vanishing
// (the closed form divides by their sines).  Exact integer test.
bool colinear_order(const SixLabels& s, std::array<int, 4>& order) {
    int p[4] = {1, 2, 3, 4};
    do {
        if (p[0] > p[3]) continue;  // reversal gives the same geodesic
        int ab = s.at(p[0], p[1]).twice, bc = s.at(p[1], p[2]).twice,
            cd = s.at(p[2], p[3]).twice;
        if (s.at(p[0], p[2]).twice != ab + bc) continue;
        if (s.at(p[1], p[3]).twice != bc + cd) continue;
        if (s.at(p[0], p[3]).twice != ab + bc + cd) continue;
        if (ab + bc == 0 || bc + cd == 0) continue;
        order = {p[0], p[1], p[2], p[3]};
        return true;
    } while (std::next_permutation(p, p + 4));
    return false;
}

}  // namespace

AsymEval asym_degenerate(const ScaledFamily& fam) {
    EdgeLengths Linf = fam.limit_lengths();
    ClassifyDetail detail = classify_detail(Linf);
    EdgeLengths Lk = fam.lengths();
    XFloat r_eff = fam.r_at();
    Curvature cur = fam.curvature();
    AsymEval out;
    out.tet_class = detail.cls;

    int sign = 1;
    switch (detail.cls) {
        case TetClass::D_OneEdgeZero: {
            auto [a, b] = kEdgeVerts[size_t(detail.zero_edge)];
            int c = -1, d = -1;
            for (int v = 1; v <= 4; ++v)
                if (v != a && v != b) (c < 0 ? c : d) = v;
            long long face = fam.base.at(b, c).twice + fam.base.at(c, d).twice +
                             fam.base.at(b, d).twice;
            sign = parity_sign(face, fam.k);
            out.amplitude = consts::pi() / r_eff /
                            sqrt(sin_or_sinh(cur, Lk.at(a, c)) *
                                 sin_or_sinh(cur, Lk.at(b, d)));
            break;
        }
        case TetClass::E_Colinear:
        case TetClass::F_CaseF: {
            // the geodesic closed form applies whenever an additive vertex
            // order with non-vanishing diagonals exists, including class F
            // geometries like a merged pair plus an opposite edge; otherwise
            // the class-F square-root law takes over
            std::array<int, 4> ord;
            if (colinear_order(fam.base, ord)) {
                auto [a, b, c, d] = ord;
                sign = parity_sign(2LL * fam.base.at(a, d).twice, fam.k);
                out.amplitude = consts::pi() / r_eff /
                                sqrt(sin_or_sinh(cur, Lk.at(a, c)) *
                                     sin_or_sinh(cur, Lk.at(b, d)));
                break;
            }
            if (detail.cls == TetClass::E_Colinear)
                throw DomainError("asym_degenerate: colinear labels inconsistent");
            int e = -1;  // an edge with sin(l) != 0 in the limit
            for (int i = 0; i < 6 && e < 0; ++i) {
                double li = Linf.l[size_t(i)].to_double();
                if (li > 1e-12 &&
                    (cur == Curvature::Hyperbolic ||
                     consts::pi().to_double() - li > 1e-12))
                    e = i;
            }
            if (e < 0) throw DomainError("asym_degenerate: no interior edge");
            auto [a, b] = kEdgeVerts[size_t(e)];
            sign = parity_sign(2LL * fam.base.at(a, b).twice, fam.k);
            out.amplitude = sqrt(consts::pi() / r_eff) /
                            sqrt(sin_or_sinh(cur, Lk.l[size_t(e)]));
            break;
        }
        case TetClass::G_AllZeroOrPi:
            out.amplitude = XFloat(1.0);
            break;
        default:
            throw DomainError("asym_degenerate: limiting class is not D/E/F/G");
    }
    out.value = sign < 0 ? -out.amplitude : out.amplitude;
    out.phase = sign < 0 ? consts::pi() : XFloat(0.0);
    return out;
}

// ------------------------------------------------------- one face degenerate

namespace {

// I(x, y, z) = H^{1/2} sin((x+y+z)/2) / sin((y+z-x)/2) with H the product of
// the four half-perimeter sines of the triangle (x, y, z)
XFloat i3(const XFloat& x, const XFloat& y, const XFloat& z) {
    XFloat s = ldexp(x + y + z, -1);
    XFloat H = sin(s) * sin(s - x) * sin(s - y) * sin(s - z);
    return sqrt(H) * sin(s) / sin(s - x);
}

}  // namespace

AsymEval asym_one_face(const ScaledFamily& fam) {
    if (fam.regime != Regime::RootOfUnity)
        throw DomainError("asym_one_face: spherical families only");
    EdgeLengths Linf = fam.limit_lengths();
    if (classify(Linf) != TetClass::C_OneFaceDegenerate)
        throw DomainError("asym_one_face: limiting class is not C");
    // locate the degenerate face (the one omitting vertex a0)
    int a0 = 1;
    double best = face_det(Linf, 1).to_double();
    for (int a = 2; a <= 4; ++a) {
        double f = std::fabs(face_det(Linf, a).to_double());
        if (f < best) { best = f; a0 = a; }
    }
    std::array<int, 3> fv;  // the face vertices
    int w = 0;
    for (int v = 1; v <= 4; ++v)
        if (v != a0) fv[size_t(w++)] = v;
    // additive branch: one label is the sum of the other two
    int u = -1, vmid = -1, vfar = -1;
    long long perim = 0;
    for (int i = 0; i < 3; ++i) {
        int p = fv[size_t(i)], q = fv[size_t((i + 1) % 3)], s = fv[size_t((i + 2) % 3)];
        perim = fam.base.at(p, q).twice + fam.base.at(q, s).twice +
                fam.base.at(p, s).twice;
        if (fam.base.at(p, s).twice ==
            fam.base.at(p, q).twice + fam.base.at(q, s).twice) {
            u = p; vmid = q; vfar = s;
        }
    }
    if (u < 0) {
        // the other degeneration, perimeter = 2 pi (sum n = 2 (r - 2))
        XFloat gap = XFloat(double(perim)) - ldexp(fam.base_r - XFloat(2.0), 1);
        if (std::fabs(gap.to_double()) < 1e-12)
            throw DomainError("asym_one_face: perimeter branch unsupported");
        throw DomainError("asym_one_face: no additive label relation");
    }
    ScaledFamily pf = fam;
    pf.base = apply_vertex_perm(fam.base, {u, vmid, vfar, a0});
    EdgeLengths L = pf.lengths();
    const XFloat &l12 = L.l[0], &l23 = L.l[1], &l34 = L.l[3], &l14 = L.l[4],
                 &l24 = L.l[5];
    XFloat l13 = L.l[2];
    XFloat num = sqrt(sin(l12) * sin(l23)) * i3(l13, l34, l14);
    XFloat den = fpow(sin(l12 + l23), 3, 2) * i3(l12, l24, l14) * i3(l23, l34, l24);
    long long face134 = pf.base.j13.twice + pf.base.j34.twice + pf.base.j14.twice;
    int sign = parity_sign(face134, fam.k);
    AsymEval out;
    out.amplitude = fpow(XFloat(2.0), -1, 4) * consts::pi() * fpow(fam.r_at(), -5, 4) *
                    sqrt(num / den);
    out.value = sign < 0 ? -out.amplitude : out.amplitude;
    out.phase = sign < 0 ? consts::pi() : XFloat(0.0);
    out.tet_class = TetClass::C_OneFaceDegenerate;
    out.conjectural = true;
    return out;
}

// ---------------------------------------------------------------- forbidden

ForbiddenReport forbidden_probe(const ScaledFamily& fam,
                                const std::vector<int>& k_list) {
    if (classify(fam.limit_lengths()) != TetClass::Forbidden)
        throw DomainError("forbidden_probe: limiting geometry is not forbidden");
    ForbiddenReport rep;
    for (int k : k_list) {
        ScaledFamily member = fam;
        member.k = k;
        XFloat s = abs(member.exact());
        ForbiddenRow row;
        row.k = k;
        row.abs_value = s;
        row.exact_zero = (s.to_double() == 0.0);
        row.log_over_r = row.exact_zero ? XFloat(0.0) : log(s) / member.r_at();
        rep.rows.push_back(row);
    }
    rep.burn_in = int(rep.rows.size()) / 3;
    // exponential decay: past the burn-in, |s| shrinks strictly and the
    // per-level rate log|s|/r stays negative (it need not itself decrease:
    // the half-form shift can place small-k members deeper in the forbidden
    // region, so the rate approaches its limit from below)
    rep.decaying = true;
    double prev_abs = 0.0;
    bool have_prev = false;
    for (size_t i = size_t(rep.burn_in); i < rep.rows.size(); ++i) {
        if (rep.rows[i].exact_zero) continue;
        double v = rep.rows[i].abs_value.to_double();
        if (rep.rows[i].log_over_r.to_double() >= 0.0) rep.decaying = false;
        if (have_prev && v >= prev_abs) rep.decaying = false;
        prev_abs = v;
        have_prev = true;
    }
    return rep;
}

}  // namespace qsixj
