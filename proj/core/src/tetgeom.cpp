#include "qsixj/tetgeom.hpp"

#include <algorithm>
#include <cmath>

namespace qsixj {

namespace {
constexpr double kDetTol = 1e-20;   // x scale^dim: counts as zero
constexpr double kLenTol = 1e-18;   // length comparisons
constexpr double kTriSlack = 1e-18; // slack on triangle inequalities
}  // namespace

XFloat& EdgeLengths::at(int a, int b) {
    return l[size_t(edge_index(a, b))];
}
const XFloat& EdgeLengths::at(int a, int b) const {
    return l[size_t(edge_index(a, b))];
}

int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVerts[size_t(e)].first == a && kEdgeVerts[size_t(e)].second == b)
            return e;
    throw DomainError("edge_index: bad vertex pair");
}

// ---------------------------------------------------------------- determinants

XFloat det3(const std::array<std::array<XFloat, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace {

// Laplace expansion along the first row of the submatrix given by `idx`.
template <class M>
XFloat det_rec(const M& m, const std::vector<int>& idx) {
    size_t n = idx.size();
    if (n == 1) return m[size_t(idx[0])][size_t(idx[0])];
    if (n == 2)
        return m[size_t(idx[0])][size_t(idx[0])] * m[size_t(idx[1])][size_t(idx[1])] -
               m[size_t(idx[0])][size_t(idx[1])] * m[size_t(idx[1])][size_t(idx[0])];
    // generic: expand along row idx[0]
    XFloat acc(0.0);
    std::vector<int> sub(idx.begin() + 1, idx.end());
    for (size_t j = 0; j < n; ++j) {
        // column idx[j]; build the column list without it
        std::vector<int> cols;
        cols.reserve(n - 1);
        for (size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(idx[k]);
        // build the dense (n-1)x(n-1) minor over rows sub x cols (n <= 5)
        std::array<std::array<XFloat, 5>, 5> s{};
        for (size_t r = 0; r < n - 1; ++r)
            for (size_t c = 0; c < n - 1; ++c)
                s[r][c] = m[size_t(sub[r])][size_t(cols[c])];
        std::vector<int> id(n - 1);
        for (size_t k = 0; k < n - 1; ++k) id[size_t(k)] = int(k);
        XFloat minor = det_rec(s, id);
        XFloat term = m[size_t(idx[0])][size_t(idx[j])] * minor;
        acc += (j % 2 != 0) ? -term : term;
    }
    return acc;
}

}  // namespace

XFloat det4(const Mat4& m) {
    return det_rec(m, {0, 1, 2, 3});
}

XFloat det5(const Mat5& m) {
    return det_rec(m, {0, 1, 2, 3, 4});
}

XFloat principal_minor(const Mat4& m, unsigned mask) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) idx.push_back(i);
    if (idx.empty()) return XFloat(1.0);
    return det_rec(m, idx);
}

// ---------------------------------------------------------------- Gram matrices

GramSet gram(const EdgeLengths& L) {
    GramSet g;
    for (int a = 1; a <= 4; ++a) {
        g.gplus[size_t(a - 1)][size_t(a - 1)] = XFloat(1.0);
        g.gminus[size_t(a - 1)][size_t(a - 1)] = XFloat(-1.0);
        g.g0[size_t(a)][size_t(a)] = XFloat(0.0);
        g.g0[0][size_t(a)] = XFloat(1.0);
        g.g0[size_t(a)][0] = XFloat(1.0);
        for (int b = a + 1; b <= 4; ++b) {
            const XFloat& lab = L.at(a, b);
            XFloat cp = cos(lab), cm = -cosh(lab);
            XFloat cm0 = -ldexp(lab * lab, -1);  // -l^2/2
            g.gplus[size_t(a - 1)][size_t(b - 1)] = cp;
            g.gplus[size_t(b - 1)][size_t(a - 1)] = cp;
            g.gminus[size_t(a - 1)][size_t(b - 1)] = cm;
            g.gminus[size_t(b - 1)][size_t(a - 1)] = cm;
            g.g0[size_t(a)][size_t(b)] = cm0;
            g.g0[size_t(b)][size_t(a)] = cm0;
        }
    }
    g.g0[0][0] = XFloat(0.0);
    g.det_g0 = det5(g.g0);
    g.det_gplus = det4(g.gplus);
    g.det_gminus = det4(g.gminus);
    for (int a = 0; a < 4; ++a) {
        unsigned mask = 0xFu & ~(1u << a);
        g.face_plus[size_t(a)] = principal_minor(g.gplus, mask);
        g.face_minus[size_t(a)] = principal_minor(g.gminus, mask);
    }
    return g;
}

XFloat volume_det(const EdgeLengths& L) {
    GramSet g = gram(L);
    switch (L.curvature) {
        case Curvature::Spherical: return g.det_gplus;
        case Curvature::Hyperbolic: return -g.det_gminus;
        case Curvature::Euclidean:
        default: return -g.det_g0;
    }
}

XFloat face_det(const EdgeLengths& L, int a) {
    // squared-area determinant of the face omitting vertex a (1-based)
    std::array<int, 3> v;
    int k = 0;
    for (int i = 1; i <= 4; ++i)
        if (i != a) v[size_t(k++)] = i;
    const XFloat& l1 = L.at(v[0], v[1]);
    const XFloat& l2 = L.at(v[0], v[2]);
    const XFloat& l3 = L.at(v[1], v[2]);
    auto face3 = [&](auto f) {
        std::array<std::array<XFloat, 3>, 3> m;
        XFloat d = f(XFloat(0.0));
        m[0][0] = d; m[1][1] = d; m[2][2] = d;
        m[0][1] = m[1][0] = f(l1);
        m[0][2] = m[2][0] = f(l2);
        m[1][2] = m[2][1] = f(l3);
        return det3(m);
    };
    switch (L.curvature) {
        case Curvature::Spherical:
            return face3([](const XFloat& x) { return cos(x); });
        case Curvature::Hyperbolic:
            return -face3([](const XFloat& x) { return -cosh(x); });
        case Curvature::Euclidean:
        default: {
            // Heron: -|G0| = 4 s (s-l1)(s-l2)(s-l3) = (2 Area)^2
            XFloat s = ldexp(l1 + l2 + l3, -1);
            return XFloat(4.0) * s * (s - l1) * (s - l2) * (s - l3);
        }
    }
}

// ---------------------------------------------------------------- existence

namespace {

double gram_scale(const EdgeLengths& L) {
    if (L.curvature != Curvature::Hyperbolic) return 1.0;
    double m = 1.0;
    for (const XFloat& x : L.l) m = std::max(m, std::cosh(x.hi));
    return m;
}

bool faces_ok(const EdgeLengths& L) {
    for (int a = 1; a <= 4; ++a) {
        std::array<int, 3> v;
        int k = 0;
        for (int i = 1; i <= 4; ++i)
            if (i != a) v[size_t(k++)] = i;
        double l1 = L.at(v[0], v[1]).to_double();
        double l2 = L.at(v[0], v[2]).to_double();
        double l3 = L.at(v[1], v[2]).to_double();
        if (l1 > l2 + l3 + kTriSlack || l2 > l1 + l3 + kTriSlack ||
            l3 > l1 + l2 + kTriSlack)
            return false;
        if (L.curvature == Curvature::Spherical &&
            l1 + l2 + l3 > 2 * M_PI + kTriSlack)
            return false;
    }
    return true;
}

}  // namespace

bool exists(const EdgeLengths& L) {
    for (const XFloat& x : L.l) {
        if (x.hi < -kLenTol) return false;
        if (L.curvature == Curvature::Spherical && x.hi > M_PI + kLenTol)
            return false;
    }
    if (!faces_ok(L)) return false;
    double scale = gram_scale(L);
    double tol = kDetTol * scale * scale * scale * scale;
    return volume_det(L).to_double() >= -tol;
}

// ---------------------------------------------------------------- classification

const char* to_string(TetClass c) {
    switch (c) {
        case TetClass::A_NonDegenerate: return "A";
        case TetClass::B_Tangent: return "B";
        case TetClass::C_OneFaceDegenerate: return "C";
        case TetClass::D_OneEdgeZero: return "D";
        case TetClass::E_Colinear: return "E";
        case TetClass::F_CaseF: return "F";
        case TetClass::G_AllZeroOrPi: return "G";
        case TetClass::Forbidden: return "Forbidden";
    }
    return "?";
}

ClassifyDetail classify_detail(const EdgeLengths& L) {
    ClassifyDetail out;
    if (!exists(L)) {
        out.cls = TetClass::Forbidden;
        return out;
    }
    const bool sph = (L.curvature == Curvature::Spherical);
    auto is_zero = [&](const XFloat& x) { return std::fabs(x.to_double()) < kLenTol; };
    auto is_pi = [&](const XFloat& x) {
        return sph && std::fabs(x.to_double() - M_PI) < kLenTol;
    };

    // G: every edge is 0 or pi
    bool all_0pi = true;
    for (const XFloat& x : L.l)
        if (!is_zero(x) && !is_pi(x)) all_0pi = false;
    if (all_0pi) {
        out.cls = TetClass::G_AllZeroOrPi;
        return out;
    }

    double scale = gram_scale(L);
    double ftol = kDetTol * scale * scale * scale;
    bool face_sing[4], all_sing = true;
    for (int a = 0; a < 4; ++a) {
        face_sing[a] = std::fabs(face_det(L, a + 1).to_double()) < ftol;
        if (!face_sing[a]) all_sing = false;
    }

    if (all_sing) {
        // F: all non-zero lengths equal (and < pi), or one zero edge with
        // the opposite edge at pi
        {
            double common = -1.0;
            bool okF = true;
            for (const XFloat& x : L.l) {
                double v = x.to_double();
                if (std::fabs(v) < kLenTol) continue;
                if (common < 0)
                    common = v;
                else if (std::fabs(v - common) > kLenTol)
                    okF = false;
            }
            if (okF && common > 0 && (!sph || common < M_PI - kLenTol)) {
                out.cls = TetClass::F_CaseF;
                return out;
            }
            if (sph) {
                int nzero = 0, ze = -1;
                for (int e = 0; e < 6; ++e)
                    if (is_zero(L.l[size_t(e)])) {
                        ++nzero;
                        ze = e;
                    }
                if (nzero == 1 && is_pi(L.l[size_t(opposite_edge(ze))])) {
                    out.cls = TetClass::F_CaseF;
                    out.zero_edge = ze;
                    return out;
                }
            }
        }
        // E: vertices on a geodesic in some order a,b,c,d
        int perm[4] = {1, 2, 3, 4};
        std::sort(perm, perm + 4);
        do {
            if (perm[0] > perm[3]) continue;  // orderings modulo reversal
            double ab = L.at(perm[0], perm[1]).to_double();
            double bc = L.at(perm[1], perm[2]).to_double();
            double cd = L.at(perm[2], perm[3]).to_double();
            double ac = L.at(perm[0], perm[2]).to_double();
            double bd = L.at(perm[1], perm[3]).to_double();
            double ad = L.at(perm[0], perm[3]).to_double();
            double tol = 1e-15;
            if (std::fabs(ac - ab - bc) < tol && std::fabs(bd - bc - cd) < tol &&
                std::fabs(ad - ab - bc - cd) < tol &&
                (!sph || ad <= M_PI + kLenTol)) {
                out.cls = TetClass::E_Colinear;
                out.colinear_order = {perm[0], perm[1], perm[2], perm[3]};
                return out;
            }
        } while (std::next_permutation(perm, perm + 4));
    }

    // D: exactly one vanishing edge
    {
        int nzero = 0, ze = -1;
        for (int e = 0; e < 6; ++e)
            if (is_zero(L.l[size_t(e)])) {
                ++nzero;
                ze = e;
            }
        if (nzero == 1) {
            out.cls = TetClass::D_OneEdgeZero;
            out.zero_edge = ze;
            return out;
        }
    }

    // C: some face degenerate (volume det >= 0 guaranteed by exists)
    for (int a = 0; a < 4; ++a)
        if (face_sing[a]) {
            out.cls = TetClass::C_OneFaceDegenerate;
            return out;
        }

    double vtol = kDetTol * scale * scale * scale * scale;
    if (std::fabs(volume_det(L).to_double()) <= vtol) {
        out.cls = TetClass::B_Tangent;
        return out;
    }
    out.cls = TetClass::A_NonDegenerate;
    return out;
}

TetClass classify(const EdgeLengths& L) { return classify_detail(L).cls; }

// ---------------------------------------------------------------- dihedral

namespace {

Mat4 adjugate(const Mat4& m) {
    Mat4 adj;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            std::array<std::array<XFloat, 3>, 3> sub;
            int rr = 0;
            for (int r = 0; r < 4; ++r) {
                if (r == j) continue;  // adj = transposed cofactors
                int cc = 0;
                for (int c = 0; c < 4; ++c) {
                    if (c == i) continue;
                    sub[size_t(rr)][size_t(cc)] = m[size_t(r)][size_t(c)];
                    ++cc;
                }
                ++rr;
            }
            XFloat d = det3(sub);
            adj[size_t(i)][size_t(j)] = ((i + j) % 2 != 0) ? -d : d;
        }
    }
    return adj;
}

}  // namespace

std::array<XFloat, 6> interior_cosines(const EdgeLengths& L) {
    if (L.curvature == Curvature::Euclidean)
        throw DomainError("dihedral: spherical or hyperbolic only");
    GramSet g = gram(L);
    const bool sph = (L.curvature == Curvature::Spherical);
    Mat4 adj = adjugate(sph ? g.gplus : g.gminus);
    std::array<XFloat, 6> out;
    for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVerts[size_t(e)];
        int c = -1, d = -1;
        for (int v = 1; v <= 4; ++v)
            if (v != a && v != b) (c < 0 ? c : d) = v;
        XFloat num = adj[size_t(c - 1)][size_t(d - 1)];
        XFloat den2 = adj[size_t(c - 1)][size_t(c - 1)] * adj[size_t(d - 1)][size_t(d - 1)];
        if (den2.to_double() <= 0.0)
            throw DomainError("dihedral: singular face Gram");
        XFloat ratio = num / sqrt(den2);
        // cos(interior) = -G^{cd}/sqrt(G^{cc} G^{dd}); converting the inverse
        // to the adjugate flips the sign with sign(det): + for spherical,
        // - for hyperbolic (det G- < 0)
        out[size_t(e)] = sph ? -ratio : ratio;
    }
    return out;
}

namespace {

// angle computation without the classification gate; used internally where
// evaluation points approach the existence boundary
DihedralAngles dihedral_raw(const EdgeLengths& L) {
    std::array<XFloat, 6> cosines = interior_cosines(L);
    DihedralAngles out;
    for (int e = 0; e < 6; ++e) {
        XFloat ci = cosines[size_t(e)];
        // boundary configurations can overshoot +-1 by rounding; clamp a
        // modest margin (the overshoot may live entirely in the low word)
        XFloat over = ci - XFloat(1.0), under = ci + XFloat(1.0);
        if (!over.is_negative() && over.to_double() < 1e-10) ci = XFloat(1.0);
        if (under.is_negative() && under.to_double() > -1e-10) ci = XFloat(-1.0);
        XFloat interior = acos(ci);
        out.exterior[size_t(e)] = consts::pi() - interior;
    }
    return out;
}

}  // namespace

DihedralAngles dihedral_unchecked(const EdgeLengths& L) { return dihedral_raw(L); }

DihedralAngles dihedral(const EdgeLengths& L) {
    TetClass cls = classify(L);
    if (cls != TetClass::A_NonDegenerate && cls != TetClass::B_Tangent)
        throw DomainError("dihedral: geometry degenerate beyond tolerance");
    return dihedral_raw(L);
}

XFloat dtheta_dl(const EdgeLengths& L, int edge_ab, int edge_cd) {
    if (opposite_edge(edge_ab) != edge_cd)
        throw DomainError("dtheta_dl: edges must be opposite");
    XFloat vd = volume_det(L);
    if (vd.to_double() <= 0.0)
        throw DomainError("dtheta_dl: degenerate configuration");
    const XFloat& lab = L.l[size_t(edge_ab)];
    const XFloat& lcd = L.l[size_t(edge_cd)];
    switch (L.curvature) {
        case Curvature::Spherical:
            return -(sin(lab) * sin(lcd)) / sqrt(vd);
        case Curvature::Hyperbolic:
            return -(sinh(lab) * sinh(lcd)) / sqrt(vd);
        case Curvature::Euclidean:
        default:
            return -(lab * lcd) / sqrt(vd);
    }
}

std::array<XFloat, 4> face_areas(const EdgeLengths& L) {
    std::array<XFloat, 4> out;
    double scale = gram_scale(L);
    double ftol = kDetTol * scale * scale * scale;
    for (int a = 1; a <= 4; ++a) {
        XFloat f = face_det(L, a);
        if (f.to_double() < -ftol)
            throw DomainError("face_areas: negative face determinant");
        out[size_t(a - 1)] = f.to_double() <= 0.0 ? XFloat(0.0) : sqrt(f);
    }
    return out;
}

// ---------------------------------------------------------------- Schlafli

namespace {

XFloat sum_l_theta(const EdgeLengths& L, const DihedralAngles& th) {
    XFloat s(0.0);
    for (int e = 0; e < 6; ++e) s += L.l[size_t(e)] * th.exterior[size_t(e)];
    return s;
}

XFloat theta_edge(const EdgeLengths& L, int e) {
    return dihedral_raw(L).exterior[size_t(e)];
}

EdgeLengths with_edge(const EdgeLengths& L, int e, const XFloat& v) {
    EdgeLengths out = L;
    out.l[size_t(e)] = v;
    return out;
}

// Composite-midpoint integral of f over [a,b], refined by doubling with
// Romberg extrapolation (midpoint error expands in even powers of h).
template <class F>
XFloat midpoint_refine(const F& f, const XFloat& a, const XFloat& b, double tol) {
    constexpr int kmax = 13;
    XFloat R[kmax][kmax];
    auto midsum = [&](int n) {
        XFloat h = (b - a) / XFloat(double(n));
        XFloat s(0.0);
        for (int i = 0; i < n; ++i) s += f(a + h * XFloat(i + 0.5));
        return s * h;
    };
    int n = 8;
    R[0][0] = midsum(n);
    for (int k = 1; k < kmax; ++k) {
        n *= 2;
        R[k][0] = midsum(n);
        double p4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            p4 *= 4.0;
            R[k][j] = R[k][j - 1] + (R[k][j - 1] - R[k - 1][j - 1]) / XFloat(p4 - 1.0);
        }
        double diff = std::fabs((R[k][k] - R[k - 1][k - 1]).to_double());
        if (k >= 2 && diff < tol * std::max(1.0, std::fabs(R[k][k].to_double())))
            return R[k][k];
    }
    return R[kmax - 1][kmax - 1];
}

// integral of theta_e(l) dl from the boundary b to t; the substitution
// l = b + u^2 absorbs the sqrt behaviour of theta at the window boundary
XFloat integrate_theta_from_boundary(const EdgeLengths& L, int e, const XFloat& b,
                                     const XFloat& t, double tol) {
    if (t == b) return XFloat(0.0);
    bool fwd = t > b;
    XFloat span = abs(t - b);
    XFloat umax = sqrt(span);
    auto f = [&](const XFloat& u) {
        XFloat l = fwd ? b + u * u : b - u * u;
        return ldexp(u, 1) * theta_edge(with_edge(L, e, l), e);
    };
    XFloat val = midpoint_refine(f, XFloat(0.0), umax, tol);
    return fwd ? val : -val;
}

XFloat integrate_theta(const EdgeLengths& L, int e, const XFloat& a,
                       const XFloat& t, double tol) {
    auto f = [&](const XFloat& l) { return theta_edge(with_edge(L, e, l), e); };
    return midpoint_refine(f, a, t, tol);
}

// Find the existence-window boundary along edge e in direction dir from the
// target (which must exist); returns false if none inside the bounds.
bool find_boundary(const EdgeLengths& L, int e, int dir, XFloat& out) {
    double lo_bound = 0.0;
    double hi_bound = (L.curvature == Curvature::Spherical) ? M_PI : 60.0;
    double t = L.l[size_t(e)].to_double();
    double step = 0.02 * std::max(1.0, t);
    double a = t, bx = t;
    bool found = false;
    for (;;) {
        bx = a + dir * step;
        if (bx < lo_bound) bx = lo_bound;
        if (bx > hi_bound) bx = hi_bound;
        if (!exists(with_edge(L, e, XFloat(bx)))) {
            found = true;
            break;
        }
        if (bx == lo_bound || bx == hi_bound) break;
        a = bx;
    }
    if (!found) {
        // window may close exactly at the bound (volume det = 0 there)
        EdgeLengths cfg = with_edge(L, e, XFloat(bx));
        double scale = gram_scale(cfg);
        if (std::fabs(volume_det(cfg).to_double()) <
            1e-12 * scale * scale * scale * scale) {
            out = XFloat(bx);
            return true;
        }
        return false;
    }
    XFloat in(a), outp(bx);
    for (int i = 0; i < 120; ++i) {
        XFloat mid = ldexp(in + outp, -1);
        if (exists(with_edge(L, e, mid)))
            in = mid;
        else
            outp = mid;
    }
    out = in;
    return true;
}

}  // namespace

XFloat volume(const EdgeLengths& L) {
    TetClass cls = classify(L);
    if (L.curvature == Curvature::Euclidean) {
        if (cls != TetClass::A_NonDegenerate && cls != TetClass::B_Tangent)
            throw DomainError("volume: degenerate Euclidean configuration");
        XFloat v2 = -gram(L).det_g0;
        if (v2.to_double() <= 0.0) return XFloat(0.0);
        return sqrt(v2) / XFloat(6.0);
    }
    if (cls == TetClass::B_Tangent) return XFloat(0.0);
    if (cls != TetClass::A_NonDegenerate)
        throw DomainError("volume: requires a non-degenerate tetrahedron");
    XFloat kappa(L.curvature == Curvature::Spherical ? 1.0 : -1.0);
    XFloat target_slt = sum_l_theta(L, dihedral(L));
    auto integrate_from = [&](int e, const XFloat& a, bool strict) {
        EdgeLengths cfg = with_edge(L, e, a);
        XFloat slt = sum_l_theta(cfg, strict ? dihedral(cfg) : dihedral_raw(cfg));
        XFloat I = integrate_theta_from_boundary(L, e, a, L.l[size_t(e)], 1e-13);
        // Schlafli in exterior angles: 2 kappa dVol = -(sum l dtheta)
        return (slt + I - target_slt) / ldexp(kappa, 1);
    };
    // first pass: boundaries where the angles stay well-defined (tangent type,
    // volume vanishes there and the anchor is exact)
    for (int e = 0; e < 6; ++e) {
        for (int dir : {-1, +1}) {
            XFloat b;
            if (!find_boundary(L, e, dir, b)) continue;
            try {
                return integrate_from(e, b, true);
            } catch (const DomainError&) {
                // boundary degenerates an edge or a face; handled in pass 2
            }
        }
    }
    // second pass: anchor a hair inside the window; the neglected boundary
    // volume is O(delta), removed by Richardson extrapolation over delta, 2 delta
    for (int e = 0; e < 6; ++e) {
        for (int dir : {-1, +1}) {
            XFloat b;
            if (!find_boundary(L, e, dir, b)) continue;
            double delta = 1e-8 * std::max(1.0, std::fabs(b.to_double()));
            try {
                XFloat v1 = integrate_from(e, b - XFloat(dir * delta), false);
                XFloat v2 = integrate_from(e, b - XFloat(dir * 2 * delta), false);
                return ldexp(v1, 1) - v2;
            } catch (const DomainError&) {
                continue;
            }
        }
    }
    throw DomainError("volume: no boundary-connected path found");
}

std::vector<PhasePoint> schlafli_phase(const EdgeLengths& base, int varying_edge,
                                       const std::vector<XFloat>& grid,
                                       const XFloat& r_eff) {
    std::vector<PhasePoint> out(grid.size());
    const int e = varying_edge;
    for (size_t i = 0; i < grid.size(); ++i) {
        EdgeLengths cfg = with_edge(base, e, grid[i]);
        out[i].l = grid[i];
        out[i].det = volume_det(cfg);
        out[i].in_window = exists(cfg);
    }
    // contiguous window
    size_t i0 = grid.size(), i1 = 0;
    for (size_t i = 0; i < grid.size(); ++i)
        if (out[i].in_window) {
            if (i0 == grid.size()) i0 = i;
            i1 = i;
        }
    if (i0 == grid.size()) return out;

    XFloat coeff = r_eff / consts::two_pi();
    // entry boundary below grid[i0]
    XFloat b;
    {
        EdgeLengths cfg = with_edge(base, e, grid[i0]);
        if (!find_boundary(cfg, e, -1, b)) b = grid[i0];
    }
    XFloat phi_b;
    {
        EdgeLengths cfg = with_edge(base, e, b);
        DihedralAngles th;
        try {
            th = dihedral(cfg);
        } catch (const DomainError&) {
            // anchor a hair inside the window instead
            cfg = with_edge(base, e, b + XFloat(1e-9));
            th = dihedral_raw(cfg);
        }
        phi_b = coeff * sum_l_theta(cfg, th);
    }
    XFloat phi = phi_b + coeff * integrate_theta_from_boundary(
                             base, e, b, grid[i0], 1e-8);
    for (size_t i = i0; i <= i1; ++i) {
        if (!out[i].in_window) continue;
        if (i > i0)
            phi += coeff * integrate_theta(base, e, grid[i - 1], grid[i], 1e-8);
        out[i].phi = phi;
        out[i].theta = theta_edge(with_edge(base, e, grid[i]), e);
    }
    return out;
}

std::vector<PhasePoint> schlafli_phase(const EdgeLengths& base, int varying_edge,
                                       const XFloat& l_from, const XFloat& l_to,
                                       int points, const XFloat& r_eff) {
    std::vector<XFloat> grid;
    grid.reserve(size_t(points));
    for (int i = 0; i < points; ++i) {
        XFloat t = points == 1 ? XFloat(0.0)
                               : XFloat(double(i)) / XFloat(double(points - 1));
        grid.push_back(l_from + (l_to - l_from) * t);
    }
    return schlafli_phase(base, varying_edge, grid, r_eff);
}

}  // namespace qsixj
