#include "doctest.h"
#include "qsixj/tetgeom.hpp"

#include <cmath>
#include <random>

using namespace qsixj;

namespace {

EdgeLengths make_lengths(std::initializer_list<double> ls, Curvature c) {
    EdgeLengths L;
    L.curvature = c;
    int i = 0;
    for (double v : ls) L.l[size_t(i++)] = XFloat(v);
    return L;
}

EdgeLengths equilateral(double l, Curvature c) {
    return make_lengths({l, l, l, l, l, l}, c);
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

}  // namespace

TEST_CASE("edge indexing") {
    CHECK(edge_index(1, 2) == 0);
    CHECK(edge_index(2, 1) == 0);
    CHECK(edge_index(2, 3) == 1);
    CHECK(edge_index(1, 3) == 2);
    CHECK(edge_index(3, 4) == 3);
    CHECK(edge_index(1, 4) == 4);
    CHECK(edge_index(2, 4) == 5);
    // opposite pairs share no vertex
    for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVerts[size_t(e)];
        auto [c, d] = kEdgeVerts[size_t(opposite_edge(e))];
        CHECK(a != c);
        CHECK(a != d);
        CHECK(b != c);
        CHECK(b != d);
    }
    CHECK_THROWS_AS(edge_index(1, 1), DomainError);
}

TEST_CASE("equilateral Gram determinant closed form") {
    // (n+1)-point equilateral configuration: det = (1-cos l)^n (1 + n cos l)
    for (double l : {0.3, 1.0, 1.6}) {
        GramSet g = gram(equilateral(l, Curvature::Spherical));
        double c = std::cos(l);
        double want4 = std::pow(1 - c, 3) * (1 + 3 * c);
        CHECK(rel_err(g.det_gplus.to_double(), want4) <= 1e-14);
        double want3 = std::pow(1 - c, 2) * (1 + 2 * c);
        for (int a = 0; a < 4; ++a)
            CHECK(rel_err(g.face_plus[size_t(a)].to_double(), want3) <= 1e-14);
    }
}

TEST_CASE("spherical face determinant factorizes (q-Heron)") {
    // det of the 3x3 cosine Gram = 4 sin s sin(s-l1) sin(s-l2) sin(s-l3)
    EdgeLengths L = make_lengths({0.7, 1.1, 0.9, 1.0, 0.8, 1.2}, Curvature::Spherical);
    // face omitting vertex 4 has sides l12, l23, l13
    double l1 = 0.7, l2 = 1.1, l3 = 0.9;
    double s = (l1 + l2 + l3) / 2;
    double want =
        4 * std::sin(s) * std::sin(s - l1) * std::sin(s - l2) * std::sin(s - l3);
    CHECK(rel_err(face_det(L, 4).to_double(), want) <= 1e-14);
    // Euclidean: Heron, (2 Area)^2; 3-4-5 right triangle has area 6
    EdgeLengths E = make_lengths({3, 4, 5, 1, 1, 1}, Curvature::Euclidean);
    CHECK(rel_err(face_det(E, 4).to_double(), 144.0) <= 1e-25);
    CHECK(rel_err(face_areas(make_lengths({3, 4, 5, 3, 4, 5},
                                          Curvature::Euclidean))[3]
                      .to_double(),
                  12.0) <= 1e-20);
}

TEST_CASE("small-length limit of the curved determinants") {
    // det G+-(eps l) / eps^6 -> -+ det G0(l)
    EdgeLengths L =
        make_lengths({0.9, 1.1, 1.0, 1.2, 0.8, 1.05}, Curvature::Euclidean);
    double d0 = gram(L).det_g0.to_double();
    double eps = 1e-3, e6 = std::pow(eps, 6);
    EdgeLengths S = L, H = L;
    S.curvature = Curvature::Spherical;
    H.curvature = Curvature::Hyperbolic;
    for (int i = 0; i < 6; ++i) {
        S.l[size_t(i)] = XFloat(L.l[size_t(i)].to_double() * eps);
        H.l[size_t(i)] = XFloat(L.l[size_t(i)].to_double() * eps);
    }
    CHECK(rel_err(gram(S).det_gplus.to_double() / e6, -d0) <= 1e-5);
    CHECK(rel_err(gram(H).det_gminus.to_double() / e6, d0) <= 1e-5);
}

TEST_CASE("existence") {
    CHECK(exists(equilateral(1.0, Curvature::Spherical)));
    CHECK(exists(equilateral(1.0, Curvature::Hyperbolic)));
    CHECK(exists(equilateral(1.0, Curvature::Euclidean)));
    // triangle inequality violated on a face
    CHECK_FALSE(exists(make_lengths({3, 1, 1, 1, 1, 1}, Curvature::Hyperbolic)));
    // spherical face perimeter above 2 pi
    CHECK_FALSE(exists(equilateral(2.5, Curvature::Spherical)));
    // equilateral spherical ceases to exist once 1 + 3 cos l < 0
    CHECK_FALSE(exists(equilateral(2.0, Curvature::Spherical)));
    CHECK(exists(equilateral(1.9, Curvature::Spherical)));
    // negative lengths are rejected
    CHECK_FALSE(exists(make_lengths({-0.5, 1, 1, 1, 1, 1}, Curvature::Spherical)));
}

TEST_CASE("classification") {
    using TC = TetClass;
    CHECK(classify(equilateral(1.0, Curvature::Spherical)) == TC::A_NonDegenerate);
    CHECK(classify(equilateral(1.0, Curvature::Hyperbolic)) == TC::A_NonDegenerate);
    CHECK(classify(equilateral(1.0, Curvature::Euclidean)) == TC::A_NonDegenerate);
    // B: equilateral spherical at l = arccos(-1/3) has det G+ = 0,
    // non-degenerate faces (the length must be accurate well past double)
    {
        XFloat lB = acos(XFloat(-1.0) / XFloat(3.0));
        EdgeLengths B;
        B.curvature = Curvature::Spherical;
        for (auto& x : B.l) x = lB;
        CHECK(classify(B) == TC::B_Tangent);
    }
    // C: four coplanar Euclidean points with one colinear face
    {
        auto len = [](double x1, double y1, double x2, double y2) {
            return std::hypot(x2 - x1, y2 - y1);
        };
        // vertices (0,0), (1,0), (2,0), (0.5,0.7)
        EdgeLengths C = make_lengths(
            {len(0, 0, 1, 0), len(1, 0, 2, 0), len(0, 0, 2, 0),
             len(2, 0, .5, .7), len(0, 0, .5, .7), len(1, 0, .5, .7)},
            Curvature::Euclidean);
        CHECK(classify(C) == TC::C_OneFaceDegenerate);
    }
    // D: a single vanishing edge
    {
        EdgeLengths D =
            make_lengths({0.0, 0.8, 0.8, 0.9, 0.7, 0.7}, Curvature::Spherical);
        ClassifyDetail cd = classify_detail(D);
        CHECK(cd.cls == TC::D_OneEdgeZero);
        CHECK(cd.zero_edge == 0);
    }
    // E: vertices at 0, 0.25, 0.5, 0.75 along a geodesic (exact binary
    // lengths so the chain sums are exact)
    {
        EdgeLengths E =
            make_lengths({0.25, 0.25, 0.5, 0.25, 0.75, 0.5}, Curvature::Hyperbolic);
        ClassifyDetail cd = classify_detail(E);
        CHECK(cd.cls == TC::E_Colinear);
        CHECK(cd.colinear_order[0] == 1);
        CHECK(cd.colinear_order[1] == 2);
        CHECK(cd.colinear_order[2] == 3);
        CHECK(cd.colinear_order[3] == 4);
    }
    // F: three coincident vertices, equal spokes
    CHECK(classify(make_lengths({0, 0, 0, 0.8, 0.8, 0.8}, Curvature::Spherical)) ==
          TC::F_CaseF);
    // F (spherical): zero edge with antipodal opposite edge
    {
        double x = 0.4;
        EdgeLengths F = make_lengths({0, M_PI - x, M_PI - x, M_PI, x, x},
                                     Curvature::Spherical);
        // l12 = 0, l34 = pi, vertex pair {1,2} at distance x from 3
        CHECK(classify(F) == TC::F_CaseF);
    }
    // G: all lengths zero, or a 0/pi pattern
    CHECK(classify(equilateral(0.0, Curvature::Hyperbolic)) == TC::G_AllZeroOrPi);
    CHECK(classify(make_lengths({M_PI, M_PI, 0, 0, 0, M_PI}, Curvature::Spherical)) ==
          TC::G_AllZeroOrPi);
    // Forbidden
    CHECK(classify(make_lengths({3, 1, 1, 1, 1, 1}, Curvature::Hyperbolic)) ==
          TC::Forbidden);
    CHECK(std::string(to_string(TC::B_Tangent)) == "B");
}

TEST_CASE("classification is invariant under vertex relabeling") {
    std::vector<EdgeLengths> cases = {
        equilateral(1.0, Curvature::Spherical),
        make_lengths({0.0, 0.8, 0.8, 0.9, 0.7, 0.7}, Curvature::Spherical),
        make_lengths({0.25, 0.25, 0.5, 0.25, 0.75, 0.5}, Curvature::Hyperbolic),
        make_lengths({0, 0, 0, 0.8, 0.8, 0.8}, Curvature::Spherical),
        make_lengths({3, 1, 1, 1, 1, 1}, Curvature::Hyperbolic),
    };
    for (const EdgeLengths& L : cases) {
        TetClass c0 = classify(L);
        int perm[4] = {1, 2, 3, 4};
        do {
            EdgeLengths P = L;
            for (int a = 1; a <= 4; ++a)
                for (int b = a + 1; b <= 4; ++b)
                    P.at(a, b) = L.at(perm[a - 1], perm[b - 1]);
            CHECK(classify(P) == c0);
        } while (std::next_permutation(perm, perm + 4));
    }
}

TEST_CASE("dihedral angles") {
    // all-right-angled spherical tetrahedron (octant): every interior pi/2
    DihedralAngles th = dihedral(equilateral(M_PI / 2, Curvature::Spherical));
    for (int e = 0; e < 6; ++e)
        CHECK(std::fabs(th.interior(e).to_double() - M_PI / 2) <= 1e-30);
    // Euclidean limit: equilateral interior -> arccos(1/3), both curvatures
    for (Curvature c : {Curvature::Spherical, Curvature::Hyperbolic}) {
        DihedralAngles t = dihedral(equilateral(1e-4, c));
        CHECK(std::fabs(t.interior(0).to_double() - std::acos(1.0 / 3.0)) <= 1e-8);
    }
    // degenerate input refused
    CHECK_THROWS_AS(dihedral(make_lengths({0.25, 0.25, 0.5, 0.25, 0.75, 0.5},
                                          Curvature::Hyperbolic)),
                    DomainError);
    CHECK_THROWS_AS(dihedral(equilateral(1.0, Curvature::Euclidean)), DomainError);
}

TEST_CASE("volume identity: |G| sin^2 l_ab = f_c f_d sin^2 theta_ab") {
    EdgeLengths L =
        make_lengths({0.9, 1.1, 1.0, 1.2, 0.8, 1.05}, Curvature::Spherical);
    GramSet g = gram(L);
    DihedralAngles th = dihedral(L);
    for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVerts[size_t(e)];
        int c = -1, d = -1;
        for (int v = 1; v <= 4; ++v)
            if (v != a && v != b) (c < 0 ? c : d) = v;
        double lhs = std::sqrt(g.det_gplus.to_double()) *
                     std::sin(L.at(a, b).to_double());
        double rhs = std::sqrt(g.face_plus[size_t(d - 1)].to_double()) *
                     std::sqrt(g.face_plus[size_t(c - 1)].to_double()) *
                     std::sin(th.exterior[size_t(e)].to_double());
        CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("dgram identity: cofactor pair vs d|G|/d cos l_cd") {
    // 2 f_c^{1/2} f_d^{1/2} cos theta_ab = d|G+| / d cos l_cd (theta exterior)
    EdgeLengths L = equilateral(1.1, Curvature::Spherical);
    L.l[3] = XFloat(0.9);  // vary l34; theta at the opposite edge 12
    GramSet g = gram(L);
    double fc = g.face_plus[2].to_double();  // omit vertex 3
    double fd = g.face_plus[3].to_double();  // omit vertex 4
    double thx = dihedral(L).exterior[0].to_double();
    double lhs = 2 * std::sqrt(fc * fd) * std::cos(thx);
    double h = 1e-6, c34 = std::cos(0.9);
    EdgeLengths Lp = L, Lm = L;
    Lp.l[3] = XFloat(std::acos(c34 + h));
    Lm.l[3] = XFloat(std::acos(c34 - h));
    double rhs = (gram(Lp).det_gplus.to_double() - gram(Lm).det_gplus.to_double()) /
                 (2 * h);
    CHECK(rel_err(lhs, rhs) <= 1e-8);
}

TEST_CASE("dtheta_dl matches finite differences") {
    for (Curvature c : {Curvature::Spherical, Curvature::Hyperbolic}) {
        EdgeLengths L = equilateral(1.2, c);
        double h = 1e-6;
        EdgeLengths Lp = L, Lm = L;
        Lp.l[3] = XFloat(1.2 + h);
        Lm.l[3] = XFloat(1.2 - h);
        double fd = (dihedral(Lp).exterior[0].to_double() -
                     dihedral(Lm).exterior[0].to_double()) /
                    (2 * h);
        CHECK(rel_err(dtheta_dl(L, 0, 3).to_double(), fd) <= 1e-8);
    }
    CHECK_THROWS_AS(dtheta_dl(equilateral(1.0, Curvature::Spherical), 0, 1),
                    DomainError);
}

TEST_CASE("volume") {
    // octant tetrahedron: one eighth of the 2 pi^2 three-sphere... the
    // all-right-angled spherical tetrahedron fills 1/16: pi^2 / 8
    double oct = volume(equilateral(M_PI / 2, Curvature::Spherical)).to_double();
    CHECK(rel_err(oct, M_PI * M_PI / 8) <= 1e-12);
    // frozen high-precision oracles (Schlafli integration at 40 digits)
    CHECK(rel_err(volume(equilateral(0.1, Curvature::Spherical)).to_double(),
                  1.1819077112097198543e-4) <= 1e-6);
    CHECK(rel_err(volume(equilateral(0.1, Curvature::Hyperbolic)).to_double(),
                  1.1751312332781849354e-4) <= 1e-6);
    CHECK(rel_err(volume(equilateral(1.0, Curvature::Hyperbolic)).to_double(),
                  9.0597925377724198699e-2) <= 1e-8);
    CHECK(rel_err(volume(equilateral(0.4, Curvature::Spherical)).to_double(),
                  7.903328611806175733e-3) <= 1e-8);
    // curvature corrections are symmetric: V_sph + V_hyp = 2 V_eucl + O(l^5)
    {
        double ve = volume(equilateral(0.02, Curvature::Euclidean)).to_double();
        double vs = volume(equilateral(0.02, Curvature::Spherical)).to_double();
        double vh = volume(equilateral(0.02, Curvature::Hyperbolic)).to_double();
        CHECK(rel_err(vs, ve) <= 2e-4);
        CHECK(rel_err(vh, ve) <= 2e-4);
        CHECK(std::fabs(vs + vh - 2 * ve) / ve <= 1e-6);
    }
    // Euclidean closed form against a coordinate determinant
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (int it = 0; it < 10; ++it) {
            double p[4][3];
            for (auto& q : p)
                for (double& x : q) x = U(rng);
            EdgeLengths L;
            L.curvature = Curvature::Euclidean;
            for (int a = 1; a <= 4; ++a)
                for (int b = a + 1; b <= 4; ++b)
                    L.at(a, b) = XFloat(std::hypot(p[b - 1][0] - p[a - 1][0],
                                                   p[b - 1][1] - p[a - 1][1],
                                                   p[b - 1][2] - p[a - 1][2]));
            double m[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = p[i + 1][j] - p[0][j];
            double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            CHECK(rel_err(volume(L).to_double(), std::fabs(det) / 6) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(volume(make_lengths({3, 1, 1, 1, 1, 1}, Curvature::Hyperbolic)),
                    DomainError);
}

TEST_CASE("schlafli phase table") {
    // fixed lengths pi(n+1)/r at r=200, n = (40,48,50,52,54), varying edge 24
    double r = 200.0;
    auto ln = [&](int n) { return M_PI * (n + 1) / r; };
    EdgeLengths base = make_lengths({ln(40), ln(48), ln(50), ln(52), ln(54), 0.0},
                                    Curvature::Spherical);
    const int e = 5;  // edge (2,4)
    auto pts = schlafli_phase(base, e, XFloat(0.05), XFloat(1.7), 34, XFloat(r));
    REQUIRE(pts.size() == 34);
    int inside = 0;
    for (const PhasePoint& p : pts) {
        EdgeLengths cfg = base;
        cfg.l[e] = p.l;
        CHECK(p.in_window == exists(cfg));
        CHECK(std::fabs(p.det.to_double() - volume_det(cfg).to_double()) <= 1e-25);
        if (!p.in_window) continue;
        ++inside;
        // phi = (r/2pi)(sum l theta + 2 V): Schlafli-integrated phase agrees
        // with the independently integrated volume
        double slt = 0.0;
        DihedralAngles th = dihedral(cfg);
        for (int k = 0; k < 6; ++k)
            slt += cfg.l[size_t(k)].to_double() * th.exterior[size_t(k)].to_double();
        double want = r / (2 * M_PI) * (slt + 2 * volume(cfg).to_double());
        CHECK(std::fabs(p.phi.to_double() - want) <= 1e-6);
        CHECK(std::fabs(p.theta.to_double() - th.exterior[e].to_double()) <= 1e-25);
    }
    CHECK(inside >= 10);  // the window covers a healthy stretch of the grid
}
