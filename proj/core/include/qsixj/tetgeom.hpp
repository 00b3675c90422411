// Distance geometry of Euclidean / spherical / hyperbolic tetrahedra:
// Cayley-Menger and Gram matrices, existence, the seven-way degeneracy
// classification, dihedral angles, face areas, and Schlafli phase/volume
// integration.
#pragma once

#include "qsixj/xfloat.hpp"

#include <array>
#include <vector>

namespace qsixj {

enum class Curvature { Euclidean, Spherical, Hyperbolic };

// Edge order everywhere: l12, l23, l13, l34, l14, l24 (matching the symbol
// slot order); edge i is opposite edge (i+3) mod 6.
struct EdgeLengths {
    std::array<XFloat, 6> l{};
    Curvature curvature{Curvature::Spherical};

    XFloat& at(int a, int b);
    const XFloat& at(int a, int b) const;
};

constexpr std::array<std::pair<int, int>, 6> kEdgeVerts{
    {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {1, 4}, {2, 4}}};
constexpr int opposite_edge(int e) { return (e + 3) % 6; }
int edge_index(int a, int b);

using Mat4 = std::array<std::array<XFloat, 4>, 4>;
using Mat5 = std::array<std::array<XFloat, 5>, 5>;

XFloat det3(const std::array<std::array<XFloat, 3>, 3>& m);
XFloat det4(const Mat4& m);
XFloat det5(const Mat5& m);
// determinant of the principal submatrix on the rows/cols whose bit is set
XFloat principal_minor(const Mat4& m, unsigned mask);

// G0 (modified Cayley-Menger, 5x5), G+ (cos), G- (-cosh), with determinants
// and the four 3x3 face minors of each Gram matrix (delete vertex a).
struct GramSet {
    Mat5 g0;
    Mat4 gplus;
    Mat4 gminus;
    XFloat det_g0, det_gplus, det_gminus;
    std::array<XFloat, 4> face_plus;   // det of gplus with vertex a removed
    std::array<XFloat, 4> face_minus;  // det of gminus with vertex a removed
};
GramSet gram(const EdgeLengths& lengths);

// "volume determinant": det G+ (spherical), -det G- (hyperbolic),
// -det G0 (Euclidean); >= 0 on existing configurations, > 0 non-degenerate.
XFloat volume_det(const EdgeLengths& lengths);
// squared face area determinant for the face omitting vertex a (>= 0 when
// the face exists, 0 when degenerate)
XFloat face_det(const EdgeLengths& lengths, int a);

enum class TetClass {
    A_NonDegenerate,
    B_Tangent,
    C_OneFaceDegenerate,
    D_OneEdgeZero,
    E_Colinear,
    F_CaseF,
    G_AllZeroOrPi,
    Forbidden,
};
const char* to_string(TetClass c);

bool exists(const EdgeLengths& lengths);
TetClass classify(const EdgeLengths& lengths);

struct ClassifyDetail {
    TetClass cls{TetClass::Forbidden};
    int zero_edge{-1};                      // case D: the vanishing edge
    std::array<int, 4> colinear_order{0};   // case E: geodesic vertex order
};
ClassifyDetail classify_detail(const EdgeLengths& lengths);

// Exterior dihedral angles theta_ab in [0, pi], indexed like the edges;
// theta along edge ab comes from the inverse-Gram cofactor pair (c,d).
struct DihedralAngles {
    std::array<XFloat, 6> exterior{};
    XFloat interior(int e) const { return consts::pi() - exterior[size_t(e)]; }
};
DihedralAngles dihedral(const EdgeLengths& lengths);

// Same angles without the classification gate (clamped near the existence
// boundary); and the raw unclamped cosines of the interior angles, for sign
// and binning work right at or slightly past the boundary.
DihedralAngles dihedral_unchecked(const EdgeLengths& lengths);
std::array<XFloat, 6> interior_cosines(const EdgeLengths& lengths);

// d theta_ab / d l_cd for opposite edges ab, cd.
XFloat dtheta_dl(const EdgeLengths& lengths, int edge_ab, int edge_cd);

std::array<XFloat, 4> face_areas(const EdgeLengths& lengths);

// Volume: Euclidean closed form via Cayley-Menger; spherical/hyperbolic by
// Schlafli integration from a zero-volume boundary along one edge.
XFloat volume(const EdgeLengths& lengths);

// Phase table phi(l) on a grid along one varying edge:
//   d phi / d l = (r_eff / 2 pi) theta_e(l),
// anchored at the existence-boundary entry with phi = (r/2pi) sum theta l.
struct PhasePoint {
    XFloat l;
    bool in_window{false};
    XFloat phi;       // valid when in_window
    XFloat theta;     // exterior dihedral along the varying edge
    XFloat det;       // volume determinant at this grid point
};
std::vector<PhasePoint> schlafli_phase(const EdgeLengths& base, int varying_edge,
                                       const std::vector<XFloat>& grid,
                                       const XFloat& r_eff);
std::vector<PhasePoint> schlafli_phase(const EdgeLengths& base, int varying_edge,
                                       const XFloat& l_from, const XFloat& l_to,
                                       int points, const XFloat& r_eff);

}  // namespace qsixj
