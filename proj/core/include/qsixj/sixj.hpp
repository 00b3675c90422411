// 6j symbol evaluation (Racah single sum, tetrahedrally symmetric
// normalization), symmetry orbit, pentagon identity residual, and the
// Schulten-Gordon three-term recursion in the j23 slot.
#pragma once

#include "qsixj/qcalc.hpp"

#include <array>
#include <vector>

namespace qsixj {

// Raised when recursion propagation hits a vanishing leading coefficient
// or a Q-radicand sign change (turning-point grazing).
struct BreakdownError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The symbol {j12 j23 j13; j34 j14 j24}.  Vertex faces:
// (123)=(j12,j23,j13), (134)=(j13,j34,j14), (234)=(j23,j34,j24),
// (124)=(j12,j24,j14).
struct SixLabels {
    Label j12, j23, j13, j34, j14, j24;

    // edge label for a vertex pair (1-based, a != b)
    Label at(int a, int b) const;
    Label& at(int a, int b);
    std::array<Label, 6> as_array() const { return {j12, j23, j13, j34, j14, j24}; }
    friend bool operator==(const SixLabels&, const SixLabels&) = default;
    friend auto operator<=>(const SixLabels&, const SixLabels&) = default;
};

inline SixLabels make_six(int n12, int n23, int n13, int n34, int n14, int n24) {
    return SixLabels{Label(n12), Label(n23), Label(n13),
                     Label(n34), Label(n14), Label(n24)};
}

// All four faces admissible?
bool faces_admissible(const QContext& ctx, const SixLabels& s);

// Racah evaluation; 0 when any face triple is inadmissible.
XFloat sixj(const QContext& ctx, const SixLabels& s);

// The 24 S4-images j_{sigma(a)sigma(b)} (deduplicated).
std::vector<SixLabels> symmetry_orbit(const SixLabels& s);

// |LHS - RHS| of the Biedenharn-Elliot identity on the ten labels.
XFloat pentagon_residual(const QContext& ctx, Label j12, Label j13, Label j14,
                         Label j23, Label j24, Label j25, Label j34, Label j35,
                         Label j45);

// Coefficients of  P s(j23) + [2j23] Q(j23+1) s(j23+1)
//                + [2j23+2] Q(j23) s(j23-1) = 0.
// Q values are sqrt(|radicand|) with the radicand sign recorded separately.
struct SGCoefficients {
    XFloat P;
    XFloat Qplus;   // Q(j23+1)
    XFloat Qminus;  // Q(j23)
    int sign_qplus{1};
    int sign_qminus{1};
};
SGCoefficients sg_coefficients(const QContext& ctx, const SixLabels& s);

// Forward propagation: seeds are the symbol values at s.j23 and s.j23+1;
// returns the values at j23+2 ... j23+steps+1.
std::vector<XFloat> sg_propagate(const QContext& ctx, const XFloat& seed0,
                                 const XFloat& seed1, const SixLabels& s,
                                 int steps);

}  // namespace qsixj
