// Semiclassical asymptotics of the quantum 6j symbols along scaled label
// families: the oscillatory non-degenerate formula, the Airy tangent and
// uniform turning-point formulas, the degenerate closed forms, the one-face
// (single Racah term) formula, and the classically-forbidden decay probe.
#pragma once

#include "qsixj/airy.hpp"
#include "qsixj/sixj.hpp"
#include "qsixj/tetgeom.hpp"

#include <vector>

namespace qsixj {

// The sequence s(k) = {k j_ab} at level r(k) = k(r-2)+2, with geometric edge
// lengths l_ab(k) = pi (k n_ab + 1)/r(k) (n = 2j; the +1 is the half-form
// shift) and limiting lengths pi n_ab / (r-2).  RootOfUnity pairs with
// spherical geometry, PositiveReal with hyperbolic.
struct ScaledFamily {
    SixLabels base;
    XFloat base_r;
    int k{1};
    Regime regime{Regime::RootOfUnity};

    XFloat r_at() const;            // k (r - 2) + 2
    SixLabels labels() const;       // doubled integers k n_ab
    QContext context() const;       // regime at level r(k)
    Curvature curvature() const;
    EdgeLengths lengths() const;        // l_ab(k), the shifted lengths
    EdgeLengths limit_lengths() const;  // k -> infinity
    XFloat exact() const;               // the 6j value at this member
};

struct AsymEval {
    XFloat value;
    XFloat amplitude;   // envelope (oscillatory cases) or |value|
    XFloat phase;       // accumulated Schlafli phase, or the 0/pi sign phase
    TetClass tet_class{TetClass::A_NonDegenerate};
    bool conjectural{false};
};

// Non-degenerate case: value = amplitude * cos(phi + pi/4) with
//   amplitude = 2 pi / (r^{3/2} |det Gram|^{1/4}),
//   phi = (r / 2 pi) (sum theta_ab l_ab -+ 2 Vol)   (-: spherical, +: hyperbolic),
// theta the interior dihedral angles, Vol by Schlafli integration.
AsymEval asym_nondegenerate(const ScaledFamily& fam);
// the same evaluated at explicit geometry (class A required)
AsymEval asym_envelope(const EdgeLengths& lengths, const XFloat& r_eff);

// Tangent (zero-volume, non-degenerate faces) case:
//   r^{-4/3} 2^{2/3} 3^{-2/3} pi^{4/3} Gamma(2/3)^{-1} (A1 A2 A3 A4)^{-1/6}
// times the +-1 sign from the labels whose dihedral angle is pi.  Accepts
// members jittering about the tangent boundary (classes A/B/Forbidden with
// all faces non-degenerate).
AsymEval asym_tangent(const ScaledFamily& fam);
// unsigned amplitude factor at explicit geometry
XFloat tangent_amplitude(const EdgeLengths& lengths, const XFloat& r_eff);

// Uniform turning-point formula (valid across the tangent boundary):
//   2 pi^{3/2} Z^{1/4} r^{-3/2} |det Gram|^{-1/4} *
//     { cos(phi0) Ai(-Z) - sin(phi0) Bi(-Z)   phi - phi0 <= 0
//       cos(phi0) Bi(-Z) - sin(phi0) Ai(-Z)   phi - phi0 > 0 }
// with Z = ((3/2)|phi - phi0|)^{2/3} and phi0 the phase of the limiting
// configuration (exterior angles binned to {0, pi} at pi/2).  At Z = 0 the
// ratio Z^{1/4}/|det|^{1/4} is replaced by its limit (r / 4 pi A1A2A3A4)^{1/6}.
AsymEval asym_uniform(const ScaledFamily& fam, int varying_edge);

// Degenerate closed forms for limiting classes D, E, F, G.
AsymEval asym_degenerate(const ScaledFamily& fam);

// One degenerate face with the additive relation n_pq + n_qs = n_ps
// (single-term Racah sum); conjectural cancellation of the I factors.
// The perimeter branch (face perimeter 2 pi) is unsupported.
AsymEval asym_one_face(const ScaledFamily& fam);

struct ForbiddenRow {
    int k;
    XFloat abs_value;    // |s(k)|
    XFloat log_over_r;   // log|s(k)| / r(k); 0 when the symbol is exactly 0
    bool exact_zero{false};
};
struct ForbiddenReport {
    std::vector<ForbiddenRow> rows;
    int burn_in{0};
    bool decaying{false};  // past burn_in: |s| strictly shrinking, log|s|/r < 0
};
// Decay table for a family whose limiting lengths are classically forbidden.
ForbiddenReport forbidden_probe(const ScaledFamily& fam,
                                const std::vector<int>& k_list);

// Relabel vertices: perm[i] is the old vertex sitting at new position i+1.
SixLabels apply_vertex_perm(const SixLabels& s, const std::array<int, 4>& perm);

// theta^0 bins of the exterior dihedral angles: 0 if theta <= pi/2 else 1
// (meaning pi); DomainError when an angle sits within `guard` of pi/2.
std::array<int, 6> theta_limit_bins(const EdgeLengths& lengths,
                                    double guard = 1e-12);

}  // namespace qsixj
