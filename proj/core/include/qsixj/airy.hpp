// Real Airy functions Ai, Bi (with first derivatives) in double-double
// precision: Maclaurin series for |x| <= 8, Poincare asymptotic expansions
// beyond (the oscillatory sine/cosine pair for x < 0).
#pragma once

#include "qsixj/xfloat.hpp"

namespace qsixj {

struct AiryPair {
    XFloat ai, bi;    // Ai(x), Bi(x)
    XFloat dai, dbi;  // Ai'(x), Bi'(x)

    // Wronskian Ai Bi' - Ai' Bi; equals 1/pi on exact values
    XFloat wronskian() const { return ai * dbi - dai * bi; }
};

// Branch selection at |x| = 8; both branches achieve ~1e-12 on the overlap.
AiryPair airy(const XFloat& x);

// The two evaluation branches, exposed for crossover-continuity checks.
AiryPair airy_series(const XFloat& x);
AiryPair airy_asymptotic(const XFloat& x);

}  // namespace qsixj
