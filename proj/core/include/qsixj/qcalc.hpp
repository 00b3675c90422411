// Quantum integers [n], quantum factorials, triangle coefficients and
// admissibility, plus the q-Stirling approximation machinery, in all three
// q-regimes: q = exp(pi*i/r) (root of unity), q = exp(pi/r) (positive real),
// q = 1 (classical).
#pragma once

#include "qsixj/xfloat.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace qsixj {

enum class Regime { RootOfUnity, PositiveReal, Classical };

// A spin label j stored exactly as the doubled integer 2j.
struct Label {
    int twice{0};

    constexpr Label() = default;
    constexpr explicit Label(int t) : twice(t) {}
    double j() const { return twice / 2.0; }
    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

// Evaluation regime plus the level parameter r (> 2; need not be integral).
// Carries shared lazy caches for quantum factorials; cheap to copy.
class QContext {
  public:
    explicit QContext(Regime regime, XFloat r = XFloat(0.0));

    Regime regime() const { return regime_; }
    const XFloat& r() const { return r_; }
    bool r_integral() const { return r_integral_; }
    long long r_int() const { return r_int_; }  // valid when r_integral()

    XFloat qint(long long n) const;
    // Linear-domain factorial [n]! (may be 0 at integral r for n >= r).
    XFloat qfact(long long n) const;
    // ln([n]!); DomainError if any factor is <= 0.
    XFloat log_qfact(long long n) const;

  private:
    struct Cache;
    Regime regime_;
    XFloat r_;
    bool r_integral_{false};
    long long r_int_{0};
    std::shared_ptr<Cache> cache_;
};

inline XFloat qint(const QContext& ctx, long long n) { return ctx.qint(n); }
inline XFloat qfact(const QContext& ctx, long long n) { return ctx.qfact(n); }
inline XFloat log_qfact(const QContext& ctx, long long n) { return ctx.log_qfact(n); }

// Triangle + parity (+ level cap j1+j2+j3 <= r-2 at integral r, root of unity).
bool admissible(const QContext& ctx, Label a, Label b, Label c);

// Triangle coefficient Delta(abc): positive square root of the absolute
// value of the factorial ratio.  DomainError on an inadmissible triple.
XFloat qdelta(const QContext& ctx, Label a, Label b, Label c);
XFloat log_qdelta(const QContext& ctx, Label a, Label b, Label c);

// I(x) = sin(x) exp(-x^{-1} int_0^x ln(sin y) dy) for 0 < x < pi;
// I(0+) = e and I(pi/2) = 2.
XFloat i_factor(const XFloat& x);

// Right-hand side of the q-Stirling approximation of [kn]! at level k*r
// (i.e. q = exp(pi*i/(k r))): sqrt(2 pi) [kn]^{kn+1/2} I(n pi/r)^{-kn}.
// The log variant returns its logarithm (the magnitudes overflow quickly).
XFloat log_qstirling(const QContext& ctx, long long n, long long k);
XFloat qstirling(const QContext& ctx, long long n, long long k);

// r(k) = k (r - 2) + 2, the level schedule of the scaled families.
struct LevelSchedule {
    XFloat base_r;
    XFloat r_at(int k) const {
        return XFloat(double(k)) * (base_r - XFloat(2.0)) + XFloat(2.0);
    }
};

}  // namespace qsixj
