#include "qsixj/qcalc.hpp"

#include <cmath>

namespace qsixj {

namespace {

// ln(sinh x) without overflow: x - ln 2 + ln(1 - e^{-2x}) for large x.
XFloat ln_sinh(const XFloat& x) {
    if (x.hi <= 0.0) throw DomainError("ln_sinh: non-positive argument");
    if (x.hi < 0.35) return log(sinh(x));
    return x - consts::ln2() + log(XFloat(1.0) - exp(ldexp(x, 1) * XFloat(-1.0)));
}

}  // namespace

struct QContext::Cache {
    std::mutex m;
    std::vector<XFloat> fact;      // fact[n] = [n]!
    std::vector<XFloat> log_fact;  // log_fact[n] = ln([n]!)
    bool log_poisoned_at = false;  // first index whose factor was <= 0
    long long log_poison_index = -1;
    XFloat sin_unit;  // sin(pi/r) or sinh(pi/r); unused in Classical
};

QContext::QContext(Regime regime, XFloat r) : regime_(regime), r_(r) {
    if (regime_ != Regime::Classical) {
        if (!(r_ > XFloat(2.0))) throw DomainError("QContext: r must exceed 2");
        XFloat fl = qsixj::floor(r_);
        r_integral_ = (fl == r_);
        r_int_ = (long long)fl.to_double();
    }
    cache_ = std::make_shared<Cache>();
    cache_->fact.push_back(XFloat(1.0));      // [0]! = 1
    cache_->log_fact.push_back(XFloat(0.0));  // ln [0]! = 0
    switch (regime_) {
        case Regime::RootOfUnity: cache_->sin_unit = sin(consts::pi() / r_); break;
        case Regime::PositiveReal: cache_->sin_unit = sinh(consts::pi() / r_); break;
        case Regime::Classical: break;
    }
}

XFloat QContext::qint(long long n) const {
    if (n < 0) return -qint(-n);
    if (n == 0) return XFloat(0.0);
    switch (regime_) {
        case Regime::RootOfUnity:
            return sin(consts::pi() * XFloat(n) / r_) / cache_->sin_unit;
        case Regime::PositiveReal:
            return sinh(consts::pi() * XFloat(n) / r_) / cache_->sin_unit;
        case Regime::Classical:
        default:
            return XFloat(n);
    }
}

XFloat QContext::qfact(long long n) const {
    if (n < 0) throw DomainError("qfact: negative argument");
    std::lock_guard<std::mutex> lock(cache_->m);
    auto& f = cache_->fact;
    while ((long long)f.size() <= n) {
        long long m = (long long)f.size();
        f.push_back(f.back() * qint(m));
    }
    return f[n];
}

XFloat QContext::log_qfact(long long n) const {
    if (n < 0) throw DomainError("log_qfact: negative argument");
    std::lock_guard<std::mutex> lock(cache_->m);
    auto& lf = cache_->log_fact;
    while ((long long)lf.size() <= n) {
        long long m = (long long)lf.size();
        if (cache_->log_poisoned_at && m >= cache_->log_poison_index) break;
        XFloat ln_m;
        switch (regime_) {
            case Regime::RootOfUnity: {
                XFloat s = sin(consts::pi() * XFloat(m) / r_);
                if (s.hi <= 0.0) {
                    cache_->log_poisoned_at = true;
                    cache_->log_poison_index = m;
                    goto done;
                }
                ln_m = log(s) - log(cache_->sin_unit);
                break;
            }
            case Regime::PositiveReal:
                ln_m = ln_sinh(consts::pi() * XFloat(m) / r_) - ln_sinh(consts::pi() / r_);
                break;
            case Regime::Classical:
            default:
                ln_m = log(XFloat(m));
                break;
        }
        lf.push_back(lf.back() + ln_m);
    }
done:
    if (n >= (long long)lf.size())
        throw DomainError("log_qfact: factor [" +
                          std::to_string(cache_->log_poison_index) +
                          "] is not positive");
    return lf[n];
}

bool admissible(const QContext& ctx, Label a, Label b, Label c) {
    int s = a.twice + b.twice + c.twice;
    if (a.twice < 0 || b.twice < 0 || c.twice < 0) return false;
    if (s % 2 != 0) return false;
    if (a.twice + b.twice < c.twice) return false;
    if (b.twice + c.twice < a.twice) return false;
    if (a.twice + c.twice < b.twice) return false;
    if (ctx.regime() == Regime::RootOfUnity && ctx.r_integral() &&
        s / 2 > ctx.r_int() - 2)
        return false;
    return true;
}

namespace {
struct DeltaArgs {
    long long x1, x2, x3, x4;
};
DeltaArgs delta_args(const QContext& ctx, Label a, Label b, Label c) {
    if (!admissible(ctx, a, b, c)) throw DomainError("qdelta: inadmissible triple");
    return DeltaArgs{(a.twice + b.twice - c.twice) / 2,
                     (a.twice - b.twice + c.twice) / 2,
                     (-a.twice + b.twice + c.twice) / 2,
                     (a.twice + b.twice + c.twice) / 2 + 1};
}
}  // namespace

XFloat qdelta(const QContext& ctx, Label a, Label b, Label c) {
    DeltaArgs d = delta_args(ctx, a, b, c);
    XFloat ratio = ctx.qfact(d.x1) * ctx.qfact(d.x2) * ctx.qfact(d.x3) / ctx.qfact(d.x4);
    return sqrt(abs(ratio));
}

XFloat log_qdelta(const QContext& ctx, Label a, Label b, Label c) {
    DeltaArgs d = delta_args(ctx, a, b, c);
    return ldexp(ctx.log_qfact(d.x1) + ctx.log_qfact(d.x2) + ctx.log_qfact(d.x3) -
                     ctx.log_qfact(d.x4),
                 -1);
}

// ------------------------------------------------------------------ I(x)

namespace {

// Adaptive Simpson for smooth integrands, absolute tolerance.
template <class F>
XFloat simpson_rec(const F& f, const XFloat& a, const XFloat& b, const XFloat& fa,
                   const XFloat& fm, const XFloat& fb, const XFloat& whole,
                   double tol, int depth) {
    XFloat m = (a + b) * XFloat(0.5);
    XFloat lm = (a + m) * XFloat(0.5), rm = (m + b) * XFloat(0.5);
    XFloat flm = f(lm), frm = f(rm);
    XFloat h6 = (b - a) / XFloat(12.0);
    XFloat left = h6 * (fa + XFloat(4.0) * flm + fm);
    XFloat right = h6 * (fm + XFloat(4.0) * frm + fb);
    XFloat delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta.to_double()) < 15.0 * tol)
        return left + right + delta / XFloat(15.0);
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
XFloat adaptive_simpson(const F& f, const XFloat& a, const XFloat& b, double tol) {
    XFloat m = (a + b) * XFloat(0.5);
    XFloat fa = f(a), fm = f(m), fb = f(b);
    XFloat whole = (b - a) / XFloat(6.0) * (fa + XFloat(4.0) * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

XFloat i_factor(const XFloat& x) {
    if (!(x > XFloat(0.0)) || !(x < consts::pi()))
        throw DomainError("i_factor: argument outside (0, pi)");
    // int_0^x ln sin = (x ln x - x) + int_0^x ln(sin y / y) dy; the first
    // piece carries the endpoint singularity exactly, the remainder is smooth.
    auto g = [](const XFloat& y) -> XFloat {
        if (y.is_zero()) return XFloat(0.0);
        return log(sin(y) / y);
    };
    XFloat smooth = adaptive_simpson(g, XFloat(0.0), x, 1e-22);
    XFloat integral = x * log(x) - x + smooth;
    return sin(x) * exp(-integral / x);
}

// ------------------------------------------------------------------ q-Stirling

XFloat log_qstirling(const QContext& ctx, long long n, long long k) {
    if (ctx.regime() != Regime::RootOfUnity)
        throw DomainError("qstirling: root-of-unity regime required");
    if (n <= 0 || k <= 0) throw DomainError("qstirling: n, k must be positive");
    XFloat x = consts::pi() * XFloat(n) / ctx.r();  // = kn * pi / (k r)
    if (!(x < consts::pi())) throw DomainError("qstirling: n pi / r outside (0, pi)");
    QContext scaled(Regime::RootOfUnity, XFloat(double(k)) * ctx.r());
    XFloat kn(double(k * n));
    XFloat qkn = scaled.qint(k * n);
    if (qkn.hi <= 0.0) throw DomainError("qstirling: [kn] not positive");
    return log(consts::sqrt_two_pi()) + (kn + XFloat(0.5)) * log(qkn) -
           kn * log(i_factor(x));
}

XFloat qstirling(const QContext& ctx, long long n, long long k) {
    return exp(log_qstirling(ctx, n, k));
}

}  // namespace qsixj
