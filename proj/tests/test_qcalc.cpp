#include "doctest.h"
#include "qsixj/qcalc.hpp"

#include <cmath>

using namespace qsixj;

namespace {
double rel_err(const XFloat& got, const XFloat& want) {
    if (want.is_zero()) return std::fabs(got.to_double());
    return std::fabs(((got - want) / want).to_double());
}
}  // namespace

TEST_CASE("quantum integers") {
    QContext ru(Regime::RootOfUnity, XFloat(10.0));
    CHECK(rel_err(ru.qint(1), XFloat(1.0)) <= 1e-30);
    CHECK(rel_err(ru.qint(2), XFloat(2.0) * cos(consts::pi() / XFloat(10.0))) <= 1e-28);
    CHECK(std::fabs(ru.qint(10).to_double()) <= 1e-28);  // [r] = 0 at integral r

    QContext cl(Regime::Classical);
    CHECK(cl.qint(7) == XFloat(7.0));

    QContext pr(Regime::PositiveReal, XFloat(10.0));
    CHECK(rel_err(pr.qint(3),
                  sinh(XFloat(3.0) * consts::pi() / XFloat(10.0)) /
                      sinh(consts::pi() / XFloat(10.0))) <= 1e-28);

    // oddness and reflection
    for (const QContext& ctx : {ru, pr, cl}) {
        for (int n = 0; n <= 10; ++n) {
            CHECK(std::fabs((ctx.qint(-n) + ctx.qint(n)).to_double()) <= 1e-27);
        }
    }
    for (int n = 0; n <= 10; ++n) {
        CHECK(std::fabs((ru.qint(10 - n) - ru.qint(n)).to_double()) <= 1e-27);
    }
}

TEST_CASE("quantum factorials") {
    QContext ru5(Regime::RootOfUnity, XFloat(5.0));
    CHECK(ru5.qfact(0) == XFloat(1.0));
    CHECK(rel_err(ru5.qfact(1), XFloat(1.0)) <= 1e-30);
    CHECK(rel_err(ru5.qfact(3),
                  XFloat::from_string("2.618033988749894848204586834365638")) <= 1e-28);

    QContext cl(Regime::Classical);
    CHECK(rel_err(cl.qfact(5), XFloat(120.0)) <= 1e-30);
    CHECK(rel_err(cl.log_qfact(5), log(XFloat(120.0))) <= 1e-28);

    // log/linear consistency wherever both representable
    QContext pr(Regime::PositiveReal, XFloat(30.0));
    QContext ru(Regime::RootOfUnity, XFloat(30.0));
    for (long long n = 2; n <= 25; ++n) {
        CHECK(rel_err(pr.log_qfact(n), log(pr.qfact(n))) <= 1e-25);
        CHECK(rel_err(ru.log_qfact(n), log(ru.qfact(n))) <= 1e-25);
        CHECK(rel_err(cl.log_qfact(n), log(cl.qfact(n))) <= 1e-25);
    }
}

TEST_CASE("admissibility") {
    QContext ru(Regime::RootOfUnity, XFloat(10.0));
    CHECK(admissible(ru, Label(1), Label(1), Label(2)));
    CHECK_FALSE(admissible(ru, Label(1), Label(1), Label(1)));  // parity
    CHECK_FALSE(admissible(ru, Label(2), Label(2), Label(6)));  // triangle
    QContext r4(Regime::RootOfUnity, XFloat(4.0));
    CHECK_FALSE(admissible(r4, Label(2), Label(2), Label(2)));  // level cap
    // level cap waived off the integers and in other regimes
    QContext r4x(Regime::RootOfUnity, XFloat(4.5));
    CHECK(admissible(r4x, Label(2), Label(2), Label(2)));
    QContext cl(Regime::Classical);
    CHECK(admissible(cl, Label(2), Label(2), Label(2)));
}

TEST_CASE("triangle coefficients") {
    QContext ru(Regime::RootOfUnity, XFloat(200.0));
    CHECK(qdelta(ru, Label(0), Label(0), Label(0)) == XFloat(1.0));
    CHECK(rel_err(qdelta(ru, Label(1), Label(1), Label(2)),
                  XFloat::from_string("0.4083406444272118748389382140893257")) <= 1e-28);
    QContext cl(Regime::Classical);
    CHECK(rel_err(qdelta(cl, Label(2), Label(2), Label(2)),
                  XFloat::from_string("0.2041241452319315081831070062254909")) <= 1e-28);
    CHECK_THROWS_AS(qdelta(cl, Label(1), Label(1), Label(1)), DomainError);
    // log variant agrees
    QContext pr(Regime::PositiveReal, XFloat(50.0));
    XFloat lin = qdelta(pr, Label(4), Label(6), Label(8));
    CHECK(rel_err(exp(log_qdelta(pr, Label(4), Label(6), Label(8))), lin) <= 1e-25);
}

TEST_CASE("I(x) log-sine factor") {
    CHECK(rel_err(i_factor(XFloat(1e-6)), consts::e()) <= 1e-5);
    CHECK(rel_err(i_factor(consts::half_pi()), XFloat(2.0)) <= 1e-10);
    CHECK(rel_err(i_factor(XFloat(1.0)),
                  XFloat::from_string("2.42084453264884312279385011049")) <= 1e-18);
    CHECK_THROWS_AS(i_factor(XFloat(0.0)), DomainError);
    CHECK_THROWS_AS(i_factor(XFloat(3.15)), DomainError);
}

TEST_CASE("powerp bound: quantum-to-classical factorial drift") {
    // |ln([n]!/n!)| ~ C n^3 / r^2: doubling r shrinks it by >= 3.9
    QContext cl(Regime::Classical);
    long long n = 8;
    double prev = 0;
    for (int i = 0; i < 3; ++i) {
        double r = 64.0 * (1 << i);
        QContext ru(Regime::RootOfUnity, XFloat(r));
        double drift = std::fabs((ru.log_qfact(n) - cl.log_qfact(n)).to_double());
        if (i > 0) CHECK(prev / drift >= 3.9);
        prev = drift;
    }
}

TEST_CASE("q-Stirling approximation") {
    // deviation of [kn]!/rhs from 1 shrinks at least ~linearly in k
    QContext base(Regime::RootOfUnity, XFloat(40.0));
    long long n = 2;
    double dev32, dev64;
    {
        QContext s32(Regime::RootOfUnity, XFloat(32.0 * 40.0));
        dev32 = std::fabs(
            (exp(s32.log_qfact(32 * n) - log_qstirling(base, n, 32)) - XFloat(1.0))
                .to_double());
        QContext s64(Regime::RootOfUnity, XFloat(64.0 * 40.0));
        dev64 = std::fabs(
            (exp(s64.log_qfact(64 * n) - log_qstirling(base, n, 64)) - XFloat(1.0))
                .to_double());
    }
    CHECK(dev32 / dev64 >= 1.8);
    CHECK(dev64 < 0.01);
}

TEST_CASE("level schedule") {
    LevelSchedule sched{XFloat(10.0)};
    CHECK(sched.r_at(1) == XFloat(10.0));
    CHECK(sched.r_at(3) == XFloat(26.0));
    CHECK(sched.r_at(4) > sched.r_at(3));
}
