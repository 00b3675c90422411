// Command-line front end: single evaluations, label sweeps, geometry
// classification, and seeded verification suites, with CSV/JSON output.
//
// Exit codes: 0 success, 2 usage error, 3 domain error.
#include "qsixj/sweep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace qsixj;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Regime parse_regime(const std::string& s) {
    if (s == "rootq") return Regime::RootOfUnity;
    if (s == "realq") return Regime::PositiveReal;
    if (s == "classical") return Regime::Classical;
    throw UsageError("unknown regime: " + s);
}

Curvature parse_curvature(const std::string& s) {
    if (s == "spherical") return Curvature::Spherical;
    if (s == "hyperbolic") return Curvature::Hyperbolic;
    if (s == "euclidean") return Curvature::Euclidean;
    throw UsageError("unknown curvature: " + s);
}

// doubled-integer labels; with halfint the entries are spins j (integers or
// half-integers) and get doubled here
std::array<int, 6> parse_labels(const std::vector<double>& in, bool halfint) {
    if (in.size() != 6) throw UsageError("expected six labels");
    std::array<int, 6> out{};
    for (size_t i = 0; i < 6; ++i) {
        double v = halfint ? 2.0 * in[i] : in[i];
        double r = std::round(v);
        if (std::fabs(v - r) > 1e-9 || r < 0)
            throw UsageError("labels must be non-negative (half-)integers");
        out[i] = int(r);
    }
    return out;
}

void require_even_faces(const std::array<int, 6>& n) {
    const int faces[4][3] = {{0, 1, 2}, {2, 3, 4}, {1, 3, 5}, {0, 5, 4}};
    for (const auto& f : faces)
        if ((n[size_t(f[0])] + n[size_t(f[1])] + n[size_t(f[2])]) % 2 != 0)
            throw UsageError("face parity violated: each face sum of doubled "
                             "labels must be even");
}

std::string trimmed(const XFloat& v, int digits = 30) {
    return v.to_string(digits);
}

// ----------------------------------------------------------------- eval

int cmd_eval(const std::string& regime_s, double r, std::vector<double> labels,
             bool halfint, bool with_asym) {
    Regime regime = parse_regime(regime_s);
    if (regime != Regime::Classical && r <= 2.0)
        throw UsageError("--r must be > 2 for quantum regimes");
    std::array<int, 6> n = parse_labels(labels, halfint);
    require_even_faces(n);
    QContext ctx(regime, XFloat(r));
    SixLabels s = make_six(n[0], n[1], n[2], n[3], n[4], n[5]);
    json out;
    out["value"] = trimmed(sixj(ctx, s));
    if (with_asym) {
        if (regime == Regime::Classical)
            throw UsageError("--asym requires a quantum regime");
        ScaledFamily fam{s, XFloat(r), 1, regime};
        TetClass cls = classify(fam.lengths());
        out["case"] = to_string(cls);
        try {
            AsymEval a;
            switch (cls) {
                case TetClass::A_NonDegenerate: a = asym_nondegenerate(fam); break;
                case TetClass::B_Tangent: a = asym_tangent(fam); break;
                case TetClass::C_OneFaceDegenerate: a = asym_one_face(fam); break;
                case TetClass::Forbidden:
                    throw DomainError("no oscillatory asymptotic in the "
                                      "forbidden region");
                default: a = asym_degenerate(fam); break;
            }
            out["asym"] = trimmed(a.value);
        } catch (const DomainError&) {
            out["asym"] = nullptr;
        }
    }
    std::cout << out.dump() << "\n";
    return 0;
}

// ----------------------------------------------------------------- sweep

int cmd_sweep(const std::string& regime_s, double r, std::vector<double> fixed,
              int vary, int lo, int hi, int step, const std::string& columns,
              const std::string& format, const std::string& output) {
    SweepSpec spec;
    spec.regime = parse_regime(regime_s);
    if (spec.regime == Regime::Classical)
        throw UsageError("sweep requires a quantum regime");
    if (r <= 2.0) throw UsageError("--r must be > 2");
    spec.r = XFloat(r);
    if (vary < 0 || vary > 5) throw UsageError("--vary must be in 0..5");
    spec.varying_slot = vary;
    if (fixed.size() != 5) throw UsageError("expected five fixed labels");
    for (size_t i = 0, j = 0; i < 6; ++i) {
        if ((int)i == vary) continue;
        double v = fixed[j++];
        if (v < 0 || v != std::floor(v))
            throw UsageError("labels must be non-negative integers");
        spec.labels[i] = int(v);
    }
    if (step <= 0) throw UsageError("--step must be positive");
    spec.lo = lo;
    // drop a final partial step
    spec.hi = lo + ((hi - lo) / step) * step;

    if (!columns.empty()) {
        spec.want_exact = spec.want_envelope = spec.want_uniform = false;
        spec.want_tangent = spec.want_phase = spec.want_class = false;
        std::stringstream ss(columns);
        std::string c;
        while (std::getline(ss, c, ',')) {
            if (c == "exact") spec.want_exact = true;
            else if (c == "envelope") spec.want_envelope = true;
            else if (c == "uniform") spec.want_uniform = true;
            else if (c == "tangent") spec.want_tangent = true;
            else if (c == "phase") spec.want_phase = true;
            else if (c == "class") spec.want_class = true;
            else throw UsageError("unknown column: " + c);
        }
    }

    std::vector<SweepRow> rows = run_sweep(spec);
    std::string text;
    if (format == "csv") {
        text = sweep_csv(spec, rows);
    } else if (format == "json") {
        json arr = json::array();
        for (const SweepRow& row : rows) {
            json o;
            o["n"] = row.n;
            if (spec.want_exact) o["exact"] = row.exact;
            if (spec.want_envelope) {
                if (row.has_envelope) o["amplitude"] = row.amplitude;
                else o["amplitude"] = nullptr;
            }
            if (spec.want_uniform) {
                if (row.has_uniform) o["uniform"] = row.uniform;
                else o["uniform"] = nullptr;
            }
            if (spec.want_tangent) {
                if (row.has_tangent) o["tangent"] = row.tangent;
                else o["tangent"] = nullptr;
            }
            if (spec.want_phase) {
                if (row.has_phase) o["phi"] = row.phi;
                else o["phi"] = nullptr;
            }
            if (spec.want_class) {
                o["class"] = to_string(row.tet_class);
                if (row.has_det) o["detG"] = row.det;
                else o["detG"] = nullptr;
            }
            arr.push_back(std::move(o));
        }
        text = arr.dump(2) + "\n";
    } else {
        throw UsageError("unknown format: " + format);
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw UsageError("cannot open output file: " + output);
        f << text;
    }
    return 0;
}

// -------------------------------------------------------------- classify

int cmd_classify(const std::string& curvature_s, std::vector<double> ls) {
    Curvature cur = parse_curvature(curvature_s);
    if (ls.size() != 6) throw UsageError("expected six lengths");
    EdgeLengths L;
    L.curvature = cur;
    for (size_t i = 0; i < 6; ++i) {
        if (!std::isfinite(ls[i]) || ls[i] < 0.0)
            throw DomainError("lengths must be finite and non-negative");
        if (cur == Curvature::Spherical && ls[i] > M_PI)
            throw DomainError("spherical lengths must lie in [0, pi]");
        L.l[i] = XFloat(ls[i]);
    }
    TetClass cls = classify(L);
    json out;
    out["class"] = to_string(cls);
    out["detG"] = volume_det(L).to_double();
    try {
        DihedralAngles th = dihedral(L);
        json d = json::array();
        for (int e = 0; e < 6; ++e) d.push_back(th.interior(e).to_double());
        out["dihedral"] = d;
    } catch (const DomainError&) {
        out["dihedral"] = nullptr;
    }
    try {
        std::array<XFloat, 4> A = face_areas(L);
        json a = json::array();
        for (int i = 0; i < 4; ++i) a.push_back(A[size_t(i)].to_double());
        out["face_areas"] = a;
    } catch (const DomainError&) {
        out["face_areas"] = nullptr;
    }
    std::cout << out.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

SixLabels random_tuple(const QContext& ctx, std::mt19937_64& rng, int max_twice) {
    std::uniform_int_distribution<int> D(0, max_twice);
    for (;;) {
        SixLabels s = make_six(D(rng), D(rng), D(rng), D(rng), D(rng), D(rng));
        if (faces_admissible(ctx, s)) return s;
    }
}

int report(const std::string& suite, int count, int failures, double max_resid) {
    std::printf("%s: %d/%d passed, max residual %.3e\n", suite.c_str(),
                count - failures, count, max_resid);
    return failures == 0 ? 0 : 1;
}

int verify_symmetry(int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> R(12.0, 50.0);
    int failures = 0;
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        double r = std::floor(R(rng));
        QContext ctx(Regime::RootOfUnity, XFloat(r));
        SixLabels s = random_tuple(ctx, rng, int(r) - 2);
        XFloat v0 = sixj(ctx, s);
        double scale = std::max(std::fabs(v0.to_double()), 1e-300);
        double resid = 0.0;
        for (const SixLabels& t : symmetry_orbit(s))
            resid = std::max(resid,
                             std::fabs((sixj(ctx, t) - v0).to_double()) / scale);
        worst = std::max(worst, resid);
        bool ok = resid <= 1e-25;
        if (!ok) ++failures;
        std::printf("  [%s] r=%g resid=%.3e\n", ok ? "ok" : "FAIL", r, resid);
    }
    return report("symmetry", count, failures, worst);
}

int verify_pentagon(int count, unsigned seed, double r, Regime regime) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> D(0, 12);
    QContext ctx(regime, XFloat(r));
    int failures = 0, done = 0;
    double worst = 0.0;
    while (done < count) {
        Label j12(D(rng)), j13(D(rng)), j14(D(rng)), j23(D(rng)), j24(D(rng)),
            j25(D(rng)), j34(D(rng)), j35(D(rng)), j45(D(rng));
        if (!faces_admissible(ctx, SixLabels{j23, j34, j24, j14, j12, j13}) ||
            !faces_admissible(ctx, SixLabels{j23, j34, j24, j45, j25, j35}))
            continue;
        XFloat lhs = sixj(ctx, SixLabels{j23, j34, j24, j14, j12, j13}) *
                     sixj(ctx, SixLabels{j23, j34, j24, j45, j25, j35});
        XFloat res =
            pentagon_residual(ctx, j12, j13, j14, j23, j24, j25, j34, j35, j45);
        double rel =
            res.to_double() / std::max(std::fabs(lhs.to_double()), 1e-10);
        worst = std::max(worst, rel);
        bool ok = rel <= 1e-20;
        if (!ok) ++failures;
        std::printf("  [%s] resid=%.3e\n", ok ? "ok" : "FAIL", rel);
        ++done;
    }
    return report("pentagon", count, failures, worst);
}

int verify_recursion(int count, unsigned seed) {
    int failures = 0, total = 0;
    double worst = 0.0;
    for (double r : {40.0, 80.0, 160.0}) {
        std::mt19937_64 rng(seed);
        QContext ctx(Regime::RootOfUnity, XFloat(r));
        int done = 0;
        while (done < count) {
            SixLabels s = random_tuple(ctx, rng, int(r) - 2);
            SixLabels up = s, dn = s;
            up.j23 = Label(s.j23.twice + 2);
            dn.j23 = Label(s.j23.twice - 2);
            if (dn.j23.twice < 0 || !faces_admissible(ctx, up) ||
                !faces_admissible(ctx, dn))
                continue;
            SGCoefficients sg = sg_coefficients(ctx, s);
            XFloat a = sg.P * sixj(ctx, s);
            XFloat b = ctx.qint(s.j23.twice) *
                       (XFloat(double(sg.sign_qplus)) * sg.Qplus) *
                       sixj(ctx, up);
            XFloat c = ctx.qint(s.j23.twice + 2) *
                       (XFloat(double(sg.sign_qminus)) * sg.Qminus) *
                       sixj(ctx, dn);
            double m = std::max({std::fabs(a.to_double()),
                                 std::fabs(b.to_double()),
                                 std::fabs(c.to_double()), 1e-300});
            double rel = std::fabs((a + b + c).to_double()) / m;
            worst = std::max(worst, rel);
            bool ok = rel <= 1e-20;
            if (!ok) ++failures;
            std::printf("  [%s] r=%g resid=%.3e\n", ok ? "ok" : "FAIL", r, rel);
            ++done;
            ++total;
        }
    }
    return report("recursion", total, failures, worst);
}

int verify_stirling() {
    int failures = 0;
    // deviation of [kn]! from the q-Stirling approximation at n/r = 1/10
    QContext base(Regime::RootOfUnity, XFloat(100.0));
    const long long n = 10;
    double dev[2];
    int i = 0;
    for (long long k : {10, 20}) {
        QContext scaled(Regime::RootOfUnity, XFloat(100.0 * double(k)));
        dev[i++] = std::fabs(
            (exp(scaled.log_qfact(k * n) - log_qstirling(base, n, k)) -
             XFloat(1.0))
                .to_double());
    }
    double shrink = dev[0] / dev[1];
    std::printf("  [%s] qstirling deviation %.3e -> %.3e (x%.2f)\n",
                shrink >= 1.8 ? "ok" : "FAIL", dev[0], dev[1], shrink);
    if (shrink < 1.8) ++failures;
    double e1 = std::fabs((i_factor(XFloat(1e-6)) - consts::e()).to_double()) /
                consts::e().to_double();
    double e2 =
        std::fabs(i_factor(consts::half_pi()).to_double() - 2.0) / 2.0;
    std::printf("  [%s] I(1e-6) vs e: %.3e\n", e1 <= 1e-5 ? "ok" : "FAIL", e1);
    std::printf("  [%s] I(pi/2) vs 2: %.3e\n", e2 <= 1e-10 ? "ok" : "FAIL", e2);
    if (e1 > 1e-5) ++failures;
    if (e2 > 1e-10) ++failures;
    return report("stirling", 3, failures, std::max({shrink >= 1.8 ? 0.0 : 1.0,
                                                     e1, e2}));
}

int verify_limits() {
    // fixed labels, growing level: the quantum symbol approaches the
    // classical one
    QContext cl(Regime::Classical);
    SixLabels s = make_six(2, 2, 2, 2, 2, 2);
    XFloat want = sixj(cl, s);
    int failures = 0;
    double prev = 1e9, last = 0.0;
    for (int k : {2, 3, 4}) {
        double r = 10.0 * double(k) * double(k) * double(k);
        QContext ctx(Regime::RootOfUnity, XFloat(r));
        double gap =
            std::fabs(((sixj(ctx, s) - want) / want).to_double());
        bool ok = gap < prev;
        std::printf("  [%s] r=%g gap=%.3e\n", ok ? "ok" : "FAIL", r, gap);
        if (!ok) ++failures;
        prev = gap;
        last = gap;
    }
    if (last > 1e-3) ++failures;
    std::printf("  [%s] final gap %.3e <= 1e-3\n", last <= 1e-3 ? "ok" : "FAIL",
                last);
    return report("limits", 4, failures, last);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum 6j symbols: exact evaluation, semiclassical "
                 "asymptotics, sweeps, and verification"};
    app.require_subcommand(0, 1);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one 6j symbol");
    std::string ev_regime = "rootq";
    double ev_r = 0.0;
    std::vector<double> ev_labels;
    bool ev_halfint = false, ev_asym = false;
    eval->add_option("--regime", ev_regime, "rootq | realq | classical");
    eval->add_option("--r", ev_r, "level parameter r (> 2)");
    eval->add_option("--labels", ev_labels,
                     "six doubled-integer labels n12,n23,n13,n34,n14,n24")
        ->required()
        ->delimiter(',');
    eval->add_flag("--halfint", ev_halfint,
                   "labels are spins j (may be half-integral)");
    eval->add_flag("--asym", ev_asym,
                   "also print the applicable asymptotic and case tag");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep one label at fixed r");
    std::string sw_regime = "rootq", sw_columns, sw_format = "csv", sw_output;
    double sw_r = 0.0;
    std::vector<double> sw_labels;
    int sw_vary = 5, sw_lo = 0, sw_hi = 0, sw_step = 2;
    sweep->add_option("--regime", sw_regime, "rootq | realq");
    sweep->add_option("--r", sw_r, "level parameter r (> 2)")->required();
    sweep->add_option("--labels", sw_labels,
                      "five fixed doubled-integer labels in slot order")
        ->required()
        ->delimiter(',');
    sweep->add_option("--vary", sw_vary,
                      "varying slot index 0..5 (default 5 = n24)");
    sweep->add_option("--from", sw_lo, "grid start (doubled units)")->required();
    sweep->add_option("--to", sw_hi, "grid end, inclusive")->required();
    sweep->add_option("--step", sw_step, "grid step (default 2)");
    sweep->add_option("--columns", sw_columns,
                      "comma list of exact,envelope,uniform,tangent,phase,class");
    sweep->add_option("--format", sw_format, "csv | json");
    sweep->add_option("--output", sw_output, "output file (default stdout)");

    // classify
    auto* cls = app.add_subcommand("classify", "classify a length sextuple");
    std::string cl_curv = "spherical";
    std::vector<double> cl_lengths;
    cls->add_option("--curvature", cl_curv, "spherical | hyperbolic | euclidean");
    cls->add_option("--lengths", cl_lengths, "six edge lengths (radians)")
        ->required()
        ->delimiter(',');

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite;
    int vf_count = 25;
    unsigned vf_seed = 12345;
    double vf_r = 24.0;
    std::string vf_regime = "rootq";
    verify->add_option("suite", vf_suite,
                       "symmetry | pentagon | recursion | stirling | limits")
        ->required();
    verify->add_option("--count", vf_count, "instances per suite");
    verify->add_option("--seed", vf_seed, "RNG seed");
    verify->add_option("--r", vf_r, "level parameter where applicable");
    verify->add_option("--regime", vf_regime, "regime where applicable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(ev_regime, ev_r, ev_labels, ev_halfint, ev_asym);
        if (sweep->parsed())
            return cmd_sweep(sw_regime, sw_r, sw_labels, sw_vary, sw_lo, sw_hi,
                             sw_step, sw_columns, sw_format, sw_output);
        if (cls->parsed()) return cmd_classify(cl_curv, cl_lengths);
        if (verify->parsed()) {
            if (vf_suite == "symmetry") return verify_symmetry(vf_count, vf_seed);
            if (vf_suite == "pentagon")
                return verify_pentagon(vf_count, vf_seed, vf_r,
                                       parse_regime(vf_regime));
            if (vf_suite == "recursion") return verify_recursion(vf_count, vf_seed);
            if (vf_suite == "stirling") return verify_stirling();
            if (vf_suite == "limits") return verify_limits();
            throw UsageError("unknown suite: " + vf_suite);
        }
        std::cout << app.help();
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const BreakdownError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    }
}
