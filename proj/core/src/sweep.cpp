#include "qsixj/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace qsixj {

namespace {

int worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("QSIXJ_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && (unsigned long)cap < n) n = (unsigned)cap;
    }
    if ((std::size_t)n > jobs) n = (unsigned)jobs;
    return (int)std::max(1u, n);
}

void eval_row(const SweepSpec& spec, const std::vector<PhasePoint>& phases,
              std::size_t i, SweepRow& row) {
    const int n = spec.lo + (int)i * spec.step;
    row.n = n;

    std::array<int, 6> lab = spec.labels;
    lab[(std::size_t)spec.varying_slot] = n;
    ScaledFamily fam{make_six(lab[0], lab[1], lab[2], lab[3], lab[4], lab[5]),
                     spec.r, 1, spec.regime};

    if (spec.want_exact) row.exact = fam.exact().to_double();

    EdgeLengths L = fam.lengths();
    row.tet_class = classify(L);

    const PhasePoint& pp = phases[i];
    row.det = pp.det.to_double();
    row.has_det = true;
    if (pp.in_window && spec.want_phase) {
        row.phi = pp.phi.to_double();
        row.has_phase = true;
    }
    if (spec.want_envelope && row.tet_class == TetClass::A_NonDegenerate) {
        try {
            row.amplitude = asym_envelope(L, spec.r).amplitude.to_double();
            row.has_envelope = true;
        } catch (const DomainError&) {
        }
    }
    if (spec.want_uniform) {
        try {
            row.uniform = asym_uniform(fam, spec.varying_slot).value.to_double();
            row.has_uniform = true;
        } catch (const DomainError&) {
        }
    }
    if (spec.want_tangent) {
        try {
            row.tangent = asym_tangent(fam).value.to_double();
            row.has_tangent = true;
        } catch (const DomainError&) {
        }
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.step <= 0) throw DomainError("run_sweep: step must be positive");
    std::vector<SweepRow> rows;
    if (spec.hi < spec.lo) return rows;
    const std::size_t count = (std::size_t)((spec.hi - spec.lo) / spec.step) + 1;
    rows.resize(count);

    // one shared phase table so the Schlafli anchor is common to all rows
    std::array<int, 6> lab = spec.labels;
    lab[(std::size_t)spec.varying_slot] = spec.lo;
    ScaledFamily base{make_six(lab[0], lab[1], lab[2], lab[3], lab[4], lab[5]),
                      spec.r, 1, spec.regime};
    EdgeLengths base_lengths = base.lengths();
    std::vector<XFloat> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        int n = spec.lo + (int)i * spec.step;
        grid.push_back(consts::pi() * XFloat(double(n + 1)) / spec.r);
    }
    std::vector<PhasePoint> phases =
        schlafli_phase(base_lengths, spec.varying_slot, grid, spec.r);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            eval_row(spec, phases, i, rows[i]);
    };
    int nw = worker_count(count);
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve((std::size_t)nw);
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out = "n";
    if (spec.want_exact) out += ",exact";
    if (spec.want_envelope) out += ",amplitude,amplitude_neg";
    if (spec.want_uniform) out += ",uniform";
    if (spec.want_tangent) out += ",tangent";
    if (spec.want_phase) out += ",phi";
    if (spec.want_class) out += ",class,detG";
    out += "\n";
    for (const SweepRow& r : rows) {
        out += std::to_string(r.n);
        if (spec.want_exact) out += "," + fmt17(r.exact);
        if (spec.want_envelope) {
            if (r.has_envelope)
                out += "," + fmt17(r.amplitude) + "," + fmt17(-r.amplitude);
            else
                out += ",,";
        }
        if (spec.want_uniform)
            out += r.has_uniform ? "," + fmt17(r.uniform) : std::string(",");
        if (spec.want_tangent)
            out += r.has_tangent ? "," + fmt17(r.tangent) : std::string(",");
        if (spec.want_phase)
            out += r.has_phase ? "," + fmt17(r.phi) : std::string(",");
        if (spec.want_class) {
            out += std::string(",") + to_string(r.tet_class);
            out += r.has_det ? "," + fmt17(r.det) : std::string(",");
        }
        out += "\n";
    }
    return out;
}

}  // namespace qsixj
