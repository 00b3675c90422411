// Label sweeps at fixed level r: exact symbols alongside the asymptotic
// columns (envelope, uniform, tangent, Schlafli phase) over a grid of one
// varying doubled-integer label, computed concurrently and serialized to
// CSV deterministically.
#pragma once

#include "qsixj/asym.hpp"

#include <string>
#include <vector>

namespace qsixj {

struct SweepSpec {
    Regime regime{Regime::RootOfUnity};
    XFloat r{XFloat(0.0)};
    // doubled-integer labels in slot order (n12, n23, n13, n34, n14, n24);
    // the varying slot's entry is ignored
    std::array<int, 6> labels{};
    int varying_slot{5};
    // grid lo..hi inclusive in doubled units; a final partial step is dropped
    int lo{0};
    int hi{0};
    int step{2};
    bool want_exact{true};
    bool want_envelope{true};
    bool want_uniform{true};
    bool want_tangent{false};
    bool want_phase{true};
    bool want_class{true};
};

// One grid point.  Geometry columns (amplitude, uniform, tangent, phi, det)
// are meaningful only when the corresponding has_* flag is set; rows outside
// the existence window carry tet_class = Forbidden and no geometry.
struct SweepRow {
    int n{0};
    double exact{0.0};
    double amplitude{0.0};
    double uniform{0.0};
    double tangent{0.0};
    double phi{0.0};
    double det{0.0};
    TetClass tet_class{TetClass::Forbidden};
    bool has_envelope{false};
    bool has_uniform{false};
    bool has_tangent{false};
    bool has_phase{false};
    bool has_det{false};
};

// Evaluate the sweep; row order follows the grid.  Worker count is capped by
// the QSIXJ_THREADS environment variable (default: hardware parallelism).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Deterministic CSV: header always present, ',' separator, '.' decimal
// point, LF line endings, 17 significant digits, empty cells where a column
// is undefined.  Columns appear iff requested in the spec.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace qsixj
