#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opnet/common.hpp"

namespace opnet::harness {

struct FitResult {
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Least squares on (ln axis, ln error). Requires >= 3 positive pairs.
FitResult fit_slope(const std::vector<std::pair<double, double>>& pairs);

struct SweepRow {
    double axis_value = 0.0;
    double error_linf = 0.0;
    double error_l2 = 0.0;
    double runtime_ms = 0.0;  // measured; not written to CSV (determinism)
    double aux1 = 0.0;
    double aux2 = 0.0;
};

struct ConvergenceReport {
    std::string axis_name;
    std::vector<SweepRow> rows;
    std::optional<FitResult> fit;  // only when every error_linf > 0
};

/// One row per axis value via `cell`; the fit uses (axis, error_linf).
/// A throwing cell aborts the sweep with the failing axis value named.
ConvergenceReport run_sweep(const std::string& axis_name, const std::vector<double>& values,
                            const std::function<SweepRow(double)>& cell);

/// Validates the sweep-spec invariants: >= 3 values, strictly increasing.
void validate_axis(const std::vector<double>& values);

/// CSV with the fixed header axis,value,error_linf,error_l2,runtime_ms,
/// aux1,aux2. Floats use shortest round-trip formatting. The runtime_ms
/// column is written as 0: the byte-identical determinism contract cannot
/// hold for wall-clock values (measured timing stays in the report struct).
std::string report_to_csv(const ConvergenceReport& report);

/// Writes through a temp file and renames, so a partial file is never
/// observable at `path`.
void write_atomic(const std::string& path, const std::string& contents);

/// Plain-text gnuplot script plotting error_linf against the axis from the
/// CSV, log-log.
std::string gnuplot_script(const std::string& csv_path, const std::string& title);

std::string format_double(double v);

}  // namespace opnet::harness
