#include "opnet/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opnet/relunet.hpp"

namespace opnet::harness {

FitResult fit_slope(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3) throw InputError("fit_slope: need at least 3 pairs");
    for (const auto& [x, y] : pairs) {
        if (!(x > 0.0) || !(y > 0.0)) {
            throw InputError("fit_slope: axis and error values must be positive");
        }
    }
    const double n = static_cast<double>(pairs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : pairs) {
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw InputError("fit_slope: degenerate axis values");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    for (const auto& [x, y] : pairs) {
        const double r = std::log(y) - (intercept + fit.slope * std::log(x));
        ss_res += r * r;
    }
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

void validate_axis(const std::vector<double>& values) {
    if (values.size() < 3) throw InputError("sweep: need at least 3 axis values");
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1])) {
            throw InputError("sweep: axis values must be strictly increasing");
        }
    }
}

ConvergenceReport run_sweep(const std::string& axis_name, const std::vector<double>& values,
                            const std::function<SweepRow(double)>& cell) {
    validate_axis(values);
    ConvergenceReport report;
    report.axis_name = axis_name;
    report.rows.reserve(values.size());
    for (double v : values) {
        const auto start = std::chrono::steady_clock::now();
        SweepRow row;
        const std::string cell_id = "sweep cell " + axis_name + "=" + format_double(v);
        try {
            row = cell(v);
        } catch (const NumericalError& e) {
            throw NumericalError(cell_id + " failed: " + e.what());
        } catch (const std::exception& e) {
            throw InputError(cell_id + " failed: " + e.what());
        }
        row.axis_value = v;
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        report.rows.push_back(row);
    }
    bool all_positive = true;
    std::vector<std::pair<double, double>> pairs;
    for (const auto& row : report.rows) {
        if (!(row.error_linf > 0.0)) all_positive = false;
        pairs.emplace_back(row.axis_value, row.error_linf);
    }
    if (all_positive && pairs.size() >= 3) report.fit = fit_slope(pairs);
    return report;
}

std::string format_double(double v) { return relu::format_double(v); }

std::string report_to_csv(const ConvergenceReport& report) {
    std::ostringstream out;
    out << "axis,value,error_linf,error_l2,runtime_ms,aux1,aux2\n";
    for (const auto& row : report.rows) {
        out << report.axis_name << ',' << format_double(row.axis_value) << ','
            << format_double(row.error_linf) << ',' << format_double(row.error_l2) << ",0,"
            << format_double(row.aux1) << ',' << format_double(row.aux2) << '\n';
    }
    return out.str();
}

void write_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("write_atomic: cannot open " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw InputError("write_atomic: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title) {
    std::ostringstream out;
    out << "set datafile separator ','\n";
    out << "set logscale xy\n";
    out << "set title '" << title << "'\n";
    out << "set xlabel 'axis value'\n";
    out << "set ylabel 'error_linf'\n";
    out << "plot '" << csv_path << "' every ::1 using 2:3 with linespoints title 'L_inf'\n";
    return out.str();
}

}  // namespace opnet::harness
