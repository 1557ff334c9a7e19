#include "opnet/burgers_forced.hpp"

#include <algorithm>
#include <cmath>

namespace opnet::burgers_forced {

namespace {

double slab_mean(const Grid1D& g, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        s += 0.5 * (v[c] + v[c + 1]) * g.cell_width(c);
    }
    return s / g.period();
}

}  // namespace

Config Config::unforced(burgers1d::Problem problem, std::size_t paths, double step,
                        std::uint64_t seed) {
    Config c{std::move(problem), Grid1D::uniform(-kPi, kPi, 2, true), {}, {}, paths, step, seed};
    return c;
}

Config Config::forced(burgers1d::Problem problem, Grid1D x_grid, std::vector<double> t_nodes,
                      std::vector<std::vector<double>> f_values, std::size_t paths, double step,
                      std::uint64_t seed) {
    if (!x_grid.periodic()) throw InputError("burgers_forced: forcing grid must be periodic");
    if (t_nodes.size() < 2 || t_nodes.front() != 0.0) {
        throw InputError("burgers_forced: t_nodes must start at 0 with at least one slab");
    }
    for (std::size_t q = 0; q + 1 < t_nodes.size(); ++q) {
        if (!(t_nodes[q] < t_nodes[q + 1])) {
            throw InputError("burgers_forced: t_nodes must increase");
        }
    }
    if (f_values.size() + 1 != t_nodes.size()) {
        throw InputError("burgers_forced: need one value set per time slab");
    }
    for (const auto& slab : f_values) {
        if (slab.size() != x_grid.node_count()) {
            throw InputError("burgers_forced: slab nodal count mismatch");
        }
        double scale = 1.0;
        for (double v : slab) scale = std::max(scale, std::abs(v));
        if (std::abs(slab_mean(x_grid, slab)) > 1e-12 * scale) {
            throw InputError("burgers_forced: forcing must have zero x-mean per slab");
        }
        if (std::abs(slab.front() - slab.back()) > 1e-12 * scale) {
            throw InputError("burgers_forced: periodic forcing needs matching endpoint values");
        }
    }
    Config c{std::move(problem), std::move(x_grid), std::move(t_nodes), std::move(f_values),
             paths,              step,              seed};
    return c;
}

double Config::forcing(double x, double t) const {
    if (!has_forcing()) return 0.0;
    if (t < t_nodes.front() || t >= t_nodes.back()) return 0.0;
    std::size_t q = 0;
    while (q + 2 < t_nodes.size() && t >= t_nodes[q + 1]) ++q;
    const double r = x_grid.reduce(x);
    const std::size_t c = x_grid.cell_of(r);
    const auto& v = f_values[q];
    const double tt = (r - x_grid.node(c)) / x_grid.cell_width(c);
    return (1.0 - tt) * v[c] + tt * v[c + 1];
}

double Config::forcing_cumulative(double x, double t) const {
    if (!has_forcing()) return 0.0;
    if (t < t_nodes.front() || t >= t_nodes.back()) return 0.0;
    std::size_t q = 0;
    while (q + 2 < t_nodes.size() && t >= t_nodes[q + 1]) ++q;
    const auto& v = f_values[q];
    const double r = x_grid.reduce(x);
    const std::size_t c = x_grid.cell_of(r);
    double cum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        cum += 0.5 * (v[j] + v[j + 1]) * x_grid.cell_width(j);
    }
    const double dx = r - x_grid.node(c);
    const double slope = (v[c + 1] - v[c]) / x_grid.cell_width(c);
    return cum + v[c] * dx + 0.5 * slope * dx * dx;
}

McResult forced_burgers_mc(const Config& config, double x_star, double t_star, int threads) {
    if (config.path_count < 2) {
        throw ParameterError("forced_burgers_mc: need at least two paths");
    }
    if (!(config.step > 0.0)) throw ParameterError("forced_burgers_mc: step must be positive");
    if (!(t_star > 0.0)) throw ParameterError("forced_burgers_mc: t_star must be positive");

    const std::size_t n_paths = config.path_count;
    const std::size_t steps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t_star / config.step)));
    const double h_t = t_star / static_cast<double>(steps);
    const double kappa = config.problem.kappa();
    const double root = std::sqrt(2.0 * kappa);
    const double h_x = config.problem.grid().max_cell_width();

    std::vector<double> num(n_paths), den(n_paths);
    parallel_for(
        n_paths, threads,
        [&](std::size_t l) {
            double b = 0.0;
            double forcing_weight = 0.0;   // sum_q h_t * CumF(x* + root B_q, t_q)
            double forcing_integral = 0.0; // sum_q h_t * f(x* + root B_q, t_q)
            for (std::size_t q = 0; q < steps; ++q) {
                const double tq = h_t * static_cast<double>(q);
                if (config.has_forcing()) {
                    const double pos = x_star + root * b;
                    forcing_weight += h_t * config.forcing_cumulative(pos, tq);
                    forcing_integral += h_t * config.forcing(pos, tq);
                }
                b += std::sqrt(h_t) * standard_normal(config.seed, l + 1, q);
            }
            const double x_end = x_star + root * b;
            const double exponent =
                -(forcing_weight + config.problem.cumulative_u0(x_end)) / (2.0 * kappa);
            const double weight = std::exp(exponent);
            const double u0_end = config.problem.u0()(x_end);
            const double quotient_x = 2.0 * kappa * std::expm1(u0_end * h_x / (2.0 * kappa)) / h_x;
            const double quotient_t = std::expm1(forcing_integral * h_t) / h_t;
            num[l] = weight * (quotient_x + quotient_t);
            den[l] = weight;
        });

    const double sum_n = pairwise_sum(num);
    const double sum_d = pairwise_sum(den);
    if (!(sum_d > 0.0)) {
        throw NumericalError("forced_burgers_mc: weight sum lost positivity");
    }
    const double nf = static_cast<double>(n_paths);
    const double mean_n = sum_n / nf;
    const double mean_d = sum_d / nf;
    const double ratio = mean_n / mean_d;

    // delta-method variance of the ratio estimator
    std::vector<double> nn(n_paths), nd(n_paths), dd(n_paths);
    for (std::size_t l = 0; l < n_paths; ++l) {
        const double dn = num[l] - mean_n;
        const double dd_l = den[l] - mean_d;
        nn[l] = dn * dn;
        nd[l] = dn * dd_l;
        dd[l] = dd_l * dd_l;
    }
    const double s_nn = pairwise_sum(nn) / (nf - 1.0);
    const double s_nd = pairwise_sum(nd) / (nf - 1.0);
    const double s_dd = pairwise_sum(dd) / (nf - 1.0);
    const double var =
        (s_nn - 2.0 * ratio * s_nd + ratio * ratio * s_dd) / (mean_d * mean_d * nf);

    McResult out;
    out.value = ratio;
    out.std_error = std::sqrt(std::max(0.0, var));
    out.paths = n_paths;
    out.step_used = h_t;
    require_finite(out.value, "forced_burgers_mc estimate");
    require_finite(out.std_error, "forced_burgers_mc standard error");
    return out;
}

}  // namespace opnet::burgers_forced
