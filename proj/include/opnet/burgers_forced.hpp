#pragma once

#include <cstdint>
#include <vector>

#include "opnet/burgers1d.hpp"
#include "opnet/grid.hpp"

namespace opnet::burgers_forced {

/// Forced periodic Burgers u_t + u u_x = kappa u_xx + f(x,t) solved at a
/// point by the Feynman-Kac ratio estimator. u0 is the zero-mean periodic
/// datum of burgers1d::Problem; the forcing is piecewise linear (hat basis)
/// in x on `x_grid` and piecewise constant in t on `t_nodes`, with zero
/// x-mean per slab so the Cole-Hopf potential stays periodic.
struct Config {
    burgers1d::Problem problem;
    Grid1D x_grid;
    std::vector<double> t_nodes;                // slab boundaries, first = 0
    std::vector<std::vector<double>> f_values;  // per slab, nodal on x_grid
    std::size_t path_count = 0;
    double step = 0.0;  // h_t
    std::uint64_t seed = 0;

    static Config unforced(burgers1d::Problem problem, std::size_t paths, double step,
                           std::uint64_t seed);
    static Config forced(burgers1d::Problem problem, Grid1D x_grid, std::vector<double> t_nodes,
                         std::vector<std::vector<double>> f_values, std::size_t paths, double step,
                         std::uint64_t seed);

    bool has_forcing() const { return !f_values.empty(); }
    double forcing(double x, double t) const;
    /// int_{-pi}^{x} f(z, t) dz of the periodic extension (bounded because
    /// each slab has zero mean).
    double forcing_cumulative(double x, double t) const;
};

struct McResult {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t paths = 0;
    double step_used = 0.0;
};

/// Ratio estimator: per path, the weight exp(-sum_j f_j e~_j*/(2k)
/// - sum_i u_{0,i} L~_i*/(2k)) fills numerator and denominator; the
/// numerator carries the exponential-quotient finite differences
///   2k (exp(u0(X_T) h_x / 2k) - 1)/h_x + (exp(int f ds * h_t) - 1)/h_t.
/// Brownian increments come from the counter-based stream, one substream
/// per path; reductions are pairwise tree sums. The standard error is the
/// delta-method estimate for the ratio.
McResult forced_burgers_mc(const Config& config, double x_star, double t_star, int threads = 1);

}  // namespace opnet::burgers_forced
