#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "opnet/grid.hpp"

namespace opnet::advdiff {

/// 1D steady advection-diffusion -u'' + a(x) u' = f on (0, L) with
/// u(0) = u(L) = 0. The advection coefficient is piecewise constant per grid
/// cell (a_j on (x_{j-1}, x_j)); f may be any bounded callable.
class Problem {
public:
    /// cell_values holds a_j per cell (one fewer than grid nodes).
    static Problem create(Grid1D grid, std::vector<double> cell_values,
                          std::function<double(double)> f, double M0);

    const Grid1D& grid() const { return grid_; }
    double length() const { return grid_.span_end(); }
    double a_cell(std::size_t j) const { return a_[j]; }
    const std::vector<double>& a_cells() const { return a_; }
    double f(double x) const { return f_(x); }
    double bound_m0() const { return m0_; }

private:
    Problem(Grid1D grid, std::vector<double> a, std::function<double(double)> f, double M0);
    Grid1D grid_;
    std::vector<double> a_;
    std::function<double(double)> f_;
    double m0_;
};

/// Node values of A(x) = exp(-int_0^x a) and its reciprocal, built from the
/// per-cell exponential rates v_i = exp(a_i h_i): A^{-1}(x_j) = prod v_k.
struct IntegratingFactor {
    std::vector<double> a_nodes;      // A at grid nodes
    std::vector<double> a_inv_nodes;  // A^{-1} at grid nodes
    std::vector<double> rates;        // v_i per cell

    static IntegratingFactor from_problem(const Problem& p);
};

/// Analytic solution via the A+- integral operators; every per-cell integral
/// of A^{+-1} uses the exact exponential antiderivative and f is integrated
/// by 32-point Gauss-Legendre per cell. Exact zeros at both endpoints.
double exact_solution(const Problem& p, double x);

/// Discrete operator G_m^f: the same composition with piecewise-constant
/// (right-node) interpolation of A^{+-1} g per cell, so the only error is
/// the interpolation error. f enters through its cell values at left
/// endpoints.
double discrete_operator(const Problem& p, double x);

/// Weight A-^N(1)(x) / A-^N(1)(L) of the discrete operator (monotone, [0,1]).
double discrete_boundary_weight(const Problem& p, double x);

/// Symbolic shape of the discrete operator's rational form in the variables
/// v_i, reported for the network-size audit.
struct RationalFormStats {
    int numerator_degree = 0;
    int variable_count = 0;
    long long numerator_terms = 0;
    long long denominator_terms = 0;
};
RationalFormStats rational_form_stats(const Problem& p, std::size_t node_index);

/// Divergence-form wrapper: -d/dx(a du/dx) = f with 0 < a becomes
/// -u'' + b u' = f/a where b = -(ln a)'. a is sampled nodally and b is the
/// exact per-cell difference quotient of ln a.
Problem divergence_form_problem(const Grid1D& grid, const std::function<double(double)>& a,
                                const std::function<double(double)>& f, double M0);

}  // namespace opnet::advdiff
