#pragma once

#include <vector>

#include "opnet/grid.hpp"

namespace opnet::burgers1d {

/// Periodic viscous Burgers problem on [-pi, pi): u_t + u u_x = kappa u_xx,
/// with a piecewise-linear, zero-mean initial condition. M0 and M1 bound the
/// sup norms of u0 and its slope; both are validated against the nodal data.
class Problem {
public:
    static Problem create(double kappa, PiecewiseFunction u0, double M0, double M1);

    double kappa() const { return kappa_; }
    const PiecewiseFunction& u0() const { return u0_; }
    const Grid1D& grid() const { return u0_.grid1(); }
    double bound_m0() const { return m0_; }
    double bound_m1() const { return m1_; }

    /// Integral of the periodically extended u0 from the left grid endpoint.
    /// Piecewise quadratic; periodic because the mean vanishes.
    double cumulative_u0(double y) const;

    /// Cole-Hopf initial datum v0(y) = exp(-cumulative_u0(y) / (2 kappa)).
    double v0(double y) const;

private:
    Problem(double kappa, PiecewiseFunction u0, double M0, double M1,
            std::vector<double> cumulative);
    double kappa_;
    PiecewiseFunction u0_;
    double m0_;
    double m1_;
    std::vector<double> cum_;  // cumulative integral at nodes
};

/// Subtracts the period mean so the shifted datum qualifies for `Problem`.
/// The solution of the original problem is u(x,t) = v(x - mean*t, t) + mean
/// where v solves the zero-mean problem returned here.
struct GalileanShift {
    Problem problem;
    double mean;
};
GalileanShift galilean_shift(double kappa, const PiecewiseFunction& u0, double M0, double M1);

/// V-products of the Cole-Hopf construction: V_0 = 1,
/// V_j = exp(-(u_{0,j} + u_{0,j-1}) h_j / (4 kappa)), and the node values
/// v_j^0 = prod_{i<=j} V_i of v0 at grid nodes.
struct ColeHopfState {
    std::vector<double> factors;   // V_0 .. V_{m-1}
    std::vector<double> v0_nodes;  // v_0^0 .. v_{m-1}^0

    static ColeHopfState from_problem(const Problem& p);
    /// Build from explicit factors (used for the linearized-V perturbation).
    static ColeHopfState from_factors(std::vector<double> factors);
};

/// First-order factors l^V_j = 1 - (u_{0,j} + u_{0,j-1}) h_j / (4 kappa).
std::vector<double> linearized_factors(const Problem& p);

/// Number of periodization shifts so the dropped Gaussian tail is below
/// 1e-16 at the nearest point of the period; never fewer than 3.
int periodization_shift_count(double t, double kappa, double period = kTwoPi);

/// Periodized heat kernel sum_{|l| <= L*} K(x, y + l*period, t), or its
/// x-derivative when derivative = 1. K is the free-space Gaussian kernel.
double heat_kernel_periodized(double x, double y, double t, double kappa, int derivative = 0,
                              double period = kTwoPi);

/// Cell coefficients of the finite-dimensional operator at a fixed (x, t):
/// c2[j] integrates the periodized kernel over cell j (piecewise-constant
/// weight); c1[j] integrates the x-derivative kernel against the periodic
/// hat at node j, reduced by parts to kernel cell masses so everything is an
/// erf closed form. The -2*kappa prefactor lives inside c1.
struct KernelCoefficients {
    std::vector<double> c1;
    std::vector<double> c2;
    double x = 0.0;
    double t = 0.0;
};
KernelCoefficients kernel_coefficients(const Grid1D& grid, double x, double t, double kappa);

/// (sum_j v_j^0 c1_j) / (sum_j v_j^0 c2_j) -- the rational operator G_m.
double rational_operator(const ColeHopfState& state, const KernelCoefficients& coeffs);

/// Convenience: build state and coefficients from the problem's own grid.
double rational_value(const Problem& p, double x, double t);

/// Reference value of G(u0)(x, t) by per-cell Gauss-Legendre quadrature of
/// the exact v0 against the periodized kernel. quad_refine subdivides each
/// cell; an additional automatic factor keeps panels below the kernel width.
double cole_hopf_exact(const Problem& p, double x, double t, int quad_refine = 2);

/// Independent Fourier-spectral route: exact heat evolution of v0 in
/// coefficient space, then u = -2 kappa v_x / v. Coefficients of v0 are
/// computed by oscillation-resolved per-cell quadrature, not by the grid
/// interpolation path used elsewhere.
class SpectralColeHopf {
public:
    explicit SpectralColeHopf(const Problem& p, int max_mode = 512);
    double operator()(double x, double t) const;

private:
    double kappa_;
    int max_mode_;
    std::vector<double> re_;  // coefficient real parts, index k = 0..max_mode
    std::vector<double> im_;
};

}  // namespace opnet::burgers1d
