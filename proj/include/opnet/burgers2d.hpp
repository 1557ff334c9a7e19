#pragma once

#include <optional>
#include <vector>

#include "opnet/grid.hpp"

namespace opnet::burgers2d {

/// 2D periodic Burgers data on [-pi,pi)^2 under the consistency condition
/// d_y u0 = d_x v0 = w0, i.e.
///   u0(x,y) = int_{-pi}^y w0(x,s) ds + ut(x),
///   v0(x,y) = int_{-pi}^x w0(r,y) dr + vt(y).
/// w0 is nodal bilinear on its own grid; ut, vt are nodal piecewise linear.
/// All integrals in phi0 use the exact piecewise rules of those data, so the
/// consistency check and phi0 are mutually exact. Periodicity requires zero
/// line means of w0 and zero means of ut, vt.
class Problem {
public:
    /// If u0_nodes / v0_nodes are provided they are cross-checked against
    /// the values derived from (w0, ut, vt); a max residual above 1e-8
    /// raises InputError naming the worst node.
    static Problem create(double kappa, PiecewiseFunction w0, PiecewiseFunction ut,
                          PiecewiseFunction vt,
                          const std::vector<double>* u0_nodes = nullptr,
                          const std::vector<double>* v0_nodes = nullptr);

    double kappa() const { return kappa_; }
    const Grid2D& data_grid() const { return w0_.grid2(); }

    double u0(double x, double y) const;
    double v0(double x, double y) const;
    double w0(double x, double y) const { return w0_(x, y); }

    /// phi0 = exp(-(W(x,y) + U(x) + V(y)) / (2 kappa)) with
    /// W = int int w0, U = int ut, V = int vt.
    double phi0(double x, double y) const;

private:
    Problem(double kappa, PiecewiseFunction w0, PiecewiseFunction ut, PiecewiseFunction vt);
    double w0_double_integral(double x, double y) const;  // over [-pi,x] x [-pi,y]
    double cum_ut(double x) const;
    double cum_vt(double y) const;

    double kappa_;
    PiecewiseFunction w0_;
    PiecewiseFunction ut_;
    PiecewiseFunction vt_;
    std::vector<double> w_nodes_;    // double integral at w0 grid nodes
    std::vector<double> cum_ut_nodes_;
    std::vector<double> cum_vt_nodes_;
};

struct Velocity {
    double u = 0.0;
    double v = 0.0;
};

/// Exact solution operator (G^u, G^v) = -2 kappa (phi_x, phi_y) / phi with
/// phi the heat evolution of phi0, integrated against the doubly periodized
/// kernel by per-cell Gauss-Legendre panels (quad_refine subdivisions, plus
/// automatic refinement below the kernel width).
Velocity exact_uv(const Problem& p, double x, double y, double t, int quad_refine = 2);

/// Rational operator on the uniform s x s operator lattice: denominator
/// integrates I0_m phi0 (left-bottom corner) in closed erf form, numerator
/// integrates the bilinear I1_m phi0 against the derivative kernel with
/// 16-point Gauss-Legendre per cell per axis.
Velocity rational_uv(const Problem& p, std::size_t s, double x, double y, double t);

}  // namespace opnet::burgers2d
