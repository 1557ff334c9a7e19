#pragma once

#include <functional>
#include <vector>

#include "opnet/grid.hpp"

namespace opnet {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes/weights, computed once by Newton iteration on the
/// Legendre recurrence and cached per order.
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, b] with one Gauss-Legendre panel.
double gauss_panel(const std::function<double(double)>& f, double a, double b, int order);

/// Composite rule: [a, b] split into `cells` panels of `order` points each.
double integrate(const std::function<double(double)>& f, double a, double b, int cells,
                 int order = 16);

/// Evaluation lattice for sup-norm estimates: `refine` equispaced points per
/// cell of the finest grid, plus every node and midpoint of the grids under
/// comparison. Deterministic and sorted.
std::vector<double> linf_lattice(double a, double b, const std::vector<const Grid1D*>& grids,
                                 int refine = 10);
std::vector<double> linf_lattice(const Grid1D& grid, int refine = 10);

enum class NormKind { LInf, L2 };

/// max |f_ref - f_approx| over a lattice. Throws NumericalError naming the
/// offending point if either callable produces a non-finite value.
double linf_error(const std::function<double(double)>& f_ref,
                  const std::function<double(double)>& f_approx,
                  const std::vector<double>& lattice);

/// L2 norm of (f_ref - f_approx) over [a, b], composite Gauss-Legendre.
double l2_error(const std::function<double(double)>& f_ref,
                const std::function<double(double)>& f_approx, double a, double b, int cells = 256,
                int order = 8);

double error_norm(const std::function<double(double)>& f_ref,
                  const std::function<double(double)>& f_approx, const Grid1D& domain,
                  NormKind kind, int refine = 10);

}  // namespace opnet
