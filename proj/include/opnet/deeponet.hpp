#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opnet/fourier.hpp"
#include "opnet/gadgets.hpp"
#include "opnet/grid.hpp"
#include "opnet/quadrature.hpp"

namespace opnet::deeponet {

/// Branch x trunk sum over exact hat-trunk networks: evaluating at y gives
/// the piecewise-linear interpolant of the branch values at the trunk nodes.
class Model {
public:
    Model(std::vector<double> branch_values, Grid1D trunk_grid);

    double evaluate(double y) const;
    /// Same sum accumulated in extended precision (oracle for tests).
    double evaluate_extended(double y) const;

    std::size_t term_count() const { return branches_.size(); }
    const std::vector<double>& branch_values() const { return branches_; }
    const Grid1D& trunk_grid() const { return grid_; }
    const std::vector<relu::ReluNetwork>& trunks() const { return trunks_; }

private:
    std::vector<double> branches_;
    Grid1D grid_;
    std::vector<relu::ReluNetwork> trunks_;
};

/// One branch value per trunk node; count mismatch is an input error.
Model assemble_interpolation_deeponet(const std::vector<double>& branch_values_at_nodes,
                                      const Grid1D& grid_p);

/// Bochner-Riesz alternative assembly for periodic 1D outputs: nodal values
/// are spanned by hat basis functions, expanded against the Fourier basis
/// with coefficients c_i^k = int e_k phi_i by 32-point Gauss-Legendre per
/// cell, then damped by the Bochner-Riesz factor.
FourierExpansion assemble_bochner_riesz_model(const std::vector<double>& values_at_nodes,
                                              const Grid1D& grid, double R, double gamma);

struct BudgetParams {
    double m = 1.0;
    double p = 1.0;
    double d = 1.0;
    double alpha = 1.0;
    double branch_width = 1.0;   // N of the branch networks
    double branch_depth = 1.0;   // L of the branch networks
    double trunk_size = 1.0;     // |theta| of one trunk network
    double c_interp = 1.0;
    double c_omega = 1.0;
    double c_branch = 1.0;
    double c_trunk = 1.0;
    /// omega_2(G(I_m u), p^{-1/d})_q; when negative, the smooth-case default
    /// c_omega * (p^{-1/d})^2 is used.
    double omega2_value = -1.0;
};

struct BudgetTerms {
    double interpolation = 0.0;
    double spectral = 0.0;
    double branch = 0.0;
    double trunk = 0.0;
    double total() const { return interpolation + spectral + branch + trunk; }
};

/// Right-hand side of the generic error estimate
///   C h^alpha + C omega_2(., p^{-1/d}) + C p sqrt(m) (N L)^{-2 alpha / m}
///   + C p exp(-|theta|^{1/(1+d)}),  h = m^{-1/d}.
/// Budget only; not a measured error.
BudgetTerms error_budget(const BudgetParams& params);

/// Sup over a fixed input family of the model-vs-reference error. The model
/// is rebuilt per input by `branch_map`; the reference operator is callable
/// at arbitrary (input index, y).
struct OperatorError {
    double sup_error = 0.0;
    std::vector<double> per_input;
};
OperatorError operator_error(const std::function<std::vector<double>(std::size_t)>& branch_map,
                             const Grid1D& trunk_grid,
                             const std::function<double(std::size_t, double)>& reference,
                             std::size_t family_size, NormKind norm, int refine = 10);

/// Plain-text model manifest: p, m, trunk serialization references, branch
/// descriptor.
std::string model_manifest(const Model& model, std::size_t m, const std::string& branch_descriptor,
                           const std::string& trunk_file_prefix);

}  // namespace opnet::deeponet
