#include "opnet/deeponet.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace opnet::deeponet {

Model::Model(std::vector<double> branch_values, Grid1D trunk_grid)
    : branches_(std::move(branch_values)), grid_(std::move(trunk_grid)) {
    if (branches_.size() != grid_.node_count()) {
        throw InputError("deeponet: branch count must match trunk node count");
    }
    trunks_.reserve(branches_.size());
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        trunks_.push_back(relu::hat_trunk(grid_, i));
    }
}

double Model::evaluate(double y) const {
    const double r = grid_.reduce(y);  // throws DomainError outside the span
    std::vector<double> terms(branches_.size());
    for (std::size_t k = 0; k < branches_.size(); ++k) {
        terms[k] = branches_[k] * trunks_[k].evaluate_scalar(r);
    }
    return pairwise_sum(terms);
}

double Model::evaluate_extended(double y) const {
    const double r = grid_.reduce(y);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < branches_.size(); ++k) {
        acc += static_cast<long double>(branches_[k]) *
               static_cast<long double>(trunks_[k].evaluate_scalar(r));
    }
    return static_cast<double>(acc);
}

Model assemble_interpolation_deeponet(const std::vector<double>& branch_values_at_nodes,
                                      const Grid1D& grid_p) {
    return Model(branch_values_at_nodes, grid_p);
}

FourierExpansion assemble_bochner_riesz_model(const std::vector<double>& values_at_nodes,
                                              const Grid1D& grid, double R, double gamma) {
    if (values_at_nodes.size() != grid.node_count()) {
        throw InputError("assemble_bochner_riesz_model: nodal count mismatch");
    }
    if (!grid.periodic()) {
        throw InputError("assemble_bochner_riesz_model: periodic output grid required");
    }
    PiecewiseFunction interp(grid, values_at_nodes, InterpOrder::Linear);
    const int kmax = static_cast<int>(std::floor(R));
    std::vector<FourierExpansion::Mode> modes;
    std::vector<std::complex<double>> coeffs;
    for (int k = -kmax; k <= kmax; ++k) {
        // c_k = (1/2pi) int interp(y) e^{-iky} dy, 32-point panels per cell
        std::vector<double> re(grid.cell_count()), im(grid.cell_count());
        for (std::size_t c = 0; c < grid.cell_count(); ++c) {
            re[c] = gauss_panel([&](double y) { return interp(y) * std::cos(-k * y); },
                                grid.node(c), grid.node(c + 1), 32);
            im[c] = gauss_panel([&](double y) { return interp(y) * std::sin(-k * y); },
                                grid.node(c), grid.node(c + 1), 32);
        }
        modes.push_back({k, 0});
        coeffs.emplace_back(pairwise_sum(re) / kTwoPi, pairwise_sum(im) / kTwoPi);
    }
    FourierExpansion plain(1, R, 0.0, std::move(modes), std::move(coeffs));
    return bochner_riesz(plain, R, gamma);
}

BudgetTerms error_budget(const BudgetParams& params) {
    if (!(params.alpha > 0.0) || params.alpha > 1.0) {
        throw ParameterError("error_budget: alpha must lie in (0, 1]");
    }
    if (!(params.m > 0.0) || !(params.p > 0.0) || !(params.d > 0.0)) {
        throw ParameterError("error_budget: m, p, d must be positive");
    }
    const double h = std::pow(params.m, -1.0 / params.d);
    BudgetTerms terms;
    terms.interpolation = params.c_interp * std::pow(h, params.alpha);
    const double omega2 = (params.omega2_value >= 0.0)
                              ? params.omega2_value
                              : params.c_omega * std::pow(params.p, -2.0 / params.d);
    terms.spectral = omega2;
    terms.branch = params.c_branch * params.p * std::sqrt(params.m) *
                   std::pow(params.branch_width * params.branch_depth,
                            -2.0 * params.alpha / params.m);
    terms.trunk = params.c_trunk * params.p *
                  std::exp(-std::pow(params.trunk_size, 1.0 / (1.0 + params.d)));
    return terms;
}

OperatorError operator_error(const std::function<std::vector<double>(std::size_t)>& branch_map,
                             const Grid1D& trunk_grid,
                             const std::function<double(std::size_t, double)>& reference,
                             std::size_t family_size, NormKind norm, int refine) {
    OperatorError out;
    out.per_input.resize(family_size);
    for (std::size_t idx = 0; idx < family_size; ++idx) {
        Model model(branch_map(idx), trunk_grid);
        auto ref = [&](double y) { return reference(idx, y); };
        auto approx = [&](double y) { return model.evaluate(y); };
        out.per_input[idx] = error_norm(ref, approx, trunk_grid, norm, refine);
        out.sup_error = std::max(out.sup_error, out.per_input[idx]);
    }
    return out;
}

std::string model_manifest(const Model& model, std::size_t m, const std::string& branch_descriptor,
                           const std::string& trunk_file_prefix) {
    std::ostringstream out;
    out << "deeponet-model v1\n";
    out << "p " << model.term_count() << "\n";
    out << "m " << m << "\n";
    out << "branch " << branch_descriptor << "\n";
    for (std::size_t k = 0; k < model.term_count(); ++k) {
        out << "trunk " << k << " " << trunk_file_prefix << k << ".net\n";
    }
    return out.str();
}

}  // namespace opnet::deeponet
