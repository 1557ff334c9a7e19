#pragma once

#include <vector>

#include "opnet/fd2d.hpp"
#include "opnet/gadgets.hpp"

namespace opnet::relu {

/// Network realization of the Sherman-Morrison cascade: one stage per
/// rank-one update, each applying the compiled 5-input rational net
/// entrywise through sparse wiring that gathers
///   (alpha_k, T_ij, v^T T u, T_i,row, (v^T T)_j)
/// from the previous stage. T_0 = S^{-1} enters as precomputed constants;
/// evaluating on the coefficient vector yields T_m^N and U^N = T_m^N F.
class BlessedCascadeNet {
public:
    BlessedCascadeNet(const fd2d::FdSystem& system, double epsilon_stage);

    struct Output {
        std::vector<double> t_final;   // T_m^N, dense m x m
        std::vector<double> solution;  // U^N = T_m^N F
    };

    /// a_inputs holds the raw coefficient value per update, in update order
    /// (for a reaction system this is the nodal a3 vector).
    Output evaluate(const std::vector<double>& a_inputs) const;

    std::size_t stage_count() const { return stages_.size(); }
    const CompiledRational& rational_net() const { return rational_; }

    /// Capacity audit per the cascade structure: every stage stacks one
    /// rational net per matrix entry, and stages run in series.
    std::size_t audit_width() const;
    std::size_t audit_depth() const;
    std::size_t audit_size() const;
    /// Nonzeros in the gather wiring of one entry of one stage.
    std::size_t wiring_nonzeros_per_entry() const;

private:
    struct Stage {
        double alpha_scale = 0.0;  // alpha = scale * a_input
        std::size_t row = 0;
        std::vector<std::pair<std::size_t, double>> v;
    };

    std::size_t dim_ = 0;  // matrix side m
    std::vector<double> t0_;
    std::vector<double> rhs_;
    CompiledRational rational_;
    std::vector<Stage> stages_;
};

/// Raw coefficient values (each update's alpha divided by its h-scaling) in
/// update order -- the a_m vector the blessed net consumes.
std::vector<double> raw_update_coefficients(const fd2d::FdSystem& system);

}  // namespace opnet::relu
