#pragma once

#include <vector>

#include "opnet/grid.hpp"
#include "opnet/relunet.hpp"

namespace opnet::relu {

/// Nodal hat basis L_i as a width-3 depth-1 network:
///   (1/h_{i-1}) ReLU(x - x_{i-1}) - (1/h_{i-1} + 1/h_i) ReLU(x - x_i)
///   + (1/h_i) ReLU(x - x_{i+1})
/// Boundary nodes use the truncated two-term form.
ReluNetwork hat_trunk(const Grid1D& grid, std::size_t node_index);

/// Width-2 depth-1 net computing a linear functional exactly:
/// ReLU(sum c_l u_l) - ReLU(-sum c_l u_l).
ReluNetwork linear_branch_net(const std::vector<double>& coefficients);

/// Sawtooth-composition approximation of x^2 on [0, 1]: equals the dyadic
/// interpolant at spacing 2^-k, so the max error is exactly 2^{-2k-2} and
/// dyadic points are exact.
ReluNetwork square_gadget(int k);
double square_gadget_error_bound(int k);

/// xy on [-1,1]^2 via two squares: xy = sq(|x+y|/2)*... - sq(|x-y|/2)*...
/// Error bound 2^{-2k-1}; exact whenever x = 0 or y = 0 (the square
/// arguments coincide and their errors cancel).
ReluNetwork product_gadget(int k);
double product_gadget_error_bound(int k);

/// Product with inputs scaled from [-sx, sx] x [-sy, sy]; error scales by
/// sx*sy.
ReluNetwork product_gadget_scaled(int k, double sx, double sy);

/// 1/(1+z) for |z| <= z_range (<= 1/2) by unrolled Newton steps
/// t <- t (2 - (1+z) t), t_1 = 1 - z, with product gadgets inside.
ReluNetwork reciprocal_gadget(int k, double z_range, int newton_steps = 5);
double reciprocal_gadget_error_bound(int k, double z_range, int newton_steps = 5);

/// Validated box and certified sup-error of a compiled network.
struct CompiledRational {
    ReluNetwork net;
    double x1_max = 0.0;      // |x1| <= x1_max
    double entry_bound = 0.0; // |x2..x5| <= entry_bound
    double error_bound = 0.0;
    int product_k = 0;
};

/// ReLU network for R(x1..x5) = x2 - x1 x4 x5 / (1 + x1 x3) on the box
/// |x1| <= x1_max, |x_i| <= entry_bound (i >= 2), with
/// x1_max * entry_bound <= 0.45. The internal product resolution k is the
/// smallest that drives the propagated error bound below epsilon.
CompiledRational compile_rational_R(double epsilon, double x1_max, double entry_bound);

}  // namespace opnet::relu
