#include "opnet/gadgets.hpp"

#include <array>
#include <cmath>

namespace opnet::relu {

ReluNetwork hat_trunk(const Grid1D& grid, std::size_t node_index) {
    const std::size_t last = grid.node_count() - 1;
    if (node_index > last) throw InputError("hat_trunk: node index out of range");
    const auto& x = grid.nodes();
    if (node_index == 0) {
        // 1 - [ReLU(x - x0) - ReLU(x - x1)] / h0: flat 1 left of the span
        const double h = grid.cell_width(0);
        Layer hidden{2, 1, {{0, 0, 1.0}, {1, 0, 1.0}}, {-x[0], -x[1]}};
        Layer out{1, 2, {{0, 0, -1.0 / h}, {0, 1, 1.0 / h}}, {1.0}};
        return ReluNetwork({hidden, out});
    }
    if (node_index == last) {
        const double h = grid.cell_width(last - 1);
        Layer hidden{2, 1, {{0, 0, 1.0}, {1, 0, 1.0}}, {-x[last - 1], -x[last]}};
        Layer out{1, 2, {{0, 0, 1.0 / h}, {0, 1, -1.0 / h}}, {0.0}};
        return ReluNetwork({hidden, out});
    }
    const double hl = grid.cell_width(node_index - 1);
    const double hr = grid.cell_width(node_index);
    Layer hidden{3,
                 1,
                 {{0, 0, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}},
                 {-x[node_index - 1], -x[node_index], -x[node_index + 1]}};
    Layer out{1, 3, {{0, 0, 1.0 / hl}, {0, 1, -(1.0 / hl + 1.0 / hr)}, {0, 2, 1.0 / hr}}, {0.0}};
    return ReluNetwork({hidden, out});
}

ReluNetwork linear_branch_net(const std::vector<double>& coefficients) {
    if (coefficients.empty()) throw InputError("linear_branch_net: empty coefficients");
    for (double c : coefficients) require_finite(c, "linear_branch_net coefficients");
    Layer hidden;
    hidden.rows = 2;
    hidden.cols = coefficients.size();
    hidden.bias = {0.0, 0.0};
    for (std::size_t l = 0; l < coefficients.size(); ++l) {
        if (coefficients[l] == 0.0) continue;
        hidden.weights.push_back({0, l, coefficients[l]});
        hidden.weights.push_back({1, l, -coefficients[l]});
    }
    Layer out{1, 2, {{0, 0, 1.0}, {0, 1, -1.0}}, {0.0}};
    return ReluNetwork({hidden, out});
}

double square_gadget_error_bound(int k) { return std::ldexp(1.0, -2 * k - 2); }

ReluNetwork square_gadget(int k) {
    if (k < 1) throw ParameterError("square_gadget: k >= 1");
    // Hidden layer j carries (a, b, c) = ReLU(g_{j-1} - {0, 1/2, 1}) for the
    // tent map g_j = 2a - 4b + 2c, plus one neuron for the running
    // interpolant f_{j-1} (nonnegative on [0,1], so a bare ReLU carries it).
    std::vector<Layer> layers;
    Layer first{3, 1, {{0, 0, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}}, {0.0, -0.5, -1.0}};
    layers.push_back(first);
    // state after layer 1: a1,b1,c1 with f1 = a1 - g1/4, g1 = 2a1-4b1+2c1
    auto g_of_prev = [](double scale) {
        // coefficients of g_{j-1} in (a, b, c)
        return std::array<double, 3>{2.0 * scale, -4.0 * scale, 2.0 * scale};
    };
    for (int j = 2; j <= k; ++j) {
        Layer layer;
        layer.rows = 4;
        layer.cols = (j == 2) ? 3 : 4;
        layer.bias = {0.0, -0.5, -1.0, 0.0};
        const auto g = g_of_prev(1.0);
        for (std::size_t r = 0; r < 3; ++r) {
            layer.weights.push_back({r, 0, g[0]});
            layer.weights.push_back({r, 1, g[1]});
            layer.weights.push_back({r, 2, g[2]});
        }
        // f_{j-1} = f_{j-2} - g_{j-1}/4^{j-1}
        const double s = -std::ldexp(1.0, -2 * (j - 1));
        layer.weights.push_back({3, 0, s * 2.0});
        layer.weights.push_back({3, 1, s * -4.0});
        layer.weights.push_back({3, 2, s * 2.0});
        if (j == 2) {
            // f_1 = a1 - g1/4 folded into the carry neuron
            layer.weights[layer.weights.size() - 3].value += 1.0;  // + a1
        } else {
            layer.weights.push_back({3, 3, 1.0});
        }
        layers.push_back(layer);
    }
    Layer out;
    out.rows = 1;
    out.cols = (k == 1) ? 3 : 4;
    out.bias = {0.0};
    const double s = -std::ldexp(1.0, -2 * k);
    out.weights.push_back({0, 0, s * 2.0});
    out.weights.push_back({0, 1, s * -4.0});
    out.weights.push_back({0, 2, s * 2.0});
    if (k == 1) {
        out.weights[0].value += 1.0;  // f_1 = a1 - g1/4
    } else {
        out.weights.push_back({0, 3, 1.0});
    }
    layers.push_back(out);
    return ReluNetwork(std::move(layers));
}

double product_gadget_error_bound(int k) { return 2.0 * square_gadget_error_bound(k); }

ReluNetwork product_gadget(int k) {
    // xy = [(x+y)^2 - (x-y)^2] / 4 with both squares evaluated at
    // |x +- y| / 2 in [0, 1]
    Layer fold;
    fold.rows = 4;
    fold.cols = 2;
    fold.bias.assign(4, 0.0);
    fold.weights = {{0, 0, 0.5},  {0, 1, 0.5},  {1, 0, -0.5}, {1, 1, -0.5},
                    {2, 0, 0.5},  {2, 1, -0.5}, {3, 0, -0.5}, {3, 1, 0.5}};
    // |x+y|/2 = n0 + n1, |x-y|/2 = n2 + n3 after ReLU
    Layer abs_combine;
    abs_combine.rows = 2;
    abs_combine.cols = 4;
    abs_combine.bias = {0.0, 0.0};
    abs_combine.weights = {{0, 0, 1.0}, {0, 1, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}};
    // fold stays a hidden layer so the ReLUs realize the absolute values
    ReluNetwork pre({fold, abs_combine});

    const ReluNetwork sq = square_gadget(k);
    ReluNetwork squares = parallel({sq, sq}, {{0}, {1}}, 2);
    Layer out{1, 2, {{0, 0, 1.0}, {0, 1, -1.0}}, {0.0}};
    return compose(ReluNetwork({out}), compose(squares, pre));
}

ReluNetwork product_gadget_scaled(int k, double sx, double sy) {
    if (!(sx > 0.0) || !(sy > 0.0)) throw ParameterError("product_gadget_scaled: bad scales");
    ReluNetwork core = product_gadget(k);
    ReluNetwork pre = affine_network(2, 2, {{0, 0, 1.0 / sx}, {1, 1, 1.0 / sy}}, {0.0, 0.0});
    ReluNetwork post = affine_network(1, 1, {{0, 0, sx * sy}}, {0.0});
    return compose(post, compose(core, pre));
}

namespace {

struct ReciprocalPlan {
    // scale 2.0 keeps the Newton fixed point t = z = 0 on dyadic square
    // inputs, where the sawtooth interpolant is exact
    double t_scale = 2.0;
    double m_scale = 2.0;
    double step_error(int k, double z_range) const {
        const double ep1 = z_range * t_scale * product_gadget_error_bound(k);
        const double ep2 = t_scale * m_scale * product_gadget_error_bound(k);
        // |t| <= 2.1 multiplies the inner product error
        return ep2 + 2.1 * ep1;
    }
};

}  // namespace

double reciprocal_gadget_error_bound(int k, double z_range, int newton_steps) {
    const ReciprocalPlan plan;
    // Newton's own contraction keeps gadget noise from amplifying: the
    // map derivative 2|1-(1+z)t| is tiny near the fixed point, so step
    // errors accumulate close to additively (factor 2 covers the slack).
    const double accum = 2.0 * (newton_steps - 1) * plan.step_error(k, z_range);
    const double truncation = 2.0 * std::pow(z_range, std::ldexp(1.0, newton_steps));
    return accum + truncation;
}

ReluNetwork reciprocal_gadget(int k, double z_range, int newton_steps) {
    if (z_range <= 0.0 || z_range > 0.5) {
        throw ParameterError("reciprocal_gadget: need 0 < z_range <= 1/2");
    }
    if (newton_steps < 1) throw ParameterError("reciprocal_gadget: steps >= 1");
    const ReciprocalPlan plan;
    // state (z, t); t_1 = 1 - z is affine and exact
    ReluNetwork state = affine_network(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}}, {0.0, 1.0});
    for (int step = 2; step <= newton_steps; ++step) {
        // (z, t) -> (z, t, p) with p = z t
        ReluNetwork prod_zt = product_gadget_scaled(k, z_range, plan.t_scale);
        ReluNetwork with_p = parallel({identity_network(2), prod_zt}, {{0, 1}, {0, 1}}, 2);
        // (z, t, p) -> (z, t, m) with m = 2 - t - p
        ReluNetwork to_m = affine_network(
            3, 3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 1, -1.0}, {2, 2, -1.0}}, {0.0, 0.0, 2.0});
        // (z, t, m) -> (z, t') with t' = t m
        ReluNetwork prod_tm = product_gadget_scaled(k, plan.t_scale, plan.m_scale);
        ReluNetwork next = parallel({identity_network(1), prod_tm}, {{0}, {1, 2}}, 3);
        state = compose(next, compose(compose(to_m, with_p), state));
    }
    // drop z from the state
    ReluNetwork select_t = affine_network(1, 2, {{0, 1, 1.0}}, {0.0});
    return compose(select_t, state);
}

CompiledRational compile_rational_R(double epsilon, double x1_max, double entry_bound) {
    if (!(epsilon > 1e-8) || !(epsilon < 1e-1)) {
        throw ParameterError("compile_rational_R: epsilon must lie in (1e-8, 1e-1)");
    }
    if (!(x1_max > 0.0) || !(entry_bound > 0.0)) {
        throw ParameterError("compile_rational_R: box bounds must be positive");
    }
    const double z_range = x1_max * entry_bound;
    if (z_range > 0.45) {
        throw ParameterError("compile_rational_R: |x1 x3| bound exceeds 0.45");
    }
    const int newton = 5;
    const double C = entry_bound;

    auto total_bound = [&](int k) {
        const double eprod = product_gadget_error_bound(k);
        const double ep1 = x1_max * C * eprod;                    // x1*x3
        const double ep2 = C * C * eprod;                         // x4*x5
        const double sy3 = C * C + ep2;
        const double ep3 = x1_max * sy3 * eprod + x1_max * ep2;   // x1*(x4 x5)
        const double r_hi = 1.0 / (1.0 - z_range) + 0.1;
        const double erec = reciprocal_gadget_error_bound(k, z_range, newton) +
                            r_hi * r_hi * ep1;
        const double sw = x1_max * sy3 + ep3;
        const double ep4 = sw * r_hi * eprod;                     // (x1 x4 x5)*r
        return ep4 + r_hi * ep3 + x1_max * C * C * erec;
    };

    int k = 2;
    while (k < 40 && total_bound(k) > epsilon) ++k;
    if (total_bound(k) > epsilon) {
        throw ParameterError("compile_rational_R: cannot meet epsilon on this box");
    }

    // stage A: (x1..x5) -> (p1, p2, x1, x2)
    ReluNetwork p1 = product_gadget_scaled(k, x1_max, C);
    ReluNetwork p2 = product_gadget_scaled(k, C, C);
    ReluNetwork stage_a =
        parallel({p1, p2, identity_network(1), identity_network(1)}, {{0, 2}, {3, 4}, {0}, {1}}, 5);
    // stage B: (p1, p2, x1, x2) -> (r, p3, x2)
    ReluNetwork rec = reciprocal_gadget(k, z_range, newton);
    ReluNetwork p3 = product_gadget_scaled(k, x1_max, C * C + 1.0);
    ReluNetwork stage_b = parallel({rec, p3, identity_network(1)}, {{0}, {2, 1}, {3}}, 4);
    // stage C: (r, p3, x2) -> (p4, x2)
    ReluNetwork p4 = product_gadget_scaled(k, x1_max * (C * C + 1.0) + 1.0,
                                           1.0 / (1.0 - z_range) + 0.1);
    ReluNetwork stage_c = parallel({p4, identity_network(1)}, {{1, 0}, {2}}, 3);
    // stage D: out = x2 - p4
    ReluNetwork stage_d = affine_network(1, 2, {{0, 0, -1.0}, {0, 1, 1.0}}, {0.0});

    CompiledRational out{compose(stage_d, compose(stage_c, compose(stage_b, stage_a))), x1_max,
                         entry_bound, total_bound(k), k};
    return out;
}

}  // namespace opnet::relu
