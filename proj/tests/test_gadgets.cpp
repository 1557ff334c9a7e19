#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnet/fd2d.hpp"
#include "opnet/gadgets.hpp"
#include "opnet/quadrature.hpp"

using namespace opnet;
using namespace opnet::relu;

TEST_SUITE("gadgets") {

TEST_CASE("hat geometry on a uniform grid") {
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 10);
    auto net = hat_trunk(grid, 5);  // node at 0.5, h = 0.1
    CHECK(net.evaluate_scalar(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(net.evaluate_scalar(0.45) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(net.evaluate_scalar(0.6) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(net.evaluate_scalar(0.4) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(net.width() == 3);
    CHECK(net.depth() == 1);
}

TEST_CASE("hat networks reproduce the nodal basis exactly") {
    Grid1D grid({0.0, 0.1, 0.35, 0.4, 0.78, 1.0});
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        auto net = hat_trunk(grid, i);
        // exact nodal-basis values by the geometric definition
        auto basis = [&](double x) {
            if (i > 0 && x >= grid.node(i - 1) && x <= grid.node(i)) {
                return (x - grid.node(i - 1)) / (grid.node(i) - grid.node(i - 1));
            }
            if (i + 1 < grid.node_count() && x >= grid.node(i) && x <= grid.node(i + 1)) {
                return (grid.node(i + 1) - x) / (grid.node(i + 1) - grid.node(i));
            }
            if (i == 0 && x <= grid.node(0)) return 1.0;
            if (i + 1 == grid.node_count() && x >= grid.node(i)) return 1.0;
            return 0.0;
        };
        for (int s = 0; s <= 10000; ++s) {
            const double x = static_cast<double>(s) / 10000.0;
            CHECK(std::abs(net.evaluate_scalar(x) - basis(x)) <= 1e-14);
        }
    }
}

TEST_CASE("hat partition of unity") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 12, true);
    std::vector<ReluNetwork> hats;
    for (std::size_t i = 0; i < grid.node_count(); ++i) hats.push_back(hat_trunk(grid, i));
    for (int s = 0; s <= 2000; ++s) {
        const double x = -kPi + kTwoPi * s / 2000.0;
        double sum = 0.0;
        for (const auto& h : hats) sum += h.evaluate_scalar(x);
        CHECK(std::abs(sum - 1.0) <= 1e-13);
    }
}

TEST_CASE("linear branch nets compute dot products exactly") {
    CHECK(linear_branch_net({1.0, -1.0}).evaluate({3.0, 5.0})[0] == -2.0);
    CHECK(linear_branch_net({0.0, 0.0}).evaluate({3.0, 5.0})[0] == 0.0);
    std::vector<double> coeff(20);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        coeff[i] = 2.0 * uniform01(11, 1, i) - 1.0;
    }
    auto net = linear_branch_net(coeff);
    CHECK(net.width() == 2);
    CHECK(net.depth() == 1);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> u(coeff.size());
        double dot = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = 4.0 * uniform01(12, trial, i) - 2.0;
            dot += coeff[i] * u[i];
        }
        CHECK(std::abs(net.evaluate(u)[0] - dot) <= 1e-13);
    }
}

TEST_CASE("square gadget: dyadic exactness and the 2^{-2k-2} envelope") {
    auto k1 = square_gadget(1);
    CHECK(k1.evaluate_scalar(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(k1.evaluate_scalar(0.0) == 0.0);
    CHECK(k1.evaluate_scalar(1.0) == doctest::Approx(1.0).epsilon(1e-15));

    double prev = -1.0;
    for (int k : {2, 4, 6, 8}) {
        auto net = square_gadget(k);
        double worst = 0.0;
        for (int i = 0; i <= (1 << 14); ++i) {
            const double x = static_cast<double>(i) / (1 << 14);
            worst = std::max(worst, std::abs(x * x - net.evaluate_scalar(x)));
        }
        CHECK(worst <= square_gadget_error_bound(k) * (1.0 + 1e-9) + 1e-15);
        if (prev > 0.0) {
            // one step of k here is two dyadic levels: error shrinks 16x
            CHECK(prev / worst == doctest::Approx(16.0).epsilon(1e-6));
        }
        prev = worst;
    }
}

TEST_CASE("product gadget") {
    auto net = product_gadget(8);
    CHECK(net.evaluate({0.5, 0.5})[0] == doctest::Approx(0.25).epsilon(1e-12));
    // identical square arguments cancel when either input vanishes;
    // only summation-order residue at machine precision survives
    CHECK(std::abs(net.evaluate({0.0, 0.77})[0]) <= 1e-15);
    CHECK(std::abs(net.evaluate({-0.3, 0.0})[0]) <= 1e-15);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 2.0 * uniform01(21, 0, i) - 1.0;
        const double y = 2.0 * uniform01(21, 1, i) - 1.0;
        worst = std::max(worst, std::abs(net.evaluate({x, y})[0] - x * y));
    }
    CHECK(worst <= 3.0 * square_gadget_error_bound(8));

    auto scaled = product_gadget_scaled(8, 4.0, 0.5);
    CHECK(scaled.evaluate({3.7, 0.41})[0] ==
          doctest::Approx(3.7 * 0.41).epsilon(3.0 * square_gadget_error_bound(8) * 2.0));
}

TEST_CASE("reciprocal gadget") {
    auto at_zero = reciprocal_gadget(10, 0.5, 5);
    CHECK(std::abs(at_zero.evaluate_scalar(0.0) - 1.0) <= 1e-10);

    auto net = reciprocal_gadget(12, 0.45, 5);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = -0.45 + 0.9 * static_cast<double>(i) / 1000.0;
        worst = std::max(worst, std::abs(net.evaluate_scalar(z) - 1.0 / (1.0 + z)));
    }
    CHECK(worst <= 1e-6);
    CHECK(std::abs(net.evaluate_scalar(0.3) - 1.0 / 1.3) <= 1e-6);
    CHECK_THROWS_AS(reciprocal_gadget(8, 0.7, 5), ParameterError);
}

TEST_CASE("compiled rational network meets its certified bound") {
    const double x1max = 0.05, box = 1.0;
    auto compiled = compile_rational_R(1e-4, x1max, box);
    CHECK(compiled.error_bound <= 1e-4);
    // x1 = 0 collapses to x2 up to summation-order residue
    for (double x2 : {-0.8, 0.0, 0.9}) {
        CHECK(std::abs(compiled.net.evaluate({0.0, x2, 0.5, -0.4, 0.2})[0] - x2) <= 1e-13);
    }
    double worst = 0.0;
    for (std::size_t s = 0; s < 10000; ++s) {
        const std::vector<double> in = {x1max * uniform01(31, 0, s),
                                        box * (2.0 * uniform01(31, 1, s) - 1.0),
                                        box * (2.0 * uniform01(31, 2, s) - 1.0),
                                        box * (2.0 * uniform01(31, 3, s) - 1.0),
                                        box * (2.0 * uniform01(31, 4, s) - 1.0)};
        const double want = fd2d::rational_R(in[0], in[1], in[2], in[3], in[4]);
        worst = std::max(worst, std::abs(compiled.net.evaluate(in)[0] - want));
    }
    CHECK(worst <= 1e-4);

    const auto s2 = compile_rational_R(1e-2, x1max, box).net.size();
    const auto s4 = compiled.net.size();
    const auto s6 = compile_rational_R(1e-6, x1max, box).net.size();
    CHECK(s2 < s4);
    CHECK(s4 < s6);
    CHECK(static_cast<double>(s4) / s2 <= 8.0);
    CHECK(static_cast<double>(s6) / s4 <= 8.0);
    CHECK_THROWS_AS(compile_rational_R(1e-4, 1.0, 1.0), ParameterError);  // |x1 x3| too big
    CHECK_THROWS_AS(compile_rational_R(0.5, x1max, box), ParameterError);
}

}  // TEST_SUITE
