#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnet/burgers1d.hpp"
#include "opnet/quadrature.hpp"
#include "opnet/sweep.hpp"

using namespace opnet;
using namespace opnet::burgers1d;

namespace {

Problem sine_problem(double kappa, std::size_t m, double amplitude = 1.0) {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, m, true);
    auto u0 = sample_input([&](double x) { return amplitude * std::sin(x); }, grid,
                           InterpOrder::Linear);
    return Problem::create(kappa, std::move(u0), amplitude, amplitude);
}

}  // namespace

TEST_SUITE("burgers1d") {

TEST_CASE("nonzero mean is rejected and the shift helper fixes it") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 16, true);
    auto u0 = sample_input([](double x) { return std::sin(x) + 0.5; }, grid, InterpOrder::Linear);
    CHECK_THROWS_WITH_AS(Problem::create(0.5, u0, 2.0, 1.0),
                         doctest::Contains("galilean_shift"), InputError);
    auto shifted = galilean_shift(0.5, u0, 2.0, 1.0);
    CHECK(shifted.mean == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("kappa floor is enforced") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 8, true);
    auto u0 = sample_input([](double x) { return std::sin(x); }, grid, InterpOrder::Linear);
    CHECK_THROWS_AS(Problem::create(5e-4, u0, 1.0, 1.0), ParameterError);
}

TEST_CASE("free-space kernel normalizes and the derivative vanishes at the center") {
    // erf closed form: the unperiodized kernel integrates to 1
    const double kappa = 0.1, t = 0.5;
    const double s = 2.0 * std::sqrt(kappa * t);
    const double mass = 0.5 * (std::erf(40.0 / s) - std::erf(-40.0 / s));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(heat_kernel_periodized(0.3, 0.3, 0.5, 0.1, 1) == 0.0);
    CHECK_THROWS_AS(heat_kernel_periodized(0.0, 0.0, -1.0, 0.1), ParameterError);
}

TEST_CASE("periodization truncation is self-converged") {
    // oracle: a wide 20-shift sum evaluated directly
    const double kappa = 0.1, t = 0.5, x = 0.0;
    for (double y : {-2.0, 0.4, 3.0}) {
        double wide = 0.0;
        for (int l = -20; l <= 20; ++l) {
            const double dx = x - y - kTwoPi * l;
            wide += std::exp(-dx * dx / (4.0 * kappa * t)) / std::sqrt(4.0 * kPi * kappa * t);
        }
        CHECK(heat_kernel_periodized(x, y, t, kappa, 0) == doctest::Approx(wide).epsilon(1e-12));
    }
    CHECK(periodization_shift_count(0.5, 0.1) >= 3);
}

TEST_CASE("zero initial datum stays zero") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 16, true);
    PiecewiseFunction u0(grid, std::vector<double>(grid.node_count(), 0.0), InterpOrder::Linear);
    auto problem = Problem::create(0.5, u0, 1.0, 1.0);
    CHECK(std::abs(cole_hopf_exact(problem, 0.3, 0.2)) <= 1e-13);
    CHECK(std::abs(rational_value(problem, 0.3, 0.2)) <= 1e-13);
}

TEST_CASE("maximum principle on an (x, t) lattice") {
    auto problem = sine_problem(0.5, 64);
    for (double t : {0.05, 0.25, 1.0}) {
        for (int i = 0; i < 16; ++i) {
            const double x = -kPi + kTwoPi * i / 16.0;
            CHECK(std::abs(cole_hopf_exact(problem, x, t)) <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("exact operator agrees with the spectral oracle") {
    auto problem = sine_problem(0.5, 64);
    SpectralColeHopf oracle(problem, 512);
    const double a = cole_hopf_exact(problem, 0.5, 0.25, 2);
    const double b = oracle(0.5, 0.25);
    CHECK(std::abs(a - b) <= 1e-6);
}

TEST_CASE("kernel coefficients: normalization, zero sum, refined-quadrature oracle") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 24, true);
    const double kappa = 0.4, t = 0.3, x = 0.7;
    auto coeffs = kernel_coefficients(grid, x, t, kappa);
    CHECK(std::abs(pairwise_sum(coeffs.c2) - 1.0) <= 1e-10);
    CHECK(std::abs(pairwise_sum(coeffs.c1)) <= 1e-10);
    for (double c : coeffs.c2) CHECK(c > 0.0);

    // independent oracle: integrate the definitions by refined Gauss panels
    const std::size_t m = grid.cell_count();
    for (std::size_t j : {std::size_t(0), std::size_t(5), std::size_t(17)}) {
        double c2 = 0.0;
        for (int sub = 0; sub < 10; ++sub) {
            const double a = grid.node(j) + grid.cell_width(j) * sub / 10.0;
            const double b = grid.node(j) + grid.cell_width(j) * (sub + 1) / 10.0;
            c2 += gauss_panel([&](double y) { return heat_kernel_periodized(x, y, t, kappa, 0); },
                              a, b, 16);
        }
        CHECK(coeffs.c2[j] == doctest::Approx(c2).epsilon(1e-9));

        // hat-weighted derivative-kernel integral for the same node
        const std::size_t prev = (j + m - 1) % m;
        double c1 = 0.0;
        for (int sub = 0; sub < 10; ++sub) {
            const double a = grid.node(prev) + grid.cell_width(prev) * sub / 10.0;
            const double b = grid.node(prev) + grid.cell_width(prev) * (sub + 1) / 10.0;
            c1 += gauss_panel(
                [&](double y) {
                    const double w = (y - grid.node(prev)) / grid.cell_width(prev);
                    return heat_kernel_periodized(x, y, t, kappa, 1) * w;
                },
                a, b, 16);
            const double a2 = grid.node(j) + grid.cell_width(j) * sub / 10.0;
            const double b2 = grid.node(j) + grid.cell_width(j) * (sub + 1) / 10.0;
            c1 += gauss_panel(
                [&](double y) {
                    const double w = (grid.node(j + 1) - y) / grid.cell_width(j);
                    return heat_kernel_periodized(x, y, t, kappa, 1) * w;
                },
                a2, b2, 16);
        }
        CHECK(coeffs.c1[j] == doctest::Approx(-2.0 * kappa * c1).epsilon(1e-9));
    }
}

TEST_CASE("translation equivariance of the kernel coefficients") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 16, true);
    const double delta = 0.37, x = 0.2, t = 0.4, kappa = 0.5;
    std::vector<double> shifted_nodes;
    for (double n : grid.nodes()) shifted_nodes.push_back(n + delta);
    Grid1D shifted(shifted_nodes, true, kTwoPi);
    auto a = kernel_coefficients(grid, x, t, kappa);
    auto b = kernel_coefficients(shifted, x + delta, t, kappa);
    for (std::size_t j = 0; j < a.c1.size(); ++j) {
        CHECK(std::abs(a.c1[j] - b.c1[j]) <= 1e-12);
        CHECK(std::abs(a.c2[j] - b.c2[j]) <= 1e-12);
    }
}

TEST_CASE("cumulative products equal the exact exponential integrals") {
    auto problem = sine_problem(0.5, 48);
    auto state = ColeHopfState::from_problem(problem);
    const Grid1D& g = problem.grid();
    for (std::size_t j = 0; j < state.v0_nodes.size(); ++j) {
        const double direct = problem.v0(g.node(j));
        CHECK(std::abs(state.v0_nodes[j] - direct) <= 1e-13 * direct);
    }
    // periodic closure: the product over the full period returns to one
    double prod = 1.0;
    const auto& u = problem.u0().values();
    for (std::size_t j = 1; j <= g.cell_count(); ++j) {
        prod *= std::exp(-(u[j] + u[j - 1]) * g.cell_width(j - 1) / (4.0 * 0.5));
    }
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one-cell sanity: two-term ratio expanded by hand") {
    auto problem = sine_problem(0.5, 2);
    auto state = ColeHopfState::from_problem(problem);
    auto coeffs = kernel_coefficients(problem.grid(), 0.4, 0.3, 0.5);
    const double byhand = (state.v0_nodes[0] * coeffs.c1[0] + state.v0_nodes[1] * coeffs.c1[1]) /
                          (state.v0_nodes[0] * coeffs.c2[0] + state.v0_nodes[1] * coeffs.c2[1]);
    CHECK(rational_operator(state, coeffs) == doctest::Approx(byhand).epsilon(1e-15));
}

TEST_CASE("first-order rate against the spectral oracle") {
    const double kappa = 0.5, x = 0.5, t = 0.25;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t m : {16, 32, 64, 128}) {
        auto problem = sine_problem(kappa, m);
        SpectralColeHopf oracle(problem, 512);
        const double err = std::abs(oracle(x, t) - rational_value(problem, x, t));
        const double h = kTwoPi / static_cast<double>(m);
        pts.emplace_back(h, err);
        // first-order envelope with constant 2 (M0^2 / kappa + M1)
        CHECK(err <= 2.0 * (1.0 / kappa + 1.0) * h);
    }
    const double slope = harness::fit_slope(pts).slope;
    CHECK(slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("boundedness of the rational operator") {
    auto problem = sine_problem(0.5, 128);
    for (double x : {-2.0, 0.0, 1.3}) {
        for (double t : {0.1, 0.5}) {
            CHECK(std::abs(rational_value(problem, x, t)) <= 1.0 + 1.0);
        }
    }
}

TEST_CASE("linearized V factors perturb the output at first order") {
    const double kappa = 0.5, x = 0.5, t = 0.25;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t m : {32, 64, 128, 256}) {
        auto problem = sine_problem(kappa, m);
        auto coeffs = kernel_coefficients(problem.grid(), x, t, kappa);
        const double exact_v = rational_operator(ColeHopfState::from_problem(problem), coeffs);
        const double linear_v =
            rational_operator(ColeHopfState::from_factors(linearized_factors(problem)), coeffs);
        pts.emplace_back(kTwoPi / static_cast<double>(m), std::abs(exact_v - linear_v));
    }
    const double slope = harness::fit_slope(pts).slope;
    CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

}  // TEST_SUITE
