#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnet/burgers2d.hpp"
#include "opnet/fixtures.hpp"
#include "opnet/sweep.hpp"

using namespace opnet;
using namespace opnet::burgers2d;

namespace {

Problem separable_hats(double kappa) {
    // w0 = 0 with single-hat-like smooth profiles: phi0 factorizes
    Grid1D axis = Grid1D::uniform(-kPi, kPi, 16, true);
    Grid2D grid(axis, axis);
    PiecewiseFunction w0(grid, std::vector<double>(grid.node_count(), 0.0), InterpOrder::Linear);
    auto ut = sample_input([](double x) { return 0.4 * std::sin(x); }, axis, InterpOrder::Linear);
    auto vt = sample_input([](double y) { return 0.3 * std::sin(2.0 * y); }, axis,
                           InterpOrder::Linear);
    return Problem::create(kappa, std::move(w0), std::move(ut), std::move(vt));
}

}  // namespace

TEST_SUITE("burgers2d") {

TEST_CASE("zero data gives the zero flow") {
    Grid1D axis = Grid1D::uniform(-kPi, kPi, 8, true);
    Grid2D grid(axis, axis);
    PiecewiseFunction zero2(grid, std::vector<double>(grid.node_count(), 0.0), InterpOrder::Linear);
    PiecewiseFunction zero1(axis, std::vector<double>(axis.node_count(), 0.0), InterpOrder::Linear);
    auto p = Problem::create(0.5, zero2, zero1, zero1);
    CHECK(p.phi0(0.3, -0.7) == 1.0);
    auto exact = exact_uv(p, 0.2, 0.3, 0.1);
    CHECK(std::abs(exact.u) <= 1e-12);
    CHECK(std::abs(exact.v) <= 1e-12);
    auto rational = rational_uv(p, 8, 0.2, 0.3, 0.1);
    CHECK(std::abs(rational.u) <= 1e-12);
    CHECK(std::abs(rational.v) <= 1e-12);
}

TEST_CASE("derived velocities obey the consistency construction") {
    auto p = fixtures::burgers2d_fixture(0.5);
    // finite differences of the derived u0, v0 recover the shared w0
    const double eps = 1e-6;
    for (double x : {-2.0, 0.3, 1.4}) {
        for (double y : {-1.1, 0.0, 2.2}) {
            const double dy_u0 = (p.u0(x, y + eps) - p.u0(x, y - eps)) / (2.0 * eps);
            const double dx_v0 = (p.v0(x + eps, y) - p.v0(x - eps, y)) / (2.0 * eps);
            CHECK(dy_u0 == doctest::Approx(p.w0(x, y)).epsilon(1e-6));
            CHECK(dx_v0 == doctest::Approx(p.w0(x, y)).epsilon(1e-6));
        }
    }
}

TEST_CASE("supplied velocity samples are validated") {
    Grid1D axis = Grid1D::uniform(-kPi, kPi, 8, true);
    Grid2D grid(axis, axis);
    PiecewiseFunction w0 = sample_input(
        [](double x, double y) { return 0.2 * std::sin(x) * std::sin(y); }, grid,
        InterpOrder::Linear);
    auto ut = sample_input([](double x) { return 0.3 * std::sin(x); }, axis, InterpOrder::Linear);
    auto vt = sample_input([](double) { return 0.0; }, axis, InterpOrder::Linear);
    auto base = Problem::create(0.5, w0, ut, vt);
    std::vector<double> good(grid.node_count()), bad;
    for (std::size_t i = 0; i < axis.node_count(); ++i) {
        for (std::size_t j = 0; j < axis.node_count(); ++j) {
            good[grid.flat_index(i, j)] = base.u0(axis.node(i), axis.node(j));
        }
    }
    CHECK_NOTHROW(Problem::create(0.5, w0, ut, vt, &good, nullptr));
    bad = good;
    bad[10] += 1e-5;
    CHECK_THROWS_WITH_AS(Problem::create(0.5, w0, ut, vt, &bad, nullptr),
                         doctest::Contains("consistency violation"), InputError);
}

TEST_CASE("nonzero line means are rejected") {
    Grid1D axis = Grid1D::uniform(-kPi, kPi, 8, true);
    Grid2D grid(axis, axis);
    PiecewiseFunction w0 = sample_input(
        [](double, double y) { return 0.1 + 0.0 * y; }, grid, InterpOrder::Linear);
    PiecewiseFunction zero1(axis, std::vector<double>(axis.node_count(), 0.0), InterpOrder::Linear);
    CHECK_THROWS_AS(Problem::create(0.5, w0, zero1, zero1), InputError);
    auto biased = sample_input([](double x) { return 0.1 + 0.2 * std::sin(x); }, axis,
                               InterpOrder::Linear);
    PiecewiseFunction zero2(grid, std::vector<double>(grid.node_count(), 0.0), InterpOrder::Linear);
    CHECK_THROWS_AS(Problem::create(0.5, zero2, biased, zero1), InputError);
}

TEST_CASE("separable data reduces to two 1D flows") {
    // with w0 = 0 the kernel integrals factorize: u depends on x only
    auto p = separable_hats(0.5);
    auto a = exact_uv(p, 0.4, -1.0, 0.2);
    auto b = exact_uv(p, 0.4, 2.1, 0.2);
    CHECK(a.u == doctest::Approx(b.u).epsilon(1e-10));
    // the rational variant mixes I0 and I1 in y, so its u-component is only
    // y-independent up to the interpolation error
    auto c = rational_uv(p, 16, 0.4, -1.0, 0.2);
    auto d = rational_uv(p, 16, 0.4, 2.1, 0.2);
    CHECK(c.u == doctest::Approx(d.u).epsilon(0.02));
}

TEST_CASE("rational operator approaches refined exact quadrature") {
    auto p = separable_hats(0.5);
    const double x = 0.5, y = -0.4, t = 0.15;
    auto exact = exact_uv(p, x, y, t, 4);
    auto rational = rational_uv(p, 16, x, y, t);
    CHECK(std::abs(exact.u - rational.u) + std::abs(exact.v - rational.v) <= 0.02);
}

TEST_CASE("first-order rate in the mesh") {
    auto p = fixtures::burgers2d_fixture(0.5);
    const double t = 0.1;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t s : {8, 16, 32}) {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const double x = -kPi + kTwoPi * (i + 0.41) / 5.0;
                const double y = -kPi + kTwoPi * (j + 0.17) / 5.0;
                auto exact = exact_uv(p, x, y, t, 2);
                auto rational = rational_uv(p, s, x, y, t);
                worst = std::max(worst, std::abs(exact.u - rational.u) +
                                            std::abs(exact.v - rational.v));
            }
        }
        pts.emplace_back(kTwoPi / static_cast<double>(s), worst);
    }
    CHECK(harness::fit_slope(pts).slope == doctest::Approx(1.0).epsilon(0.25));
}

}  // TEST_SUITE
