#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnet/burgers_forced.hpp"
#include "opnet/fixtures.hpp"
#include "opnet/sweep.hpp"

using namespace opnet;
using namespace opnet::burgers_forced;

TEST_SUITE("burgers_forced") {

TEST_CASE("zero data estimates exactly zero") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 32, true);
    PiecewiseFunction u0(grid, std::vector<double>(grid.node_count(), 0.0), InterpOrder::Linear);
    auto problem = burgers1d::Problem::create(0.5, u0, 1.0, 1.0);
    auto config = Config::unforced(problem, 200, 0.025, 7);
    auto mc = forced_burgers_mc(config, 0.4, 0.25);
    CHECK(mc.value == 0.0);
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("parameter validation") {
    auto problem = fixtures::burgers_problem(0, 0.5, 32);
    CHECK_THROWS_AS(forced_burgers_mc(Config::unforced(problem, 1, 0.025, 7), 0.4, 0.25),
                    ParameterError);
    CHECK_THROWS_AS(forced_burgers_mc(Config::unforced(problem, 100, -0.1, 7), 0.4, 0.25),
                    ParameterError);
    CHECK_THROWS_AS(forced_burgers_mc(Config::unforced(problem, 100, 0.025, 7), 0.4, -1.0),
                    ParameterError);
}

TEST_CASE("forcing slabs must have zero mean and periodic endpoints") {
    auto problem = fixtures::burgers_problem(0, 0.5, 32);
    Grid1D fx = Grid1D::uniform(-kPi, kPi, 16, true);
    std::vector<double> biased(fx.node_count(), 0.1);
    CHECK_THROWS_AS(Config::forced(problem, fx, {0.0, 0.5}, {biased}, 100, 0.025, 7), InputError);
    std::vector<double> slab(fx.node_count());
    for (std::size_t i = 0; i < slab.size(); ++i) slab[i] = 0.3 * std::sin(fx.node(i));
    slab.back() = slab.front();
    CHECK_NOTHROW(Config::forced(problem, fx, {0.0, 0.5}, {slab}, 100, 0.025, 7));
    CHECK_THROWS_AS(Config::forced(problem, fx, {0.1, 0.5}, {slab}, 100, 0.025, 7), InputError);
}

TEST_CASE("unforced estimate agrees with Cole-Hopf within three standard errors") {
    auto problem = fixtures::burgers_problem(0, 0.5, 256);
    const double x = 0.3, t = 0.25;
    const double reference = burgers1d::cole_hopf_exact(problem, x, t, 2);
    auto config = Config::unforced(problem, 20000, 0.0125, 20240607);
    auto mc = forced_burgers_mc(config, x, t, 2);
    CHECK(std::abs(mc.value - reference) <= 3.0 * mc.std_error + 0.01);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("standard error decays like the square root of the path count") {
    auto problem = fixtures::burgers_problem(0, 0.5, 64);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n : {500, 2000, 8000, 32000}) {
        auto config = Config::unforced(problem, n, 0.025, 99);
        auto mc = forced_burgers_mc(config, 0.3, 0.2);
        pts.emplace_back(static_cast<double>(n), mc.std_error);
    }
    CHECK(harness::fit_slope(pts).slope == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("path reduction is independent of the thread count") {
    auto problem = fixtures::burgers_problem(1, 0.5, 64);
    auto config = Config::unforced(problem, 4000, 0.025, 4242);
    auto serial = forced_burgers_mc(config, 0.3, 0.2, 1);
    auto threaded = forced_burgers_mc(config, 0.3, 0.2, 4);
    CHECK(serial.value == threaded.value);
    CHECK(serial.std_error == threaded.std_error);
}

TEST_CASE("forcing shifts the estimate away from the unforced flow") {
    auto problem = fixtures::burgers_problem(0, 0.5, 128);
    Grid1D fx = Grid1D::uniform(-kPi, kPi, 32, true);
    std::vector<double> slab(fx.node_count());
    for (std::size_t i = 0; i < slab.size(); ++i) slab[i] = 0.8 * std::sin(fx.node(i));
    slab.back() = slab.front();
    auto forced = Config::forced(problem, fx, {0.0, 0.25}, {slab}, 40000, 0.0125, 31);
    auto unforced = Config::unforced(problem, 40000, 0.0125, 31);
    auto with_f = forced_burgers_mc(forced, 0.3, 0.25, 2);
    auto without_f = forced_burgers_mc(unforced, 0.3, 0.25, 2);
    CHECK(std::abs(with_f.value - without_f.value) > 5.0 * with_f.std_error);
}

}  // TEST_SUITE
