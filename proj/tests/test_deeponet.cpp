#include <doctest.h>

#include <cmath>
#include <vector>

#include "opnet/advdiff.hpp"
#include "opnet/deeponet.hpp"
#include "opnet/fixtures.hpp"

using namespace opnet;
using namespace opnet::deeponet;

TEST_SUITE("deeponet") {

TEST_CASE("zero branches give the zero model") {
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 8);
    auto model = assemble_interpolation_deeponet(std::vector<double>(9, 0.0), grid);
    for (double y : {0.0, 0.37, 1.0}) CHECK(model.evaluate(y) == 0.0);
}

TEST_CASE("affine branch values are reproduced exactly on the span") {
    Grid1D grid({0.0, 0.2, 0.45, 0.8, 1.0});
    std::vector<double> values;
    for (double y : grid.nodes()) values.push_back(3.0 * y - 1.0);
    auto model = assemble_interpolation_deeponet(values, grid);
    for (int i = 0; i <= 100; ++i) {
        const double y = static_cast<double>(i) / 100.0;
        CHECK(std::abs(model.evaluate(y) - (3.0 * y - 1.0)) <= 1e-13);
    }
}

TEST_CASE("node evaluation returns the branch value") {
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 6);
    std::vector<double> values = {2.0, -1.0, 0.5, 4.0, 0.0, 1.0, -3.0};
    auto model = assemble_interpolation_deeponet(values, grid);
    for (std::size_t k = 0; k < values.size(); ++k) {
        CHECK(model.evaluate(grid.node(k)) ==
              doctest::Approx(values[k]).epsilon(1e-13));
    }
    CHECK_THROWS_AS(model.evaluate(1.5), DomainError);
    CHECK_THROWS_AS(assemble_interpolation_deeponet({1.0, 2.0}, grid), InputError);
}

TEST_CASE("evaluation matches the extended-precision sum") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 64, true);
    std::vector<double> values(grid.node_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = std::sin(3.0 * grid.node(i)) * 7.3;
    }
    auto model = assemble_interpolation_deeponet(values, grid);
    for (int i = 0; i < 100; ++i) {
        const double y = -kPi + kTwoPi * (uniform01(5, 0, static_cast<std::uint64_t>(i)));
        const double fast = model.evaluate(y);
        const double slow = model.evaluate_extended(y);
        CHECK(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)));
    }
}

TEST_CASE("evaluation is linear in the branch vector") {
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 16);
    std::vector<double> b1(grid.node_count()), b2(grid.node_count()), sum(grid.node_count());
    for (std::size_t i = 0; i < b1.size(); ++i) {
        b1[i] = std::cos(2.0 * grid.node(i));
        b2[i] = grid.node(i) * grid.node(i);
        sum[i] = b1[i] + b2[i];
    }
    auto m1 = assemble_interpolation_deeponet(b1, grid);
    auto m2 = assemble_interpolation_deeponet(b2, grid);
    auto ms = assemble_interpolation_deeponet(sum, grid);
    for (double y : {0.1, 0.44, 0.91}) {
        CHECK(std::abs(ms.evaluate(y) - m1.evaluate(y) - m2.evaluate(y)) <= 1e-13);
    }
}

TEST_CASE("error budget terms") {
    BudgetParams base;
    base.alpha = 1.0;
    base.m = 1.0;
    base.p = 4.0;
    base.d = 1.0;
    base.branch_width = 1e6;
    base.branch_depth = 1e6;
    base.trunk_size = 20.0;
    auto terms = error_budget(base);
    // m = 1 with N*L -> infinity kills the branch term
    CHECK(terms.branch <= 1e-11);
    CHECK(terms.interpolation == doctest::Approx(1.0));

    auto theta1 = base;
    theta1.trunk_size = 20.0;
    auto theta2 = base;
    theta2.trunk_size = 40.0;
    CHECK(error_budget(theta2).trunk < error_budget(theta1).trunk);

    // complexity scalings from the remark drive every term to eps = 0.1
    const double eps = 0.1;
    BudgetParams remark;
    remark.d = 1.0;
    remark.alpha = 1.0;
    remark.m = 1.0 / eps;
    remark.p = 1.0 / std::sqrt(eps);
    remark.branch_width = 1e6;
    remark.branch_depth = 1e6;  // N*L ~ eps^{-d/eps} = 1e10
    remark.trunk_size = std::pow(1.5 * std::log(1.0 / eps), 2.0);
    auto r = error_budget(remark);
    CHECK(r.interpolation <= eps * (1.0 + 1e-12));
    CHECK(r.spectral <= eps * (1.0 + 1e-12));
    CHECK(r.branch <= eps * (1.0 + 1e-12));
    CHECK(r.trunk <= eps * (1.0 + 1e-12));

    BudgetParams bad = base;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(error_budget(bad), ParameterError);
}

TEST_CASE("zero branch error for a linear operator") {
    // G: f -> u at fixed a is linear in f; the discrete operator inherits it,
    // so linear branch nets reproduce the branch values exactly
    const std::size_t m = 16;
    Grid1D out_grid = Grid1D::uniform(0.0, 1.0, 8);
    auto problem_for = [&](const std::vector<double>& f_cells) {
        Grid1D grid = Grid1D::uniform(0.0, 1.0, m);
        PiecewiseFunction f(grid, [&] {
            std::vector<double> nodal(grid.node_count());
            for (std::size_t c = 0; c < m; ++c) nodal[c] = f_cells[c];
            nodal[m] = f_cells[m - 1];
            return nodal;
        }(), InterpOrder::Constant);
        return advdiff::Problem::create(grid, std::vector<double>(m, 0.6),
                                        [f](double x) { return f(x); }, 1.0);
    };
    // coefficients c^k_l from unit forcings
    std::vector<std::vector<double>> coeff(out_grid.node_count(), std::vector<double>(m, 0.0));
    for (std::size_t l = 0; l < m; ++l) {
        std::vector<double> unit(m, 0.0);
        unit[l] = 1.0;
        auto p = problem_for(unit);
        for (std::size_t k = 0; k < out_grid.node_count(); ++k) {
            coeff[k][l] = advdiff::discrete_operator(p, out_grid.node(k));
        }
    }
    std::vector<double> f_cells(m);
    for (std::size_t c = 0; c < m; ++c) f_cells[c] = std::sin(5.0 * static_cast<double>(c));
    auto p = problem_for(f_cells);
    for (std::size_t k = 0; k < out_grid.node_count(); ++k) {
        const double direct = advdiff::discrete_operator(p, out_grid.node(k));
        const double via_net = relu::linear_branch_net(coeff[k]).evaluate(f_cells)[0];
        CHECK(std::abs(direct - via_net) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("bochner-riesz assembly stays real and converges with R") {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, 64, true);
    std::vector<double> values(grid.node_count());
    auto target = [](double y) { return std::sin(y) + 0.3 * std::cos(2.0 * y); };
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = target(grid.node(i));
    double prev = 1e9;
    for (double R : {4.0, 8.0, 16.0}) {
        auto model = assemble_bochner_riesz_model(values, grid, R, 1.0);
        CHECK(model.conjugate_symmetry_defect() <= 1e-12);
        const double err =
            l2_error(target, [&](double y) { return model.evaluate(y); }, -kPi, kPi, 256, 8);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("measured operator error stays within 10x of the fitted budget") {
    // budget shape for the interpolation assembly: 1/m + (1/p)^2 with the
    // constant fitted on the coarsest cell
    const double kappa = 0.5, t = 0.02;
    auto problem16 = fixtures::burgers_problem(0, kappa, 16);
    burgers1d::SpectralColeHopf oracle(problem16, 512);
    auto measure = [&](std::size_t m, std::size_t p) {
        Grid1D grid_p = Grid1D::uniform(-kPi, kPi, p, true);
        Grid1D grid_m = Grid1D::uniform(-kPi, kPi, m, true);
        std::vector<double> nodal(grid_m.node_count());
        for (std::size_t j = 0; j < nodal.size(); ++j) nodal[j] = problem16.u0()(grid_m.node(j));
        auto fine = burgers1d::Problem::create(
            kappa, PiecewiseFunction(grid_m, nodal, InterpOrder::Linear),
            fixtures::kBurgersFamilyM0, fixtures::kBurgersFamilyM1);
        auto state = burgers1d::ColeHopfState::from_problem(fine);
        std::vector<double> branches(grid_p.node_count());
        for (std::size_t k = 0; k < branches.size(); ++k) {
            branches[k] = burgers1d::rational_operator(
                state, burgers1d::kernel_coefficients(fine.grid(), grid_p.node(k), t, kappa));
        }
        auto model = assemble_interpolation_deeponet(branches, grid_p);
        return error_norm([&](double y) { return oracle(y, t); },
                          [&](double y) { return model.evaluate(y); }, grid_p, NormKind::LInf);
    };
    auto budget = [&](std::size_t m, std::size_t p) {
        BudgetParams params;
        params.m = static_cast<double>(m);
        params.p = static_cast<double>(p);
        return error_budget(params).total();
    };
    const double c_fit = measure(32, 11) / budget(32, 11);
    for (auto [m, p] : {std::pair<std::size_t, std::size_t>{64, 23},
                        std::pair<std::size_t, std::size_t>{128, 47}}) {
        CHECK(measure(m, p) <= 10.0 * c_fit * budget(m, p));
    }
}

TEST_CASE("manifest lists the model contents") {
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 4);
    auto model = assemble_interpolation_deeponet({0, 1, 2, 3, 4}, grid);
    const std::string manifest = model_manifest(model, 32, "burgers1d-rational kappa=0.5", "trunk_");
    CHECK(manifest.find("p 5") != std::string::npos);
    CHECK(manifest.find("m 32") != std::string::npos);
    CHECK(manifest.find("branch burgers1d-rational kappa=0.5") != std::string::npos);
    CHECK(manifest.find("trunk 4 trunk_4.net") != std::string::npos);
}

}  // TEST_SUITE
