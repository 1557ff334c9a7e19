#include "opnet/fixtures.hpp"

#include <cmath>

namespace opnet::fixtures {

const std::vector<BurgersShape>& burgers_family() {
    static const std::vector<BurgersShape> family = {
        {"sine", [](double x) { return 0.6 * std::sin(x); }},
        {"sine2", [](double x) { return 0.45 * std::sin(2.0 * x); }},
        {"cosine", [](double x) { return 0.5 * std::cos(x); }},
        {"mixed", [](double x) { return 0.35 * std::sin(x) + 0.25 * std::cos(2.0 * x); }},
        {"shifted", [](double x) { return 0.55 * std::sin(x + 0.7); }},
    };
    return family;
}

burgers1d::Problem burgers_problem(std::size_t shape, double kappa, std::size_t m) {
    const auto& fam = burgers_family();
    if (shape >= fam.size()) throw InputError("burgers_problem: unknown family member");
    Grid1D grid = Grid1D::uniform(-kPi, kPi, m, true);
    PiecewiseFunction u0 = sample_input(fam[shape].profile, grid, InterpOrder::Linear);
    // sampled trapezoid means of these profiles vanish analytically; remove
    // the rounding residue so the zero-mean gate is exact
    std::vector<double> v = u0.values();
    double mean = 0.0;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        mean += 0.5 * (v[c] + v[c + 1]) * grid.cell_width(c);
    }
    mean /= grid.period();
    for (double& x : v) x -= mean;
    v.back() = v.front();
    return burgers1d::Problem::create(kappa, PiecewiseFunction(grid, v, InterpOrder::Linear),
                                      kBurgersFamilyM0, kBurgersFamilyM1);
}

const std::vector<std::vector<double>>& advdiff_blocks() {
    static const std::vector<std::vector<double>> blocks = {
        {0.9, -0.7, 0.4, -0.2, 0.8, -0.5, 0.3, -1.0},
        {-0.6, 0.6, -0.6, 0.6, -0.6, 0.6, -0.6, 0.6},
        {1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0},
        {0.2, 0.4, 0.6, 0.8, -0.8, -0.6, -0.4, -0.2},
        {0.0, 0.5, -0.5, 1.0, -1.0, 0.25, -0.25, 0.75},
    };
    return blocks;
}

advdiff::Problem advdiff_problem(std::size_t family_index, std::size_t m,
                                 std::function<double(double)> f) {
    const auto& blocks = advdiff_blocks();
    if (family_index >= blocks.size()) throw InputError("advdiff_problem: unknown family member");
    if (m % blocks[family_index].size() != 0) {
        throw InputError("advdiff_problem: m must be a multiple of the block count");
    }
    Grid1D grid = Grid1D::uniform(0.0, 1.0, m);
    std::vector<double> cells(m);
    const std::size_t per_block = m / blocks[family_index].size();
    for (std::size_t c = 0; c < m; ++c) cells[c] = blocks[family_index][c / per_block];
    if (!f) f = [](double) { return 1.0; };
    return advdiff::Problem::create(std::move(grid), std::move(cells), std::move(f), 1.0);
}

burgers2d::Problem burgers2d_fixture(double kappa, std::size_t data_cells) {
    Grid1D axis = Grid1D::uniform(-kPi, kPi, data_cells, true);
    Grid2D grid(axis, axis);
    PiecewiseFunction w0 = sample_input(
        [](double x, double y) { return 0.4 * std::sin(x) * std::sin(y); }, grid,
        InterpOrder::Linear);
    PiecewiseFunction ut =
        sample_input([](double x) { return 0.5 * std::sin(x); }, axis, InterpOrder::Linear);
    PiecewiseFunction vt =
        sample_input([](double y) { return -0.3 * std::sin(y); }, axis, InterpOrder::Linear);
    return burgers2d::Problem::create(kappa, std::move(w0), std::move(ut), std::move(vt));
}

}  // namespace opnet::fixtures
