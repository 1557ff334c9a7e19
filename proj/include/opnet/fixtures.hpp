#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opnet/advdiff.hpp"
#include "opnet/burgers1d.hpp"
#include "opnet/burgers2d.hpp"

namespace opnet::fixtures {

/// Fixed, documented input families so sup-over-family errors reproduce
/// bit-for-bit. Burgers shapes are zero-mean trigonometric profiles sampled
/// as hat interpolants; every member satisfies |u0| <= 0.65, |u0'| <= 1.3.
struct BurgersShape {
    std::string name;
    std::function<double(double)> profile;
};

const std::vector<BurgersShape>& burgers_family();
inline constexpr double kBurgersFamilyM0 = 0.65;
inline constexpr double kBurgersFamilyM1 = 1.3;

/// Hat interpolant of family member `shape` on the uniform m-cell periodic
/// grid over [-pi, pi).
burgers1d::Problem burgers_problem(std::size_t shape, double kappa, std::size_t m);

/// Piecewise-constant advection blocks on the uniform 8-block partition of
/// [0, 1], |a| <= 1. Refinements must keep m divisible by 8 so the blocks
/// stay exactly representable.
const std::vector<std::vector<double>>& advdiff_blocks();
advdiff::Problem advdiff_problem(std::size_t family_index, std::size_t m,
                                 std::function<double(double)> f = nullptr);

/// 2D Burgers data: w0 = 0.4 sin x sin y, ut = 0.5 sin x, vt = -0.3 sin y,
/// all sampled on the fixed `data_cells`-cell periodic lattice.
burgers2d::Problem burgers2d_fixture(double kappa, std::size_t data_cells = 8);

}  // namespace opnet::fixtures
