#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "opnet/grid.hpp"

namespace opnet::fd2d {

enum class Boundary { Dirichlet, Neumann, Robin };

/// One rank-one update alpha * u v^T. u is always a unit vector e_row;
/// v is e_row for reaction terms or a (sparse) central-difference row for
/// advection terms.
struct RankOneUpdate {
    double alpha = 0.0;
    std::size_t row = 0;
    std::vector<std::pair<std::size_t, double>> v;  // sparse v^T entries
    int group = 2;                                  // 0: a1, 1: a2, 2: a3
};

/// Assembled 2D finite-difference system (S + sum_k alpha_k u_k v_k^T) U = F
/// on an n x n node lattice (x-major flattening p = ix * n + iy).
/// S carries the unscaled 5-point stencil (entries 4 / -1 before boundary
/// closures), updates carry h^2 a3, h a1, h a2.
struct FdSystem {
    std::size_t n = 0;  // nodes per axis; unknown count m = n^2
    double h = 0.0;
    Boundary boundary = Boundary::Dirichlet;
    bool pinned = false;  // pure-Neumann regularization: row 0 pins U_0 = 0
    std::vector<double> S;  // dense row-major m x m
    std::vector<double> F;
    std::vector<RankOneUpdate> updates;

    std::size_t unknowns() const { return n * n; }
};

/// Assemble the central-difference discretization of
///   -Laplace(u) + a1 u_x + a2 u_y + a3 u = f
/// on the unit square. Dirichlet uses the n x n interior lattice with mesh
/// h = 1/(n+1); Neumann/Robin place nodes on the boundary (h = 1/(n-1)) and
/// eliminate ghosts with the second-order closure. Zero coefficient fields
/// contribute no updates. Update order: all a1, then a2, then a3.
FdSystem assemble(std::size_t n, const std::function<double(double, double)>& a1,
                  const std::function<double(double, double)>& a2,
                  const std::function<double(double, double)>& a3,
                  const std::function<double(double, double)>& f,
                  Boundary boundary = Boundary::Dirichlet, double robin_beta = 1.0);

/// Node coordinates of unknown p for the assembly conventions above.
std::pair<double, double> node_coords(const FdSystem& sys, std::size_t p);

/// Sherman-Morrison cascade state: the current inverse T_k plus the log of
/// every update denominator 1 + alpha v^T T u.
struct CascadeState {
    std::size_t dim = 0;
    std::vector<double> T;  // dense row-major
    std::size_t step = 0;
    std::vector<double> condition_log;

    static CascadeState initial(const FdSystem& sys);  // T_0 = S^{-1}
};

inline constexpr double kDenominatorFloor = 1e-10;

/// T <- T - alpha / (1 + alpha v^T T u) (T u)(v^T T). Throws NumericalError
/// naming the step when the denominator magnitude drops below the floor.
void sherman_morrison_step(CascadeState& state, const RankOneUpdate& update);

struct CascadeResult {
    std::vector<double> solution;
    std::vector<double> condition_log;
    std::vector<double> t_final;  // T_m
};

/// Applies every update in order (optionally permuted) and returns
/// U_N = T_m F with the denominator log.
CascadeResult cascade_solve(const FdSystem& sys,
                            const std::vector<std::size_t>* permutation = nullptr);

/// Dense-LU oracle: solves (S + sum alpha u v^T) U = F directly.
std::vector<double> dense_solve(const FdSystem& sys);

/// Dense inverse of S (used for T_0 and by the blessed network constants).
std::vector<double> dense_inverse_of_s(const FdSystem& sys);

/// The element-wise Sherman-Morrison rational:
/// R(x1..x5) = x2 - x1 x4 x5 / (1 + x1 x3). Both algebraic forms are
/// evaluated and must agree to 1e-14; the floor guards the denominator.
double rational_R(double x1, double x2, double x3, double x4, double x5);

/// Plain-text "i j value" triplets for external diffing.
void dump_matrix_triplets(const std::vector<double>& dense, std::size_t dim, std::ostream& out);

}  // namespace opnet::fd2d
