#include "opnet/fd2d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace opnet::fd2d {

namespace {

struct AssemblyFrame {
    double h;
    double x0;  // coordinate of node index 0 per axis
};

AssemblyFrame frame_for(std::size_t n, Boundary boundary) {
    if (boundary == Boundary::Dirichlet) {
        const double h = 1.0 / static_cast<double>(n + 1);
        return {h, h};
    }
    const double h = 1.0 / static_cast<double>(n - 1);
    return {h, 0.0};
}

bool field_is_zero(const std::function<double(double, double)>& a, const FdSystem& sys) {
    for (std::size_t p = 0; p < sys.unknowns(); ++p) {
        const auto [x, y] = node_coords(sys, p);
        if (a(x, y) != 0.0) return false;
    }
    return true;
}

}  // namespace

std::pair<double, double> node_coords(const FdSystem& sys, std::size_t p) {
    const AssemblyFrame fr = frame_for(sys.n, sys.boundary);
    const std::size_t ix = p / sys.n;
    const std::size_t iy = p % sys.n;
    return {fr.x0 + fr.h * static_cast<double>(ix), fr.x0 + fr.h * static_cast<double>(iy)};
}

FdSystem assemble(std::size_t n, const std::function<double(double, double)>& a1,
                  const std::function<double(double, double)>& a2,
                  const std::function<double(double, double)>& a3,
                  const std::function<double(double, double)>& f, Boundary boundary,
                  double robin_beta) {
    if (n < 2) throw InputError("fd2d::assemble: need at least a 2x2 node lattice");
    FdSystem sys;
    sys.n = n;
    sys.boundary = boundary;
    const AssemblyFrame fr = frame_for(n, boundary);
    sys.h = fr.h;
    const std::size_t m = n * n;
    sys.S.assign(m * m, 0.0);
    sys.F.assign(m, 0.0);

    double max_adv = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        const auto [x, y] = node_coords(sys, p);
        max_adv = std::max({max_adv, std::abs(a1(x, y)), std::abs(a2(x, y))});
        const double a3v = a3(x, y);
        if (a3v < 0.0) {
            throw InputError("fd2d::assemble: a3 must be nonnegative (node " + std::to_string(p) +
                             ")");
        }
    }
    if (sys.h * max_adv > 1.0) {
        throw InputError("fd2d::assemble: central differences need h*max|a| <= 1");
    }

    auto S = [&](std::size_t r, std::size_t c) -> double& { return sys.S[r * m + c]; };

    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const std::size_t p = ix * n + iy;
            const auto [x, y] = node_coords(sys, p);
            S(p, p) = 4.0;
            sys.F[p] = fr.h * fr.h * f(x, y);
            // neighbor offsets: x +- 1 -> p +- n, y +- 1 -> p +- 1
            struct Nb {
                bool interior;
                std::size_t q;
            };
            const Nb nbs[4] = {
                {ix > 0, p - n}, {ix + 1 < n, p + n}, {iy > 0, p - 1}, {iy + 1 < n, p + 1}};
            for (const Nb& nb : nbs) {
                if (nb.interior) S(p, nb.q) += -1.0;
            }
            if (boundary == Boundary::Dirichlet) continue;

            // ghost elimination on the lattice edge: for homogeneous Neumann
            // u_ghost = u_in; for Robin du/dn + beta u = 0, u_ghost = u_in - 2h beta u_b
            auto close_edge = [&](bool at_edge, std::size_t inward) {
                if (!at_edge) return;
                S(p, inward) += -1.0;
                if (boundary == Boundary::Robin) S(p, p) += 2.0 * fr.h * robin_beta;
            };
            close_edge(ix == 0, p + n);
            close_edge(ix + 1 == n, p - n);
            close_edge(iy == 0, p + 1);
            close_edge(iy + 1 == n, p - 1);
        }
    }

    const bool a3_zero = field_is_zero(a3, sys);
    if (boundary == Boundary::Neumann && a3_zero) {
        // constant nullspace: pin node 0 and mean-correct downstream
        sys.pinned = true;
        for (std::size_t c = 0; c < m; ++c) S(0, c) = 0.0;
        S(0, 0) = 1.0;
        sys.F[0] = 0.0;
    }

    // advection rows: central difference with 1/2 weights so that
    // alpha = h * a matches h^2 * a * du/dx up to the stencil
    auto derivative_row = [&](std::size_t p, bool x_axis) {
        std::vector<std::pair<std::size_t, double>> row;
        const std::size_t ix = p / n, iy = p % n;
        const bool has_minus = x_axis ? (ix > 0) : (iy > 0);
        const bool has_plus = x_axis ? (ix + 1 < n) : (iy + 1 < n);
        const std::size_t off = x_axis ? n : 1;
        if (boundary == Boundary::Dirichlet) {
            // boundary neighbors hold the known zero value and drop out
            if (has_plus) row.emplace_back(p + off, 0.5);
            if (has_minus) row.emplace_back(p - off, -0.5);
        } else {
            // one-sided second-order closure at lattice edges
            if (has_plus && has_minus) {
                row.emplace_back(p + off, 0.5);
                row.emplace_back(p - off, -0.5);
            } else if (has_plus) {
                row.emplace_back(p, -1.5);
                row.emplace_back(p + off, 2.0);
                row.emplace_back(p + 2 * off, -0.5);
            } else {
                row.emplace_back(p, 1.5);
                row.emplace_back(p - off, -2.0);
                row.emplace_back(p - 2 * off, 0.5);
            }
        }
        return row;
    };

    auto push_advection = [&](const std::function<double(double, double)>& a, bool x_axis,
                              int group) {
        if (field_is_zero(a, sys)) return;
        for (std::size_t p = 0; p < m; ++p) {
            if (sys.pinned && p == 0) continue;
            const auto [x, y] = node_coords(sys, p);
            RankOneUpdate up;
            up.alpha = fr.h * a(x, y);
            up.row = p;
            up.v = derivative_row(p, x_axis);
            up.group = group;
            sys.updates.push_back(std::move(up));
        }
    };
    push_advection(a1, true, 0);
    push_advection(a2, false, 1);

    if (!a3_zero) {
        for (std::size_t p = 0; p < m; ++p) {
            if (sys.pinned && p == 0) continue;
            const auto [x, y] = node_coords(sys, p);
            RankOneUpdate up;
            up.alpha = fr.h * fr.h * a3(x, y);
            up.row = p;
            up.v = {{p, 1.0}};
            up.group = 2;
            sys.updates.push_back(std::move(up));
        }
    }
    return sys;
}

CascadeState CascadeState::initial(const FdSystem& sys) {
    CascadeState st;
    st.dim = sys.unknowns();
    st.T = dense_inverse_of_s(sys);
    st.step = 0;
    return st;
}

void sherman_morrison_step(CascadeState& state, const RankOneUpdate& update) {
    const std::size_t m = state.dim;
    ++state.step;
    if (update.alpha == 0.0) {
        state.condition_log.push_back(1.0);
        return;
    }
    // Tu is the column update.row of T; vT = v^T T
    std::vector<double> Tu(m), vT(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) Tu[i] = state.T[i * m + update.row];
    for (const auto& [c, w] : update.v) {
        const double* row = &state.T[c * m];
        for (std::size_t j = 0; j < m; ++j) vT[j] += w * row[j];
    }
    double vTu = 0.0;
    for (const auto& [c, w] : update.v) vTu += w * Tu[c];
    const double den = 1.0 + update.alpha * vTu;
    state.condition_log.push_back(den);
    if (std::abs(den) < kDenominatorFloor) {
        throw NumericalError("sherman_morrison_step: singular update at step " +
                             std::to_string(state.step) + " (denominator " +
                             std::to_string(den) + ")");
    }
    const double scale = update.alpha / den;
    for (std::size_t i = 0; i < m; ++i) {
        const double ti = scale * Tu[i];
        if (ti == 0.0) continue;
        double* row = &state.T[i * m];
        for (std::size_t j = 0; j < m; ++j) row[j] -= ti * vT[j];
    }
}

CascadeResult cascade_solve(const FdSystem& sys, const std::vector<std::size_t>* permutation) {
    CascadeState st = CascadeState::initial(sys);
    const std::size_t count = sys.updates.size();
    if (permutation && permutation->size() != count) {
        throw InputError("cascade_solve: permutation length mismatch");
    }
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t idx = permutation ? (*permutation)[k] : k;
        sherman_morrison_step(st, sys.updates[idx]);
    }
    const std::size_t m = st.dim;
    CascadeResult out;
    out.solution.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        const double* row = &st.T[i * m];
        for (std::size_t j = 0; j < m; ++j) s += row[j] * sys.F[j];
        out.solution[i] = s;
    }
    out.condition_log = std::move(st.condition_log);
    out.t_final = std::move(st.T);
    return out;
}

namespace {

Eigen::MatrixXd full_matrix(const FdSystem& sys) {
    const std::size_t m = sys.unknowns();
    Eigen::MatrixXd A(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) A(i, j) = sys.S[i * m + j];
    }
    for (const auto& up : sys.updates) {
        for (const auto& [c, w] : up.v) A(up.row, c) += up.alpha * w;
    }
    return A;
}

}  // namespace

std::vector<double> dense_solve(const FdSystem& sys) {
    const std::size_t m = sys.unknowns();
    Eigen::MatrixXd A = full_matrix(sys);
    Eigen::VectorXd b(m);
    for (std::size_t i = 0; i < m; ++i) b(i) = sys.F[i];
    Eigen::VectorXd x = A.partialPivLu().solve(b);
    return std::vector<double>(x.data(), x.data() + m);
}

std::vector<double> dense_inverse_of_s(const FdSystem& sys) {
    const std::size_t m = sys.unknowns();
    Eigen::MatrixXd S(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) S(i, j) = sys.S[i * m + j];
    }
    Eigen::MatrixXd inv = S.partialPivLu().inverse();
    std::vector<double> out(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) out[i * m + j] = inv(i, j);
    }
    return out;
}

double rational_R(double x1, double x2, double x3, double x4, double x5) {
    const double den = 1.0 + x1 * x3;
    if (std::abs(den) < kDenominatorFloor) {
        throw NumericalError("rational_R: denominator below floor");
    }
    const double form_a = x2 - x1 * x4 * x5 / den;
    const double form_b = (x2 + x1 * x2 * x3 - x1 * x4 * x5) / den;
    const double scale = std::max({1.0, std::abs(form_a), std::abs(form_b)});
    if (std::abs(form_a - form_b) > 1e-14 * scale) {
        throw NumericalError("rational_R: algebraic forms disagree");
    }
    return form_a;
}

void dump_matrix_triplets(const std::vector<double>& dense, std::size_t dim, std::ostream& out) {
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double v = dense[i * dim + j];
            if (v != 0.0) out << i << ' ' << j << ' ' << v << '\n';
        }
    }
}

}  // namespace opnet::fd2d
