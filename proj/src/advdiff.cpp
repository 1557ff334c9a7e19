#include "opnet/advdiff.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "opnet/quadrature.hpp"

namespace opnet::advdiff {

namespace {

// exp(a*w) integrated over a cell, normalized so a -> 0 is regular
double expm1_over(double a, double w) {
    // int_0^w exp(a s) ds
    if (std::abs(a * w) < 1e-8) return w * (1.0 + 0.5 * a * w);
    return std::expm1(a * w) / a;
}

}  // namespace

Problem::Problem(Grid1D grid, std::vector<double> a, std::function<double(double)> f, double M0)
    : grid_(std::move(grid)), a_(std::move(a)), f_(std::move(f)), m0_(M0) {}

Problem Problem::create(Grid1D grid, std::vector<double> cell_values,
                        std::function<double(double)> f, double M0) {
    if (grid.span_begin() != 0.0) throw InputError("advdiff: domain must start at 0");
    if (grid.periodic()) throw InputError("advdiff: Dirichlet problem is not periodic");
    if (cell_values.size() != grid.cell_count()) {
        throw InputError("advdiff: need one coefficient per cell");
    }
    for (double a : cell_values) {
        if (std::abs(a) > M0 * (1.0 + 1e-12)) throw InputError("advdiff: |a| exceeds M0");
    }
    if (M0 * grid.span_end() > 10.0) {
        throw InputError("advdiff: M0 * L must stay <= 10 to keep exponentials tame");
    }
    return Problem(std::move(grid), std::move(cell_values), std::move(f), M0);
}

IntegratingFactor IntegratingFactor::from_problem(const Problem& p) {
    const Grid1D& g = p.grid();
    IntegratingFactor out;
    out.rates.resize(g.cell_count());
    out.a_nodes.assign(g.node_count(), 1.0);
    out.a_inv_nodes.assign(g.node_count(), 1.0);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        out.rates[c] = std::exp(p.a_cell(c) * g.cell_width(c));
        out.a_inv_nodes[c + 1] = out.a_inv_nodes[c] * out.rates[c];
        out.a_nodes[c + 1] = 1.0 / out.a_inv_nodes[c + 1];
    }
    const double bound = std::exp(p.grid().span_end() * p.bound_m0()) * (1.0 + 1e-9);
    for (std::size_t j = 0; j < out.a_nodes.size(); ++j) {
        if (out.a_nodes[j] > bound || out.a_inv_nodes[j] > bound) {
            throw NumericalError("IntegratingFactor: node value outside exp(+-L M0)");
        }
        if (std::abs(out.a_nodes[j] * out.a_inv_nodes[j] - 1.0) > 1e-12) {
            throw NumericalError("IntegratingFactor: A * A^-1 != 1 at a node");
        }
    }
    return out;
}

namespace {

// Evaluation machinery for the exact operator. A is an exact per-cell
// exponential; f integrals use 32-point Gauss-Legendre panels.
struct ExactTables {
    const Problem* p;
    IntegratingFactor fac;
    std::vector<double> aplus_nodes;   // A+(f) at nodes
    std::vector<double> q_nodes;       // (A- o A+)(f) at nodes
    std::vector<double> w_nodes;       // A-(1) at nodes

    double A(double x) const {
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        return fac.a_nodes[c] * std::exp(-p->a_cell(c) * (x - g.node(c)));
    }
    double Ainv(double x) const { return 1.0 / A(x); }

    double aplus(double x) const {  // A+(f)(x)
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        double v = aplus_nodes[c];
        if (x > g.node(c)) {
            v += gauss_panel([&](double y) { return A(y) * p->f(y); }, g.node(c), x, 32);
        }
        return v;
    }

    double q(double x) const {  // (A- o A+)(f)(x)
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        double v = q_nodes[c];
        if (x > g.node(c)) {
            v += gauss_panel([&](double y) { return Ainv(y) * aplus(y); }, g.node(c), x, 32);
        }
        return v;
    }

    double w(double x) const {  // A-(1)(x), exact exponential antiderivative
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        return w_nodes[c] + fac.a_inv_nodes[c] * expm1_over(p->a_cell(c), x - g.node(c));
    }
};

ExactTables build_exact(const Problem& p) {
    ExactTables t;
    t.p = &p;
    t.fac = IntegratingFactor::from_problem(p);
    const Grid1D& g = p.grid();
    t.aplus_nodes.assign(g.node_count(), 0.0);
    t.q_nodes.assign(g.node_count(), 0.0);
    t.w_nodes.assign(g.node_count(), 0.0);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        t.aplus_nodes[c + 1] =
            t.aplus_nodes[c] +
            gauss_panel([&](double y) { return t.A(y) * p.f(y); }, g.node(c), g.node(c + 1), 32);
        t.w_nodes[c + 1] = t.w_nodes[c] + t.fac.a_inv_nodes[c] * expm1_over(p.a_cell(c), g.cell_width(c));
    }
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        t.q_nodes[c + 1] =
            t.q_nodes[c] + gauss_panel([&](double y) { return t.Ainv(y) * t.aplus(y); },
                                       g.node(c), g.node(c + 1), 32);
    }
    return t;
}

// Discrete-operator tables: right-node piecewise-constant cell sums.
struct DiscreteTables {
    const Problem* p;
    IntegratingFactor fac;
    std::vector<double> f_cells;       // f at cell left endpoints
    std::vector<double> aplus_nodes;   // A+^N(f) at nodes
    std::vector<double> q_nodes;       // (A-^N o A+^N)(f) at nodes
    std::vector<double> w_nodes;       // A-^N(1) at nodes

    double aplusN(double x) const {
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        return aplus_nodes[c] + fac.a_nodes[c + 1] * f_cells[c] * (x - g.node(c));
    }
    double qN(double x) const {
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        return q_nodes[c] + fac.a_inv_nodes[c + 1] * aplus_nodes[c + 1] * (x - g.node(c));
    }
    double wN(double x) const {
        const Grid1D& g = p->grid();
        const std::size_t c = g.cell_of(x);
        return w_nodes[c] + fac.a_inv_nodes[c + 1] * (x - g.node(c));
    }
};

DiscreteTables build_discrete(const Problem& p) {
    DiscreteTables t;
    t.p = &p;
    t.fac = IntegratingFactor::from_problem(p);
    const Grid1D& g = p.grid();
    t.f_cells.resize(g.cell_count());
    for (std::size_t c = 0; c < g.cell_count(); ++c) t.f_cells[c] = p.f(g.node(c));
    t.aplus_nodes.assign(g.node_count(), 0.0);
    t.q_nodes.assign(g.node_count(), 0.0);
    t.w_nodes.assign(g.node_count(), 0.0);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const double w = g.cell_width(c);
        t.aplus_nodes[c + 1] = t.aplus_nodes[c] + t.fac.a_nodes[c + 1] * t.f_cells[c] * w;
        t.w_nodes[c + 1] = t.w_nodes[c] + t.fac.a_inv_nodes[c + 1] * w;
    }
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const double w = g.cell_width(c);
        t.q_nodes[c + 1] = t.q_nodes[c] + t.fac.a_inv_nodes[c + 1] * t.aplus_nodes[c + 1] * w;
    }
    return t;
}

}  // namespace

double exact_solution(const Problem& p, double x) {
    const double L = p.length();
    if (x < -1e-12 || x > L + 1e-12) throw DomainError("advdiff: x outside [0, L]");
    x = std::clamp(x, 0.0, L);
    if (x == 0.0) return 0.0;
    const ExactTables t = build_exact(p);
    if (x == L) return 0.0;
    return -t.q(x) + t.w(x) / t.w(L) * t.q_nodes.back();
}

double discrete_operator(const Problem& p, double x) {
    const double L = p.length();
    if (x < -1e-12 || x > L + 1e-12) throw DomainError("advdiff: x outside [0, L]");
    x = std::clamp(x, 0.0, L);
    if (x == 0.0) return 0.0;
    const DiscreteTables t = build_discrete(p);
    if (x == L) return 0.0;
    return -t.qN(x) + t.wN(x) / t.w_nodes.back() * t.q_nodes.back();
}

double discrete_boundary_weight(const Problem& p, double x) {
    const DiscreteTables t = build_discrete(p);
    return t.wN(p.grid().reduce(x)) / t.w_nodes.back();
}

namespace {

using Monomial = std::vector<int>;  // exponent of v_1..v_m

void add_term(std::map<Monomial, double>& poly, const Monomial& mono, double coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = poly.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) poly.erase(it);
    }
}

Monomial run(std::size_t m, std::size_t lo, std::size_t hi) {  // v_lo..v_hi, 1-based inclusive
    Monomial e(m, 0);
    for (std::size_t k = lo; k <= hi && k >= 1; ++k) e[k - 1] = 1;
    return e;
}

std::map<Monomial, double> poly_product(const std::map<Monomial, double>& a,
                                        const std::map<Monomial, double>& b) {
    std::map<Monomial, double> out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            add_term(out, m, ca * cb);
        }
    }
    return out;
}

}  // namespace

RationalFormStats rational_form_stats(const Problem& p, std::size_t node_index) {
    const Grid1D& g = p.grid();
    const std::size_t m = g.cell_count();
    if (node_index > m) throw InputError("rational_form_stats: node index exceeds m");
    const std::size_t J = node_index;

    auto wN_poly = [&](std::size_t upto) {  // A-^N(1)(x_upto) = sum h_j prod_{k<=j} v_k
        std::map<Monomial, double> poly;
        for (std::size_t j = 1; j <= upto; ++j) {
            add_term(poly, run(m, 1, j), g.cell_width(j - 1));
        }
        return poly;
    };
    auto qN_poly = [&](std::size_t upto) {  // sum_{i<=upto} sum_{j<=i} h_i h_j f_j prod_{j<k<=i} v_k
        std::map<Monomial, double> poly;
        for (std::size_t i = 1; i <= upto; ++i) {
            for (std::size_t j = 1; j <= i; ++j) {
                const double c = g.cell_width(i - 1) * g.cell_width(j - 1) * p.f(g.node(j - 1));
                add_term(poly, run(m, j + 1, i), c);
            }
        }
        return poly;
    };

    const auto numerator_a = poly_product(wN_poly(J), qN_poly(m));
    const auto numerator_b = poly_product(wN_poly(m), qN_poly(J));
    std::map<Monomial, double> numerator = numerator_a;
    for (const auto& [mono, c] : numerator_b) add_term(numerator, mono, -c);

    RationalFormStats stats;
    stats.variable_count = static_cast<int>(m);
    stats.denominator_terms = static_cast<long long>(J);
    stats.numerator_terms = static_cast<long long>(numerator.size());
    for (const auto& [mono, c] : numerator) {
        int deg = 0;
        for (int e : mono) deg += e;
        stats.numerator_degree = std::max(stats.numerator_degree, deg);
    }
    return stats;
}

Problem divergence_form_problem(const Grid1D& grid, const std::function<double(double)>& a,
                                const std::function<double(double)>& f, double M0) {
    std::vector<double> b(grid.cell_count());
    double max_b = 0.0;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        const double a0 = a(grid.node(c));
        const double a1 = a(grid.node(c + 1));
        if (!(a0 > 0.0) || !(a1 > 0.0)) {
            throw InputError("divergence_form_problem: a must be positive");
        }
        b[c] = -(std::log(a1) - std::log(a0)) / grid.cell_width(c);
        max_b = std::max(max_b, std::abs(b[c]));
    }
    if (max_b > M0) throw InputError("divergence_form_problem: derived advection exceeds M0");
    auto f_tilde = [a, f](double x) { return f(x) / a(x); };
    return Problem::create(grid, std::move(b), f_tilde, M0);
}

}  // namespace opnet::advdiff
