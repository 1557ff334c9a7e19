#include "opnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace opnet {

namespace {

GaussRule compute_gauss(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p_deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            p_deriv = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / p_deriv;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * p_deriv * p_deriv);
    }
    // ascending node order
    for (int i = 0; i < n / 2; ++i) {
        std::swap(rule.nodes[i], rule.nodes[n - 1 - i]);
        std::swap(rule.weights[i], rule.weights[n - 1 - i]);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw ParameterError("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return s * half;
}

double integrate(const std::function<double(double)>& f, double a, double b, int cells,
                 int order) {
    std::vector<double> parts(static_cast<std::size_t>(cells));
    const double h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        parts[static_cast<std::size_t>(c)] = gauss_panel(f, a + c * h, a + (c + 1) * h, order);
    }
    return pairwise_sum(parts);
}

std::vector<double> linf_lattice(double a, double b, const std::vector<const Grid1D*>& grids,
                                 int refine) {
    double finest = b - a;
    for (const Grid1D* g : grids) finest = std::min(finest, g->min_cell_width());
    const double step = finest / refine;
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(std::ceil((b - a) / step));
    pts.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        pts.push_back(std::min(b, a + static_cast<double>(i) * step));
    }
    for (const Grid1D* g : grids) {
        for (std::size_t j = 0; j < g->node_count(); ++j) {
            const double x = g->node(j);
            if (x >= a && x <= b) pts.push_back(x);
            if (j + 1 < g->node_count()) {
                const double m = 0.5 * (g->node(j) + g->node(j + 1));
                if (m >= a && m <= b) pts.push_back(m);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> linf_lattice(const Grid1D& grid, int refine) {
    return linf_lattice(grid.span_begin(), grid.span_end(), {&grid}, refine);
}

double linf_error(const std::function<double(double)>& f_ref,
                  const std::function<double(double)>& f_approx,
                  const std::vector<double>& lattice) {
    double worst = 0.0;
    for (double x : lattice) {
        const double r = f_ref(x);
        const double g = f_approx(x);
        if (!std::isfinite(r) || !std::isfinite(g)) {
            throw NumericalError("linf_error: non-finite value at x=" + std::to_string(x));
        }
        worst = std::max(worst, std::abs(r - g));
    }
    return worst;
}

double l2_error(const std::function<double(double)>& f_ref,
                const std::function<double(double)>& f_approx, double a, double b, int cells,
                int order) {
    const double sq = integrate(
        [&](double x) {
            const double d = f_ref(x) - f_approx(x);
            if (!std::isfinite(d)) {
                throw NumericalError("l2_error: non-finite value at x=" + std::to_string(x));
            }
            return d * d;
        },
        a, b, cells, order);
    return std::sqrt(std::max(0.0, sq));
}

double error_norm(const std::function<double(double)>& f_ref,
                  const std::function<double(double)>& f_approx, const Grid1D& domain,
                  NormKind kind, int refine) {
    if (kind == NormKind::LInf) {
        return linf_error(f_ref, f_approx, linf_lattice(domain, refine));
    }
    return l2_error(f_ref, f_approx, domain.span_begin(), domain.span_end(),
                    static_cast<int>(domain.cell_count()) * 4, 8);
}

}  // namespace opnet
