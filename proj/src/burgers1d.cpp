#include "opnet/burgers1d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "opnet/quadrature.hpp"

namespace opnet::burgers1d {

namespace {

constexpr double kMinKappa = 1e-3;

double exact_mean(const PiecewiseFunction& u0) {
    const Grid1D& g = u0.grid1();
    const auto& v = u0.values();
    std::vector<double> parts(g.cell_count());
    for (std::size_t j = 0; j < g.cell_count(); ++j) {
        parts[j] = 0.5 * (v[j] + v[j + 1]) * g.cell_width(j);
    }
    return pairwise_sum(parts) / g.period();
}

}  // namespace

Problem::Problem(double kappa, PiecewiseFunction u0, double M0, double M1,
                 std::vector<double> cumulative)
    : kappa_(kappa), u0_(std::move(u0)), m0_(M0), m1_(M1), cum_(std::move(cumulative)) {}

Problem Problem::create(double kappa, PiecewiseFunction u0, double M0, double M1) {
    if (kappa < kMinKappa) {
        throw ParameterError("burgers1d: kappa must be >= 1e-3 (no shock-limit handling)");
    }
    if (u0.order() != InterpOrder::Linear) throw InputError("burgers1d: u0 must be order 1");
    const Grid1D& g = u0.grid1();
    if (!g.periodic()) throw InputError("burgers1d: u0 grid must be periodic");
    const auto& v = u0.values();
    if (std::abs(v.front() - v.back()) > 1e-12) {
        throw InputError("burgers1d: periodic u0 needs matching endpoint values");
    }
    const double mean = exact_mean(u0);
    if (std::abs(mean) > 1e-12) {
        throw InputError(
            "burgers1d: u0 must have zero mean over one period (measured " +
            std::to_string(mean) +
            "); shift by the mean first -- the solution transforms as "
            "u(x,t) = v(x - mean*t, t) + mean (see galilean_shift)");
    }
    const double tol = 1.0 + 1e-9;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(v[j]) > M0 * tol) throw InputError("burgers1d: |u0| exceeds M0");
    }
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        if (std::abs((v[j + 1] - v[j]) / g.cell_width(j)) > M1 * tol) {
            throw InputError("burgers1d: nodal slope exceeds M1");
        }
    }
    std::vector<double> cum(g.node_count(), 0.0);
    for (std::size_t j = 0; j + 1 < g.node_count(); ++j) {
        cum[j + 1] = cum[j] + 0.5 * (v[j] + v[j + 1]) * g.cell_width(j);
    }
    return Problem(kappa, std::move(u0), M0, M1, std::move(cum));
}

double Problem::cumulative_u0(double y) const {
    const Grid1D& g = u0_.grid1();
    const double r = g.reduce(y);
    const std::size_t j = g.cell_of(r);
    const auto& v = u0_.values();
    const double dx = r - g.node(j);
    const double slope = (v[j + 1] - v[j]) / g.cell_width(j);
    return cum_[j] + v[j] * dx + 0.5 * slope * dx * dx;
}

double Problem::v0(double y) const { return std::exp(-cumulative_u0(y) / (2.0 * kappa_)); }

GalileanShift galilean_shift(double kappa, const PiecewiseFunction& u0, double M0, double M1) {
    const double mean = exact_mean(u0);
    std::vector<double> shifted = u0.values();
    for (double& v : shifted) v -= mean;
    PiecewiseFunction w(u0.grid1(), std::move(shifted), InterpOrder::Linear);
    return GalileanShift{Problem::create(kappa, std::move(w), M0 + std::abs(mean), M1), mean};
}

ColeHopfState ColeHopfState::from_problem(const Problem& p) {
    const Grid1D& g = p.grid();
    const auto& u = p.u0().values();
    const std::size_t m = g.cell_count();
    std::vector<double> factors(m, 1.0);
    for (std::size_t j = 1; j < m; ++j) {
        factors[j] = std::exp(-(u[j] + u[j - 1]) * g.cell_width(j - 1) / (4.0 * p.kappa()));
    }
    ColeHopfState state = from_factors(std::move(factors));
    const double bound = std::exp(kPi * p.bound_m0() / p.kappa()) * (1.0 + 1e-9);
    for (double v : state.v0_nodes) {
        if (v > bound || v < 1.0 / bound) {
            throw NumericalError("ColeHopfState: v0 node outside exp(+-pi M0 / kappa)");
        }
    }
    return state;
}

ColeHopfState ColeHopfState::from_factors(std::vector<double> factors) {
    ColeHopfState s;
    s.v0_nodes.resize(factors.size());
    double prod = 1.0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        if (!(factors[j] > 0.0)) throw InputError("ColeHopfState: factors must be positive");
        prod *= factors[j];
        s.v0_nodes[j] = prod;
    }
    s.factors = std::move(factors);
    return s;
}

std::vector<double> linearized_factors(const Problem& p) {
    const Grid1D& g = p.grid();
    const auto& u = p.u0().values();
    const std::size_t m = g.cell_count();
    std::vector<double> l(m, 1.0);
    for (std::size_t j = 1; j < m; ++j) {
        l[j] = 1.0 - (u[j] + u[j - 1]) * g.cell_width(j - 1) / (4.0 * p.kappa());
    }
    return l;
}

int periodization_shift_count(double t, double kappa, double period) {
    if (t <= 0.0 || kappa <= 0.0) throw ParameterError("periodization: need t > 0, kappa > 0");
    // Gaussian factor below 1e-16 at distance period*(L-1): -ln(1e-16) = 36.84
    const double reach = std::sqrt(36.85 * 4.0 * kappa * t);
    const int L = 1 + static_cast<int>(std::ceil(reach / period));
    return std::max(3, L);
}

namespace {

double heat_kernel(double dx, double t, double kappa) {
    return std::exp(-dx * dx / (4.0 * kappa * t)) / std::sqrt(4.0 * kPi * kappa * t);
}

}  // namespace

double heat_kernel_periodized(double x, double y, double t, double kappa, int derivative,
                              double period) {
    const int L = periodization_shift_count(t, kappa, period);
    double sum = 0.0;
    for (int l = -L; l <= L; ++l) {
        const double dx = x - y - period * static_cast<double>(l);
        const double k = heat_kernel(dx, t, kappa);
        sum += (derivative == 0) ? k : -dx / (2.0 * kappa * t) * k;
    }
    return sum;
}

KernelCoefficients kernel_coefficients(const Grid1D& grid, double x, double t, double kappa) {
    if (t <= 0.0) throw ParameterError("kernel_coefficients: t must be positive");
    if (kappa <= 0.0) throw ParameterError("kernel_coefficients: kappa must be positive");
    if (!grid.periodic()) throw InputError("kernel_coefficients: grid must be periodic");
    const double period = grid.period();
    const int L = periodization_shift_count(t, kappa, period);
    const double s = 2.0 * std::sqrt(kappa * t);
    const std::size_t m = grid.cell_count();

    // mass[j] = integral of the periodized kernel over cell [x_j, x_{j+1}]
    std::vector<double> mass(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int l = -L; l <= L; ++l) {
            const double shift = period * static_cast<double>(l);
            const double hi = (grid.node(j + 1) + shift - x) / s;
            const double lo = (grid.node(j) + shift - x) / s;
            acc += 0.5 * (std::erf(hi) - std::erf(lo));
        }
        mass[j] = acc;
    }

    KernelCoefficients out;
    out.x = x;
    out.t = t;
    out.c2 = mass;
    out.c1.resize(m);
    // Integration by parts folds the hat-weighted derivative-kernel integral
    // into cell masses; the endpoint kernel terms cancel between the two legs
    // of each hat, including the wrap-around hat at node 0.
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t prev = (j + m - 1) % m;
        out.c1[j] = -2.0 * kappa *
                    (mass[prev] / grid.cell_width(prev) - mass[j] / grid.cell_width(j));
    }

    double total = pairwise_sum(out.c2);
    if (std::abs(total - 1.0) > 1e-10) {
        throw NumericalError("kernel_coefficients: cell masses do not sum to 1 (" +
                             std::to_string(total) + ")");
    }
    for (double c : out.c2) {
        if (!(c >= 0.0)) throw NumericalError("kernel_coefficients: negative cell mass");
    }
    return out;
}

double rational_operator(const ColeHopfState& state, const KernelCoefficients& coeffs) {
    if (state.v0_nodes.size() != coeffs.c2.size()) {
        throw InputError("rational_operator: state/coefficient size mismatch");
    }
    const std::size_t m = state.v0_nodes.size();
    std::vector<double> num(m), den(m);
    for (std::size_t j = 0; j < m; ++j) {
        num[j] = state.v0_nodes[j] * coeffs.c1[j];
        den[j] = state.v0_nodes[j] * coeffs.c2[j];
    }
    const double d = pairwise_sum(den);
    if (!(d > 0.0)) {
        throw NumericalError("rational_operator: denominator lost positivity");
    }
    return pairwise_sum(num) / d;
}

double rational_value(const Problem& p, double x, double t) {
    const auto state = ColeHopfState::from_problem(p);
    const auto coeffs = kernel_coefficients(p.grid(), x, t, p.kappa());
    return rational_operator(state, coeffs);
}

double cole_hopf_exact(const Problem& p, double x, double t, int quad_refine) {
    if (t <= 0.0) throw ParameterError("cole_hopf_exact: t must be positive");
    if (quad_refine < 1) throw ParameterError("cole_hopf_exact: quad_refine >= 1");
    const Grid1D& g = p.grid();
    const double kappa = p.kappa();
    const double sigma = std::sqrt(2.0 * kappa * t);
    std::vector<double> nums, dens;
    nums.reserve(g.cell_count() * 4);
    dens.reserve(g.cell_count() * 4);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const double a = g.node(c);
        const double b = g.node(c + 1);
        // keep panels below the kernel width so the Gaussian spike is resolved
        const int auto_sub = static_cast<int>(std::ceil((b - a) / (3.0 * sigma)));
        const int sub = quad_refine * std::max(1, auto_sub);
        for (int q = 0; q < sub; ++q) {
            const double qa = a + (b - a) * q / sub;
            const double qb = a + (b - a) * (q + 1) / sub;
            nums.push_back(gauss_panel(
                [&](double y) {
                    return heat_kernel_periodized(x, y, t, kappa, 1) * p.v0(y);
                },
                qa, qb, 16));
            dens.push_back(gauss_panel(
                [&](double y) {
                    return heat_kernel_periodized(x, y, t, kappa, 0) * p.v0(y);
                },
                qa, qb, 16));
        }
    }
    const double den = pairwise_sum(dens);
    if (!(den > 0.0)) throw NumericalError("cole_hopf_exact: denominator lost positivity");
    return -2.0 * kappa * pairwise_sum(nums) / den;
}

SpectralColeHopf::SpectralColeHopf(const Problem& p, int max_mode)
    : kappa_(p.kappa()), max_mode_(max_mode), re_(static_cast<std::size_t>(max_mode) + 1),
      im_(static_cast<std::size_t>(max_mode) + 1) {
    const Grid1D& g = p.grid();
    // coefficient of e^{iky}: (1/2pi) int v0(y) e^{-iky} dy, with panels
    // small enough to resolve both the integrand and the oscillation
    for (int k = 0; k <= max_mode_; ++k) {
        std::vector<double> res, ims;
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            const double a = g.node(c);
            const double b = g.node(c + 1);
            const int sub = std::max(1, static_cast<int>(std::ceil((b - a) * std::max(1, k) / 4.0)));
            for (int q = 0; q < sub; ++q) {
                const double qa = a + (b - a) * q / sub;
                const double qb = a + (b - a) * (q + 1) / sub;
                res.push_back(gauss_panel(
                    [&](double y) { return p.v0(y) * std::cos(-k * y); }, qa, qb, 16));
                ims.push_back(gauss_panel(
                    [&](double y) { return p.v0(y) * std::sin(-k * y); }, qa, qb, 16));
            }
        }
        re_[static_cast<std::size_t>(k)] = pairwise_sum(res) / kTwoPi;
        im_[static_cast<std::size_t>(k)] = pairwise_sum(ims) / kTwoPi;
    }
}

double SpectralColeHopf::operator()(double x, double t) const {
    if (t <= 0.0) throw ParameterError("SpectralColeHopf: t must be positive");
    // v real: negative modes are conjugates, so sum k >= 1 twice the real part
    double v = re_[0];
    double vx = 0.0;
    for (int k = 1; k <= max_mode_; ++k) {
        const double damp = std::exp(-kappa_ * static_cast<double>(k) * k * t);
        if (damp < 1e-300) break;
        const std::complex<double> ck(re_[static_cast<std::size_t>(k)],
                                      im_[static_cast<std::size_t>(k)]);
        const std::complex<double> eikx(std::cos(k * x), std::sin(k * x));
        const std::complex<double> term = ck * eikx * damp;
        v += 2.0 * term.real();
        vx += 2.0 * (std::complex<double>(0.0, k) * term).real();
    }
    if (!(v > 0.0)) throw NumericalError("SpectralColeHopf: v lost positivity");
    return -2.0 * kappa_ * vx / v;
}

}  // namespace opnet::burgers1d
