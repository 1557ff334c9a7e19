#include "opnet/burgers2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opnet/burgers1d.hpp"
#include "opnet/quadrature.hpp"

namespace opnet::burgers2d {

namespace {

constexpr double kMinKappa = 1e-3;

void check_periodic_linear(const PiecewiseFunction& f, const char* name) {
    if (f.order() != InterpOrder::Linear) {
        throw InputError(std::string("burgers2d: ") + name + " must be order 1");
    }
    if (f.is_2d()) {
        if (!f.grid2().x().periodic() || !f.grid2().y().periodic()) {
            throw InputError(std::string("burgers2d: ") + name + " grid must be periodic");
        }
    } else if (!f.grid1().periodic()) {
        throw InputError(std::string("burgers2d: ") + name + " grid must be periodic");
    }
}

double trapezoid_mean(const Grid1D& g, const std::vector<double>& v) {
    std::vector<double> parts(g.cell_count());
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        parts[c] = 0.5 * (v[c] + v[c + 1]) * g.cell_width(c);
    }
    return pairwise_sum(parts) / g.period();
}

}  // namespace

Problem::Problem(double kappa, PiecewiseFunction w0, PiecewiseFunction ut, PiecewiseFunction vt)
    : kappa_(kappa), w0_(std::move(w0)), ut_(std::move(ut)), vt_(std::move(vt)) {
    const Grid2D& g = w0_.grid2();
    const std::size_t nx = g.x().node_count();
    const std::size_t ny = g.y().node_count();
    const auto& w = w0_.values();

    // column cumulative colint[i*ny+j] = int_{y0}^{y_j} w0(x_i, r) dr
    std::vector<double> colint(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            colint[i * ny + j + 1] = colint[i * ny + j] +
                                     0.5 * (w[g.flat_index(i, j)] + w[g.flat_index(i, j + 1)]) *
                                         g.y().cell_width(j);
        }
    }
    // double integral at nodes: integrate colint along x (colint is linear in x per cell)
    w_nodes_.assign(nx * ny, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            w_nodes_[(i + 1) * ny + j] =
                w_nodes_[i * ny + j] +
                0.5 * (colint[i * ny + j] + colint[(i + 1) * ny + j]) * g.x().cell_width(i);
        }
    }

    const Grid1D& gu = ut_.grid1();
    cum_ut_nodes_.assign(gu.node_count(), 0.0);
    for (std::size_t c = 0; c < gu.cell_count(); ++c) {
        cum_ut_nodes_[c + 1] = cum_ut_nodes_[c] +
                               0.5 * (ut_.values()[c] + ut_.values()[c + 1]) * gu.cell_width(c);
    }
    const Grid1D& gv = vt_.grid1();
    cum_vt_nodes_.assign(gv.node_count(), 0.0);
    for (std::size_t c = 0; c < gv.cell_count(); ++c) {
        cum_vt_nodes_[c + 1] = cum_vt_nodes_[c] +
                               0.5 * (vt_.values()[c] + vt_.values()[c + 1]) * gv.cell_width(c);
    }
}

Problem Problem::create(double kappa, PiecewiseFunction w0, PiecewiseFunction ut,
                        PiecewiseFunction vt, const std::vector<double>* u0_nodes,
                        const std::vector<double>* v0_nodes) {
    if (kappa < kMinKappa) throw ParameterError("burgers2d: kappa must be >= 1e-3");
    check_periodic_linear(w0, "w0");
    check_periodic_linear(ut, "ut");
    check_periodic_linear(vt, "vt");
    if (!w0.is_2d() || ut.is_2d() || vt.is_2d()) {
        throw InputError("burgers2d: w0 must be 2D; ut, vt must be 1D");
    }
    if (std::abs(trapezoid_mean(ut.grid1(), ut.values())) > 1e-12) {
        throw InputError("burgers2d: ut must have zero mean for periodicity");
    }
    if (std::abs(trapezoid_mean(vt.grid1(), vt.values())) > 1e-12) {
        throw InputError("burgers2d: vt must have zero mean for periodicity");
    }
    {
        const Grid2D& g = w0.grid2();
        const std::size_t ny = g.y().node_count();
        for (std::size_t j = 0; j < ny; ++j) {
            std::vector<double> line(g.x().node_count());
            for (std::size_t i = 0; i < line.size(); ++i) line[i] = w0.values()[g.flat_index(i, j)];
            if (std::abs(trapezoid_mean(g.x(), line)) > 1e-12) {
                throw InputError("burgers2d: w0 x-line mean must vanish (row " + std::to_string(j) +
                                 ")");
            }
        }
        for (std::size_t i = 0; i < g.x().node_count(); ++i) {
            std::vector<double> line(ny);
            for (std::size_t j = 0; j < ny; ++j) line[j] = w0.values()[g.flat_index(i, j)];
            if (std::abs(trapezoid_mean(g.y(), line)) > 1e-12) {
                throw InputError("burgers2d: w0 y-line mean must vanish (column " +
                                 std::to_string(i) + ")");
            }
        }
    }
    Problem p(kappa, std::move(w0), std::move(ut), std::move(vt));

    // consistency check of caller-supplied velocity samples against the
    // derived d_y u0 = d_x v0 = w0 construction
    auto check_field = [&](const std::vector<double>* nodes, bool is_u) {
        if (!nodes) return;
        const Grid2D& g = p.data_grid();
        if (nodes->size() != g.node_count()) {
            throw InputError("burgers2d: supplied velocity nodal count mismatch");
        }
        double worst = 0.0;
        std::size_t wi = 0, wj = 0;
        for (std::size_t i = 0; i < g.x().node_count(); ++i) {
            for (std::size_t j = 0; j < g.y().node_count(); ++j) {
                const double want = is_u ? p.u0(g.x().node(i), g.y().node(j))
                                         : p.v0(g.x().node(i), g.y().node(j));
                const double got = (*nodes)[g.flat_index(i, j)];
                const double r = std::abs(want - got);
                if (r > worst) {
                    worst = r;
                    wi = i;
                    wj = j;
                }
            }
        }
        if (worst > 1e-8) {
            throw InputError("burgers2d: consistency violation, max residual " +
                             std::to_string(worst) + " at node (" +
                             std::to_string(g.x().node(wi)) + ", " +
                             std::to_string(g.y().node(wj)) + ")");
        }
    };
    check_field(u0_nodes, true);
    check_field(v0_nodes, false);
    return p;
}

double Problem::cum_ut(double x) const {
    const Grid1D& g = ut_.grid1();
    const double r = g.reduce(x);
    const std::size_t c = g.cell_of(r);
    const double dx = r - g.node(c);
    const double a = ut_.values()[c];
    const double slope = (ut_.values()[c + 1] - a) / g.cell_width(c);
    return cum_ut_nodes_[c] + a * dx + 0.5 * slope * dx * dx;
}

double Problem::cum_vt(double y) const {
    const Grid1D& g = vt_.grid1();
    const double r = g.reduce(y);
    const std::size_t c = g.cell_of(r);
    const double dy = r - g.node(c);
    const double a = vt_.values()[c];
    const double slope = (vt_.values()[c + 1] - a) / g.cell_width(c);
    return cum_vt_nodes_[c] + a * dy + 0.5 * slope * dy * dy;
}

double Problem::w0_double_integral(double x, double y) const {
    const Grid2D& g = w0_.grid2();
    const double rx = g.x().reduce(x);
    const double ry = g.y().reduce(y);
    const std::size_t cx = g.x().cell_of(rx);
    const std::size_t cy = g.y().cell_of(ry);
    const std::size_t ny = g.y().node_count();
    const double hx = g.x().cell_width(cx);
    const double hy = g.y().cell_width(cy);
    const double xi = rx - g.x().node(cx);
    const double eta = ry - g.y().node(cy);
    const auto& w = w0_.values();

    const double w00 = w[g.flat_index(cx, cy)];
    const double w01 = w[g.flat_index(cx, cy + 1)];
    const double w10 = w[g.flat_index(cx + 1, cy)];
    const double w11 = w[g.flat_index(cx + 1, cy + 1)];

    // full-cell block
    double total = w_nodes_[cx * ny + cy];

    // bottom strip: int_{X}^{x} colint_cy(s) ds with colint linear in s
    {
        // colint at (cx, cy) and (cx+1, cy) reconstructed from w_nodes_ differences
        // is exactly the stored column cumulative; rebuild from values instead
        double c0 = 0.0, c1 = 0.0;
        for (std::size_t j = 0; j < cy; ++j) {
            c0 += 0.5 * (w[g.flat_index(cx, j)] + w[g.flat_index(cx, j + 1)]) * g.y().cell_width(j);
            c1 += 0.5 * (w[g.flat_index(cx + 1, j)] + w[g.flat_index(cx + 1, j + 1)]) *
                  g.y().cell_width(j);
        }
        total += c0 * xi + (c1 - c0) * xi * xi / (2.0 * hx);
    }
    // left strip: int_{Y}^{y} rowint_cx(r) dr with rowint linear in r
    {
        double r0 = 0.0, r1 = 0.0;
        for (std::size_t i = 0; i < cx; ++i) {
            r0 += 0.5 * (w[g.flat_index(i, cy)] + w[g.flat_index(i + 1, cy)]) * g.x().cell_width(i);
            r1 += 0.5 * (w[g.flat_index(i, cy + 1)] + w[g.flat_index(i + 1, cy + 1)]) *
                  g.x().cell_width(i);
        }
        total += r0 * eta + (r1 - r0) * eta * eta / (2.0 * hy);
    }
    // corner: int int of the bilinear over [X,x] x [Y,y]
    {
        const double ix0 = xi - xi * xi / (2.0 * hx);  // weight of the (1 - s/hx) factor
        const double ix1 = xi * xi / (2.0 * hx);
        const double iy0 = eta - eta * eta / (2.0 * hy);
        const double iy1 = eta * eta / (2.0 * hy);
        total += w00 * ix0 * iy0 + w01 * ix0 * iy1 + w10 * ix1 * iy0 + w11 * ix1 * iy1;
    }
    return total;
}

double Problem::u0(double x, double y) const {
    // int_{-pi}^{y} w0(x, s) ds + ut(x)
    const Grid2D& g = w0_.grid2();
    const double rx = g.x().reduce(x);
    const double ry = g.y().reduce(y);
    const std::size_t cx = g.x().cell_of(rx);
    const std::size_t cy = g.y().cell_of(ry);
    const auto& w = w0_.values();
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t j = 0; j < cy; ++j) {
        c0 += 0.5 * (w[g.flat_index(cx, j)] + w[g.flat_index(cx, j + 1)]) * g.y().cell_width(j);
        c1 += 0.5 * (w[g.flat_index(cx + 1, j)] + w[g.flat_index(cx + 1, j + 1)]) *
              g.y().cell_width(j);
    }
    const double tx = (rx - g.x().node(cx)) / g.x().cell_width(cx);
    double cum = (1.0 - tx) * c0 + tx * c1;
    const double wa = w0_(rx, g.y().node(cy));
    const double wb = w0_(rx, g.y().node(cy + 1));
    const double eta = ry - g.y().node(cy);
    cum += wa * eta + (wb - wa) * eta * eta / (2.0 * g.y().cell_width(cy));
    return cum + ut_(rx);
}

double Problem::v0(double x, double y) const {
    const Grid2D& g = w0_.grid2();
    const double rx = g.x().reduce(x);
    const double ry = g.y().reduce(y);
    const std::size_t cx = g.x().cell_of(rx);
    const std::size_t cy = g.y().cell_of(ry);
    const auto& w = w0_.values();
    double r0 = 0.0, r1 = 0.0;
    for (std::size_t i = 0; i < cx; ++i) {
        r0 += 0.5 * (w[g.flat_index(i, cy)] + w[g.flat_index(i + 1, cy)]) * g.x().cell_width(i);
        r1 += 0.5 * (w[g.flat_index(i, cy + 1)] + w[g.flat_index(i + 1, cy + 1)]) *
              g.x().cell_width(i);
    }
    const double ty = (ry - g.y().node(cy)) / g.y().cell_width(cy);
    double cum = (1.0 - ty) * r0 + ty * r1;
    const double wa = w0_(g.x().node(cx), ry);
    const double wb = w0_(g.x().node(cx + 1), ry);
    const double xi = rx - g.x().node(cx);
    cum += wa * xi + (wb - wa) * xi * xi / (2.0 * g.x().cell_width(cx));
    return cum + vt_(ry);
}

double Problem::phi0(double x, double y) const {
    return std::exp(-(w0_double_integral(x, y) + cum_ut(x) + cum_vt(y)) / (2.0 * kappa_));
}

Velocity exact_uv(const Problem& p, double x, double y, double t, int quad_refine) {
    if (t <= 0.0) throw ParameterError("burgers2d: t must be positive");
    if (quad_refine < 1) throw ParameterError("burgers2d: quad_refine >= 1");
    const double kappa = p.kappa();
    const double sigma = std::sqrt(2.0 * kappa * t);
    const Grid2D& g = p.data_grid();
    using burgers1d::heat_kernel_periodized;

    // quadrature nodes along each axis: data cells subdivided below sigma
    auto axis_nodes = [&](const Grid1D& axis) {
        std::vector<double> pts, weights;
        const GaussRule& rule = gauss_legendre(16);
        for (std::size_t c = 0; c < axis.cell_count(); ++c) {
            const double a = axis.node(c);
            const double b = axis.node(c + 1);
            const int sub =
                quad_refine * std::max(1, static_cast<int>(std::ceil((b - a) / (3.0 * sigma))));
            for (int q = 0; q < sub; ++q) {
                const double qa = a + (b - a) * q / sub;
                const double qb = a + (b - a) * (q + 1) / sub;
                const double mid = 0.5 * (qa + qb);
                const double half = 0.5 * (qb - qa);
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    pts.push_back(mid + half * rule.nodes[i]);
                    weights.push_back(half * rule.weights[i]);
                }
            }
        }
        return std::make_pair(pts, weights);
    };
    const auto [sx, wx] = axis_nodes(g.x());
    const auto [sy, wy] = axis_nodes(g.y());
    std::vector<double> kx(sx.size()), dkx(sx.size()), ky(sy.size()), dky(sy.size());
    for (std::size_t i = 0; i < sx.size(); ++i) {
        kx[i] = heat_kernel_periodized(x, sx[i], t, kappa, 0);
        dkx[i] = heat_kernel_periodized(x, sx[i], t, kappa, 1);
    }
    for (std::size_t j = 0; j < sy.size(); ++j) {
        ky[j] = heat_kernel_periodized(y, sy[j], t, kappa, 0);
        dky[j] = heat_kernel_periodized(y, sy[j], t, kappa, 1);
    }
    double den = 0.0, num_u = 0.0, num_v = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        for (std::size_t j = 0; j < sy.size(); ++j) {
            const double phi = p.phi0(sx[i], sy[j]);
            const double wq = wx[i] * wy[j] * phi;
            den += wq * kx[i] * ky[j];
            num_u += wq * dkx[i] * ky[j];
            num_v += wq * kx[i] * dky[j];
        }
    }
    if (!(den > 0.0)) throw NumericalError("burgers2d: denominator lost positivity");
    return {-2.0 * kappa * num_u / den, -2.0 * kappa * num_v / den};
}

Velocity rational_uv(const Problem& p, std::size_t s, double x, double y, double t) {
    if (t <= 0.0) throw ParameterError("burgers2d: t must be positive");
    if (s < 2) throw ParameterError("burgers2d: operator lattice needs s >= 2");
    const double kappa = p.kappa();
    using burgers1d::heat_kernel_periodized;
    const Grid1D axis = Grid1D::uniform(-kPi, kPi, s, true);

    // phi0 at operator nodes (s+1 per axis, wrap included)
    std::vector<double> phi((s + 1) * (s + 1));
    for (std::size_t i = 0; i <= s; ++i) {
        for (std::size_t j = 0; j <= s; ++j) {
            phi[i * (s + 1) + j] = p.phi0(axis.node(i), axis.node(j));
        }
    }

    // denominator: I0 phi0 at left-bottom corners against closed-form cell masses
    const double sk = 2.0 * std::sqrt(kappa * t);
    const int L = burgers1d::periodization_shift_count(t, kappa, kTwoPi);
    auto cell_mass = [&](double center, double a, double b) {
        double acc = 0.0;
        for (int l = -L; l <= L; ++l) {
            const double shift = kTwoPi * static_cast<double>(l);
            acc += 0.5 * (std::erf((b + shift - center) / sk) - std::erf((a + shift - center) / sk));
        }
        return acc;
    };
    std::vector<double> mx(s), my(s);
    for (std::size_t c = 0; c < s; ++c) {
        mx[c] = cell_mass(x, axis.node(c), axis.node(c + 1));
        my[c] = cell_mass(y, axis.node(c), axis.node(c + 1));
    }
    double den = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            den += phi[i * (s + 1) + j] * mx[i] * my[j];
        }
    }
    if (!(den > 0.0)) throw NumericalError("burgers2d: rational denominator lost positivity");

    // numerator: bilinear I1 phi0 against the derivative kernel, 16-point
    // Gauss-Legendre per cell per axis
    const GaussRule& rule = gauss_legendre(16);
    const std::size_t q = rule.nodes.size();
    std::vector<double> gx(s * q), gw(s * q), kxv(s * q), dkxv(s * q);
    std::vector<double> gy(s * q), gwy(s * q), kyv(s * q), dkyv(s * q);
    for (std::size_t c = 0; c < s; ++c) {
        const double mid = 0.5 * (axis.node(c) + axis.node(c + 1));
        const double half = 0.5 * axis.cell_width(c);
        for (std::size_t i = 0; i < q; ++i) {
            gx[c * q + i] = mid + half * rule.nodes[i];
            gw[c * q + i] = half * rule.weights[i];
            gy[c * q + i] = gx[c * q + i];
            gwy[c * q + i] = gw[c * q + i];
            kxv[c * q + i] = heat_kernel_periodized(x, gx[c * q + i], t, kappa, 0);
            dkxv[c * q + i] = heat_kernel_periodized(x, gx[c * q + i], t, kappa, 1);
            kyv[c * q + i] = heat_kernel_periodized(y, gy[c * q + i], t, kappa, 0);
            dkyv[c * q + i] = heat_kernel_periodized(y, gy[c * q + i], t, kappa, 1);
        }
    }
    double num_u = 0.0, num_v = 0.0;
    for (std::size_t ci = 0; ci < s; ++ci) {
        const double hx = axis.cell_width(ci);
        for (std::size_t cj = 0; cj < s; ++cj) {
            const double hy = axis.cell_width(cj);
            const double p00 = phi[ci * (s + 1) + cj];
            const double p01 = phi[ci * (s + 1) + cj + 1];
            const double p10 = phi[(ci + 1) * (s + 1) + cj];
            const double p11 = phi[(ci + 1) * (s + 1) + cj + 1];
            for (std::size_t a = 0; a < q; ++a) {
                const double tx = (gx[ci * q + a] - axis.node(ci)) / hx;
                const double wxa = gw[ci * q + a];
                for (std::size_t b = 0; b < q; ++b) {
                    const double ty = (gy[cj * q + b] - axis.node(cj)) / hy;
                    const double bilin = (1.0 - tx) * ((1.0 - ty) * p00 + ty * p01) +
                                         tx * ((1.0 - ty) * p10 + ty * p11);
                    const double wq = wxa * gwy[cj * q + b] * bilin;
                    num_u += wq * dkxv[ci * q + a] * kyv[cj * q + b];
                    num_v += wq * kxv[ci * q + a] * dkyv[cj * q + b];
                }
            }
        }
    }
    return {-2.0 * kappa * num_u / den, -2.0 * kappa * num_v / den};
}

}  // namespace opnet::burgers2d
