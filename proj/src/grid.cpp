#include "opnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace opnet {

Grid1D::Grid1D(std::vector<double> nodes, bool periodic, double period)
    : nodes_(std::move(nodes)), periodic_(periodic), period_(period) {
    if (nodes_.size() < 2) throw InputError("Grid1D: need at least two nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i] < nodes_[i + 1])) {
            throw InputError("Grid1D: nodes must be strictly increasing");
        }
    }
    if (periodic_) {
        const double span = nodes_.back() - nodes_.front();
        if (std::abs(span - period_) > 1e-12 * std::max(1.0, std::abs(period_))) {
            throw InputError("Grid1D: periodic span must equal the period");
        }
    }
    if (max_cell_width() > 100.0 * min_cell_width()) {
        throw InputError("Grid1D: mesh ratio exceeds 100");
    }
}

Grid1D Grid1D::uniform(double a, double b, std::size_t cells, bool periodic) {
    if (!(a < b) || cells == 0) throw InputError("Grid1D::uniform: invalid span or cell count");
    std::vector<double> nodes(cells + 1);
    const double h = (b - a) / static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) nodes[i] = a + h * static_cast<double>(i);
    nodes.back() = b;
    return Grid1D(std::move(nodes), periodic, b - a);
}

double Grid1D::max_cell_width() const {
    double h = 0.0;
    for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) h = std::max(h, nodes_[j + 1] - nodes_[j]);
    return h;
}

double Grid1D::min_cell_width() const {
    double h = nodes_[1] - nodes_[0];
    for (std::size_t j = 1; j + 1 < nodes_.size(); ++j) h = std::min(h, nodes_[j + 1] - nodes_[j]);
    return h;
}

double Grid1D::reduce(double x) const {
    if (periodic_) {
        double r = std::fmod(x - nodes_.front(), period_);
        if (r < 0.0) r += period_;
        // fmod can land exactly on period_ after the correction; wrap it
        if (r >= period_) r = 0.0;
        return nodes_.front() + r;
    }
    const double lo = nodes_.front();
    const double hi = nodes_.back();
    const double eps = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (x < lo - eps || x > hi + eps) {
        throw DomainError("point " + std::to_string(x) + " outside grid span [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return std::clamp(x, lo, hi);
}

std::size_t Grid1D::cell_of(double x) const {
    const double r = reduce(x);
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    std::size_t j = static_cast<std::size_t>(std::distance(nodes_.begin(), it));
    if (j == 0) return 0;
    if (j >= nodes_.size()) return nodes_.size() - 2;
    return j - 1;
}

Grid2D::Grid2D(Grid1D x_nodes, Grid1D y_nodes) : x_(std::move(x_nodes)), y_(std::move(y_nodes)) {
    if (x_.node_count() != y_.node_count()) {
        throw InputError("Grid2D: both axes must share the node count");
    }
}

PiecewiseFunction::PiecewiseFunction(Grid1D grid, std::vector<double> values, InterpOrder order,
                                     Corner corner)
    : values_(std::move(values)), order_(order), corner_(corner) {
    if (values_.size() != grid.node_count()) {
        throw InputError("PiecewiseFunction: value count must match grid node count");
    }
    grid1_.push_back(std::move(grid));
}

PiecewiseFunction::PiecewiseFunction(Grid2D grid, std::vector<double> values, InterpOrder order,
                                     Corner corner)
    : values_(std::move(values)), order_(order), corner_(corner) {
    if (values_.size() != grid.node_count()) {
        throw InputError("PiecewiseFunction: value count must match grid node count");
    }
    grid2_ = std::make_shared<Grid2D>(std::move(grid));
}

const Grid1D& PiecewiseFunction::grid1() const {
    if (grid1_.empty()) throw InputError("PiecewiseFunction: not a 1D function");
    return grid1_.front();
}

const Grid2D& PiecewiseFunction::grid2() const {
    if (!grid2_) throw InputError("PiecewiseFunction: not a 2D function");
    return *grid2_;
}

double PiecewiseFunction::operator()(double x) const { return interpolate(*this, x); }

double PiecewiseFunction::operator()(double x, double y) const { return interpolate(*this, x, y); }

double interpolate(const PiecewiseFunction& f, double x) {
    const Grid1D& g = f.grid1();
    const double r = g.reduce(x);
    const std::size_t j = g.cell_of(r);
    const auto& v = f.values();
    if (f.order() == InterpOrder::Constant) {
        return (f.corner() == Corner::LeftBottom) ? v[j] : v[j + 1];
    }
    const double t = (r - g.node(j)) / g.cell_width(j);
    return (1.0 - t) * v[j] + t * v[j + 1];
}

double interpolate(const PiecewiseFunction& f, double x, double y) {
    const Grid2D& g = f.grid2();
    const double rx = g.x().reduce(x);
    const double ry = g.y().reduce(y);
    const std::size_t jx = g.x().cell_of(rx);
    const std::size_t jy = g.y().cell_of(ry);
    const auto& v = f.values();
    if (f.order() == InterpOrder::Constant) {
        if (f.corner() == Corner::LeftBottom) return v[g.flat_index(jx, jy)];
        return v[g.flat_index(jx + 1, jy + 1)];
    }
    const double tx = (rx - g.x().node(jx)) / g.x().cell_width(jx);
    const double ty = (ry - g.y().node(jy)) / g.y().cell_width(jy);
    const double v00 = v[g.flat_index(jx, jy)];
    const double v01 = v[g.flat_index(jx, jy + 1)];
    const double v10 = v[g.flat_index(jx + 1, jy)];
    const double v11 = v[g.flat_index(jx + 1, jy + 1)];
    return (1.0 - tx) * ((1.0 - ty) * v00 + ty * v01) + tx * ((1.0 - ty) * v10 + ty * v11);
}

PiecewiseFunction sample_input(const std::function<double(double)>& f, const Grid1D& grid,
                               InterpOrder order, Corner corner) {
    std::vector<double> v(grid.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(grid.node(i));
        if (!std::isfinite(v[i])) {
            throw InputError("sample_input: non-finite sample at x=" + std::to_string(grid.node(i)));
        }
    }
    return PiecewiseFunction(grid, std::move(v), order, corner);
}

PiecewiseFunction sample_input(const std::function<double(double, double)>& f, const Grid2D& grid,
                               InterpOrder order, Corner corner) {
    std::vector<double> v(grid.node_count());
    for (std::size_t ix = 0; ix < grid.x().node_count(); ++ix) {
        for (std::size_t iy = 0; iy < grid.y().node_count(); ++iy) {
            const double val = f(grid.x().node(ix), grid.y().node(iy));
            if (!std::isfinite(val)) {
                throw InputError("sample_input: non-finite sample at node (" +
                                 std::to_string(grid.x().node(ix)) + ", " +
                                 std::to_string(grid.y().node(iy)) + ")");
            }
            v[grid.flat_index(ix, iy)] = val;
        }
    }
    return PiecewiseFunction(grid, std::move(v), order, corner);
}

}  // namespace opnet
