#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "opnet/common.hpp"

namespace opnet {

/// 1D partition x0 < x1 < ... < xm. When periodic, xm - x0 equals the period
/// and node m is identified with node 0. Mesh ratio max_h/min_h is capped at
/// 100 to keep interpolation constants under control.
class Grid1D {
public:
    Grid1D(std::vector<double> nodes, bool periodic = false, double period = 0.0);

    static Grid1D uniform(double a, double b, std::size_t cells, bool periodic = false);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t cell_count() const { return nodes_.size() - 1; }
    double node(std::size_t i) const { return nodes_[i]; }
    double cell_width(std::size_t j) const { return nodes_[j + 1] - nodes_[j]; }
    double span_begin() const { return nodes_.front(); }
    double span_end() const { return nodes_.back(); }
    bool periodic() const { return periodic_; }
    double period() const { return period_; }
    double max_cell_width() const;
    double min_cell_width() const;

    /// Reduces x into [x0, xm) when periodic (half-open so order-0
    /// interpolation is well-defined at the seam); throws DomainError when
    /// x is outside a non-periodic span.
    double reduce(double x) const;

    /// Index j of the cell [x_j, x_{j+1}) containing the (reduced) point.
    std::size_t cell_of(double x) const;

private:
    std::vector<double> nodes_;
    bool periodic_;
    double period_;
};

/// Tensor grid with lexicographic x-major node order: node p = ix * ny + iy.
/// Both axes carry the same node count, so the flat count is a square.
class Grid2D {
public:
    Grid2D(Grid1D x_nodes, Grid1D y_nodes);

    const Grid1D& x() const { return x_; }
    const Grid1D& y() const { return y_; }
    std::size_t node_count() const { return x_.node_count() * y_.node_count(); }
    std::size_t flat_index(std::size_t ix, std::size_t iy) const {
        return ix * y_.node_count() + iy;
    }

private:
    Grid1D x_;
    Grid1D y_;
};

enum class InterpOrder { Constant = 0, Linear = 1 };

/// Which corner an order-0 cell takes its value from. LeftBottom matches the
/// kernel-coefficient cells (value at the cell's left / left-bottom node);
/// Right matches the advection-diffusion cell sums (value at the right node).
enum class Corner { LeftBottom, Right };

/// Grid plus nodal values with an interpolation order. Order 0 is constant
/// per cell from the designated corner; order 1 is (bi)linear through the
/// nodal values.
class PiecewiseFunction {
public:
    PiecewiseFunction(Grid1D grid, std::vector<double> values, InterpOrder order,
                      Corner corner = Corner::LeftBottom);
    PiecewiseFunction(Grid2D grid, std::vector<double> values, InterpOrder order,
                      Corner corner = Corner::LeftBottom);

    double operator()(double x) const;            // 1D
    double operator()(double x, double y) const;  // 2D

    bool is_2d() const { return grid2_ != nullptr; }
    const Grid1D& grid1() const;
    const Grid2D& grid2() const;
    const std::vector<double>& values() const { return values_; }
    InterpOrder order() const { return order_; }
    Corner corner() const { return corner_; }

private:
    std::vector<Grid1D> grid1_;  // holds 0 or 1 entries
    std::shared_ptr<Grid2D> grid2_;
    std::vector<double> values_;
    InterpOrder order_;
    Corner corner_;
};

double interpolate(const PiecewiseFunction& f, double x);
double interpolate(const PiecewiseFunction& f, double x, double y);

/// Nodal sampling u_m = (u(x_1), ..., u(x_m)); this vector is what branch
/// networks consume. Throws InputError on a non-finite sample.
PiecewiseFunction sample_input(const std::function<double(double)>& f, const Grid1D& grid,
                               InterpOrder order = InterpOrder::Linear,
                               Corner corner = Corner::LeftBottom);
PiecewiseFunction sample_input(const std::function<double(double, double)>& f, const Grid2D& grid,
                               InterpOrder order = InterpOrder::Linear,
                               Corner corner = Corner::LeftBottom);

}  // namespace opnet
