#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "lgpr/errors.hpp"

namespace lgpr {

enum class Axis { X = 0, Y = 1 };
enum class Side { Minus, Plus };

/// Uniform node-centred Cartesian grid. Node (i,j) sits at (x0 + i h, y0 + j h).
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double h_, double x0_, double y0_)
        : nx(nx_), ny(ny_), h(h_), x0(x0_), y0(y0_) {
        if (nx < 4 || ny < 4)
            throw Error("Grid2D: need at least 4 nodes per axis");
        if (!(h > 0.0) || !std::isfinite(h))
            throw Error("Grid2D: spacing must be positive");
    }

    /// Square domain [lo,hi]^2 split into `cells` cells per axis (cells+1 nodes).
    static Grid2D square(double lo, double hi, int cells) {
        const double h = (hi - lo) / cells;
        return Grid2D(cells + 1, cells + 1, h, lo, lo);
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    double x(int i) const { return x0 + i * h; }
    double y(int j) const { return y0 + j * h; }
    int extent(Axis a) const { return a == Axis::X ? nx : ny; }
    // Flat-index stride of one step along an axis.
    std::ptrdiff_t stride(Axis a) const { return a == Axis::X ? 1 : nx; }
    bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }

    bool operator==(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && h == o.h && x0 == o.x0 && y0 == o.y0;
    }
};

/// One value per grid node, row-major (i fastest).
template <typename Scalar>
class Field {
public:
    using Storage = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    Field() = default;
    explicit Field(const Grid2D& g, Scalar fill = Scalar(0))
        : grid_(g), values_(Storage::Constant(static_cast<Eigen::Index>(g.size()), fill)) {}
    Field(const Grid2D& g, Storage v) : grid_(g), values_(std::move(v)) {
        if (static_cast<std::size_t>(values_.size()) != g.size())
            throw Error("Field: value count does not match grid");
    }

    template <typename Fn>
    static Field sample(const Grid2D& g, Fn&& fn) {
        Field f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                f(i, j) = fn(g.x(i), g.y(j));
        return f;
    }

    const Grid2D& grid() const { return grid_; }
    Storage& values() { return values_; }
    const Storage& values() const { return values_; }

    Scalar& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    const Scalar& operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    Scalar& operator[](std::size_t p) { return values_[static_cast<Eigen::Index>(p)]; }
    const Scalar& operator[](std::size_t p) const { return values_[static_cast<Eigen::Index>(p)]; }

    std::size_t size() const { return grid_.size(); }

private:
    Grid2D grid_;
    Storage values_;
};

using ScalarField = Field<double>;
using NodeMask = Field<bool>;

template <typename Scalar>
void require_finite(const Field<Scalar>& f, const char* what) {
    if (!f.values().allFinite())
        throw NumericError(std::string(what) + ": non-finite value in field");
}

template <typename Scalar>
Scalar sgn(Scalar v) {
    return static_cast<Scalar>((Scalar(0) < v) - (v < Scalar(0)));
}

/// 0 when a and b disagree in sign, otherwise the one of smaller magnitude.
template <typename Scalar>
Scalar minmod(Scalar a, Scalar b) {
    if (a * b < Scalar(0))
        return Scalar(0);
    return sgn(a) * std::min(std::abs(a), std::abs(b));
}

/// The argument of larger magnitude; ties go to the first.
template <typename Scalar>
Scalar maxabs(Scalar a, Scalar b) {
    return std::abs(a) >= std::abs(b) ? a : b;
}

namespace detail {
inline int along(Axis a, int i, int j) { return a == Axis::X ? i : j; }
} // namespace detail

/// True when the centred second difference at (i,j) fits on the grid.
inline bool has_second_diff(const Grid2D& g, int i, int j, Axis a) {
    const int k = detail::along(a, i, j);
    return k >= 1 && k <= g.extent(a) - 2;
}

template <typename Scalar>
Scalar second_diff(const Field<Scalar>& f, int i, int j, Axis a) {
    const Grid2D& g = f.grid();
    if (!g.contains(i, j) || !has_second_diff(g, i, j, a))
        throw StencilError("second_diff: stencil leaves the grid");
    const std::size_t p = g.index(i, j);
    const std::ptrdiff_t s = g.stride(a);
    const Scalar h2 = Scalar(g.h * g.h);
    return (f[p + s] - Scalar(2) * f[p] + f[p - s]) / h2;
}

/// Second difference, or 0 where the stencil does not fit (first-order fallback).
template <typename Scalar>
Scalar second_diff_or_zero(const Field<Scalar>& f, int i, int j, Axis a) {
    const Grid2D& g = f.grid();
    if (!g.contains(i, j) || !has_second_diff(g, i, j, a))
        return Scalar(0);
    return second_diff(f, i, j, a);
}

/// Second-order ENO one-sided first derivative. Throws when the first-order
/// neighbour is missing; the minmod correction drops to 0 near the boundary.
template <typename Scalar>
Scalar eno_one_sided(const Field<Scalar>& f, int i, int j, Axis a, Side side) {
    const Grid2D& g = f.grid();
    const int di = a == Axis::X ? 1 : 0;
    const int dj = a == Axis::Y ? 1 : 0;
    const Scalar h = Scalar(g.h);
    if (side == Side::Minus) {
        if (!g.contains(i - di, j - dj) || !g.contains(i, j))
            throw StencilError("eno_one_sided: no minus neighbour");
        const Scalar corr = minmod(second_diff_or_zero(f, i, j, a),
                                   second_diff_or_zero(f, i - di, j - dj, a));
        const bool full = has_second_diff(g, i, j, a) && has_second_diff(g, i - di, j - dj, a);
        return (f(i, j) - f(i - di, j - dj)) / h + (full ? h / 2 * corr : Scalar(0));
    }
    if (!g.contains(i + di, j + dj) || !g.contains(i, j))
        throw StencilError("eno_one_sided: no plus neighbour");
    const Scalar corr = minmod(second_diff_or_zero(f, i, j, a),
                               second_diff_or_zero(f, i + di, j + dj, a));
    const bool full = has_second_diff(g, i, j, a) && has_second_diff(g, i + di, j + dj, a);
    return (f(i + di, j + dj) - f(i, j)) / h - (full ? h / 2 * corr : Scalar(0));
}

/// Centred first difference, one-sided at the grid edge.
template <typename Scalar>
Scalar centered_diff(const Field<Scalar>& f, int i, int j, Axis a) {
    const Grid2D& g = f.grid();
    const int di = a == Axis::X ? 1 : 0;
    const int dj = a == Axis::Y ? 1 : 0;
    const bool lo = g.contains(i - di, j - dj);
    const bool hi = g.contains(i + di, j + dj);
    if (lo && hi)
        return (f(i + di, j + dj) - f(i - di, j - dj)) / Scalar(2 * g.h);
    if (hi)
        return (f(i + di, j + dj) - f(i, j)) / Scalar(g.h);
    if (lo)
        return (f(i, j) - f(i - di, j - dj)) / Scalar(g.h);
    throw StencilError("centered_diff: isolated node");
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> centered_gradient(const Field<Scalar>& f, int i, int j) {
    return {centered_diff(f, i, j, Axis::X), centered_diff(f, i, j, Axis::Y)};
}

/// Centred-difference Hessian; requires an interior node.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> centered_hessian(const Field<Scalar>& f, int i, int j) {
    const Grid2D& g = f.grid();
    if (i < 1 || j < 1 || i > g.nx - 2 || j > g.ny - 2)
        throw StencilError("centered_hessian: node on the grid edge");
    const Scalar h = Scalar(g.h);
    const Scalar fxy = (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) / (4 * h * h);
    Eigen::Matrix<Scalar, 2, 2> H;
    H << second_diff(f, i, j, Axis::X), fxy, fxy, second_diff(f, i, j, Axis::Y);
    return H;
}

} // namespace lgpr
