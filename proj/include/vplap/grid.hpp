// Periodic uniform grids on [0, 2*pi).
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vplap {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Grid1D {
    int n;
    double h;

    explicit Grid1D(int n_) : n(n_), h(two_pi / n_) {
        if (n_ < 4) throw std::invalid_argument("Grid1D: n must be >= 4");
    }

    double x(int i) const { return wrap(i) * h; }
    int wrap(int i) const { return ((i % n) + n) % n; }
};

struct Grid2D {
    int nx, ny;
    double hx, hy;

    Grid2D(int nx_, int ny_)
        : nx(nx_), ny(ny_), hx(two_pi / nx_), hy(two_pi / ny_) {
        if (nx_ < 4 || ny_ < 4) throw std::invalid_argument("Grid2D: nx,ny must be >= 4");
    }

    double x(int i) const { return wrapx(i) * hx; }
    double y(int j) const { return wrapy(j) * hy; }
    int wrapx(int i) const { return ((i % nx) + nx) % nx; }
    int wrapy(int j) const { return ((j % ny) + ny) % ny; }

    // canonical flattening: k = j*nx + i
    int index(int i, int j) const { return wrapy(j) * nx + wrapx(i); }
    int size() const { return nx * ny; }
};

} // namespace vplap
