// Mask functions chi for the three geometries and the diffusivity theta.
#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "vplap/grid.hpp"

namespace vplap {

struct MaskField {
    std::vector<double> values;

    double operator[](int k) const { return values[static_cast<size_t>(k)]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Value assigned to grid points lying exactly on the interface.
// Half reproduces the reference choice (1/2 on edges, 1/4 at square
// corners); Zero/One collapse the interface into the fluid/solid.
enum class InterfaceRule { Half, Zero, One };

// Fluid is ]0,pi[, solid the rest; requires x=pi to be a grid point.
inline MaskField build_mask_1d(const Grid1D& grid, InterfaceRule rule = InterfaceRule::Half) {
    if (grid.n % 2 != 0)
        throw std::invalid_argument("build_mask_1d: n must be even so that x=pi is a grid point");
    MaskField mask;
    mask.values.resize(static_cast<size_t>(grid.n));
    const int half = grid.n / 2;
    double iface = 0.5;
    if (rule == InterfaceRule::Zero) iface = 0.0;
    if (rule == InterfaceRule::One) iface = 1.0;
    for (int i = 0; i < grid.n; ++i) {
        double chi;
        if (i == 0 || i == half)
            chi = iface;
        else if (i < half)
            chi = 0.0;
        else
            chi = 1.0;
        mask.values[static_cast<size_t>(i)] = chi;
    }
    return mask;
}

// Fluid square ]pi/2,3pi/2[^2; edges 1/2, corners 1/4.
inline MaskField build_mask_square(const Grid2D& grid, InterfaceRule rule = InterfaceRule::Half) {
    if (grid.nx % 4 != 0 || grid.ny % 4 != 0)
        throw std::invalid_argument("build_mask_square: nx,ny must be multiples of 4 so that "
                                    "x=pi/2 and x=3pi/2 are grid points");
    MaskField mask;
    mask.values.resize(static_cast<size_t>(grid.size()));
    const int xlo = grid.nx / 4, xhi = 3 * grid.nx / 4;
    const int ylo = grid.ny / 4, yhi = 3 * grid.ny / 4;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const bool ix = i > xlo && i < xhi;   // strictly inside in x
            const bool iy = j > ylo && j < yhi;
            const bool bx = i == xlo || i == xhi; // on a vertical interface line
            const bool by = j == ylo || j == yhi;
            double chi;
            if (ix && iy)
                chi = 0.0;
            else if ((bx && iy) || (by && ix))
                chi = 0.5;
            else if (bx && by)
                chi = 0.25;
            else
                chi = 1.0;
            if (rule == InterfaceRule::Zero && chi > 0.0 && chi < 1.0) chi = 0.0;
            if (rule == InterfaceRule::One && chi > 0.0 && chi < 1.0) chi = 1.0;
            mask.values[static_cast<size_t>(grid.index(i, j))] = chi;
        }
    }
    return mask;
}

// Fluid disc r < pi centred at (pi,pi). Points exactly on the circle get
// 1/2, detected with a tight tolerance; on a Cartesian grid the mask is
// binary in practice.
inline MaskField build_mask_disc(const Grid2D& grid) {
    MaskField mask;
    mask.values.resize(static_cast<size_t>(grid.size()));
    const double eps_geom = 1e-12 * std::numbers::pi;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double dx = grid.x(i) - std::numbers::pi;
            const double dy = grid.y(j) - std::numbers::pi;
            const double r = std::sqrt(dx * dx + dy * dy);
            double chi;
            if (std::abs(r - std::numbers::pi) <= eps_geom)
                chi = 0.5;
            else if (r < std::numbers::pi)
                chi = 0.0;
            else
                chi = 1.0;
            mask.values[static_cast<size_t>(grid.index(i, j))] = chi;
        }
    }
    return mask;
}

struct DiffusivityField {
    std::vector<double> values;
    double eta = 1.0;

    double operator[](int k) const { return values[static_cast<size_t>(k)]; }
    int size() const { return static_cast<int>(values.size()); }
};

// theta = (1 - chi) + eta*chi
inline DiffusivityField diffusivity(const MaskField& mask, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("diffusivity: eta must be positive");
    DiffusivityField theta;
    theta.eta = eta;
    theta.values.resize(mask.values.size());
    for (size_t k = 0; k < mask.values.size(); ++k)
        theta.values[k] = (1.0 - mask.values[k]) + eta * mask.values[k];
    return theta;
}

inline void write_mask_csv(std::ostream& os, const MaskField& mask, const Grid1D& grid) {
    os << "index,x,chi\n";
    for (int i = 0; i < grid.n; ++i)
        os << i << ',' << grid.x(i) << ',' << mask[i] << '\n';
}

inline void write_mask_csv(std::ostream& os, const MaskField& mask, const Grid2D& grid) {
    os << "index,x,y,chi\n";
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            os << k << ',' << grid.x(i) << ',' << grid.y(j) << ',' << mask[k] << '\n';
        }
}

} // namespace vplap
