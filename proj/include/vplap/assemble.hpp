// Assembly of the symmetrized second-order penalized Laplacian,
// A = -1/2 (D_F Theta D_B + D_B Theta D_F), realized directly as the
// 3-point / 5-point stencil with arithmetic averages of adjacent theta.
#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>

#include "vplap/grid.hpp"
#include "vplap/mask.hpp"
#include "vplap/sparse.hpp"

namespace vplap {

// Periodic 1D operator: row i couples i-1, i, i+1 with off-diagonal
// -(theta_i + theta_{i+-1}) / (2 h^2) and diagonal minus their sum.
inline SparseSymMatrix assemble_1d(const DiffusivityField& theta, const Grid1D& grid) {
    if (theta.size() != grid.n)
        throw std::invalid_argument("assemble_1d: theta length must equal grid.n");
    SparseSymMatrix m;
    m.n = grid.n;
    m.row_ptr.resize(static_cast<size_t>(grid.n) + 1);
    m.col.reserve(3u * static_cast<size_t>(grid.n));
    m.val.reserve(3u * static_cast<size_t>(grid.n));
    const double inv2h2 = 1.0 / (2.0 * grid.h * grid.h);
    for (int i = 0; i < grid.n; ++i) {
        m.row_ptr[static_cast<size_t>(i)] = static_cast<int>(m.col.size());
        const int im = grid.wrap(i - 1), ip = grid.wrap(i + 1);
        const double cm = (theta[i] + theta[im]) * inv2h2;
        const double cp = (theta[i] + theta[ip]) * inv2h2;
        std::array<std::pair<int, double>, 3> row{{{im, -cm}, {i, cm + cp}, {ip, -cp}}};
        std::sort(row.begin(), row.end());
        for (auto& [j, v] : row) {
            m.col.push_back(j);
            m.val.push_back(v);
        }
    }
    m.row_ptr[static_cast<size_t>(grid.n)] = static_cast<int>(m.col.size());
    return m;
}

// Doubly periodic 5-point stencil, flattened with k = j*nx + i.
inline SparseSymMatrix assemble_2d(const DiffusivityField& theta, const Grid2D& grid) {
    if (theta.size() != grid.size())
        throw std::invalid_argument("assemble_2d: theta length must equal nx*ny");
    SparseSymMatrix m;
    m.n = grid.size();
    m.row_ptr.resize(static_cast<size_t>(m.n) + 1);
    m.col.reserve(5u * static_cast<size_t>(m.n));
    m.val.reserve(5u * static_cast<size_t>(m.n));
    const double ix = 1.0 / (2.0 * grid.hx * grid.hx);
    const double iy = 1.0 / (2.0 * grid.hy * grid.hy);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            m.row_ptr[static_cast<size_t>(k)] = static_cast<int>(m.col.size());
            const double t = theta[k];
            const double cw = (t + theta[grid.index(i - 1, j)]) * ix;
            const double ce = (t + theta[grid.index(i + 1, j)]) * ix;
            const double cs = (t + theta[grid.index(i, j - 1)]) * iy;
            const double cn = (t + theta[grid.index(i, j + 1)]) * iy;
            std::array<std::pair<int, double>, 5> row{{{grid.index(i, j - 1), -cs},
                                                       {grid.index(i - 1, j), -cw},
                                                       {k, cw + ce + cs + cn},
                                                       {grid.index(i + 1, j), -ce},
                                                       {grid.index(i, j + 1), -cn}}};
            std::sort(row.begin(), row.end());
            for (auto& [c, v] : row) {
                m.col.push_back(c);
                m.val.push_back(v);
            }
        }
    }
    m.row_ptr[static_cast<size_t>(m.n)] = static_cast<int>(m.col.size());
    return m;
}

} // namespace vplap
