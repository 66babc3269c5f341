// Figure-level reproduction harness: convergence tables, spectrum branch
// analysis, eigenfunction distances, CSV export.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vplap/analytic.hpp"
#include "vplap/assemble.hpp"
#include "vplap/grid.hpp"
#include "vplap/mask.hpp"
#include "vplap/solve.hpp"

namespace vplap {

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;
    double eta = 0.0;
    double error_l2 = 0.0;
    double error_linf = 0.0;
    std::string case_tag;
    std::string strategy_tag;
};

struct ErrorPair {
    double l2 = 0.0;
    double linf = 0.0;
};

// Fluid-restricted error (chi < 1, boundary points included), after
// shifting u so its fluid-weighted mean matches that of the reference.
inline ErrorPair error_norms(const RhsVector& u, const RhsVector& exact, const MaskField& mask,
                             double cell_measure) {
    if (u.size() != exact.size() || u.size() != mask.values.size())
        throw std::invalid_argument("error_norms: size mismatch");
    double wsum = 0.0, mu = 0.0, me = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        const double w = 1.0 - mask.values[k];
        if (w <= 0.0) continue;
        wsum += w;
        mu += w * u[k];
        me += w * exact[k];
    }
    if (wsum <= 0.0) throw std::invalid_argument("error_norms: empty fluid set");
    const double shift = me / wsum - mu / wsum;
    ErrorPair err;
    for (size_t k = 0; k < u.size(); ++k) {
        if (mask.values[k] >= 1.0) continue;
        const double d = (u[k] + shift) - exact[k];
        err.linf = std::max(err.linf, std::abs(d));
        err.l2 += d * d;
    }
    err.l2 = std::sqrt(err.l2 * cell_measure);
    return err;
}

// Least-squares line through (log x, log y).
inline std::pair<double, double> fit_slope(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("fit_slope: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0 || ys[i] <= 0.0)
            throw std::invalid_argument("fit_slope: values must be positive");
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

// Penalized 1D right-hand side: f = m^2 cos(mx) in the fluid, scaled by
// (1 - chi) so it vanishes in the solid.
inline RhsVector penalized_rhs_1d(int m, const Grid1D& grid, const MaskField& mask) {
    RhsVector f(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i)
        f[static_cast<size_t>(i)] = (1.0 - mask[i]) * rhs_1d(m, grid.x(i));
    return f;
}

// One 1D solve at resolution n; compares against the Neumann solution w.
inline ConvergenceRow run_1d(int m, double eta, int n) {
    const Grid1D grid(n);
    const MaskField mask = build_mask_1d(grid);
    const DiffusivityField theta = diffusivity(mask, eta);
    const SparseSymMatrix a = assemble_1d(theta, grid);
    const RhsVector f = penalized_rhs_1d(m, grid, mask);
    const auto strategy =
        ConstraintStrategy::replace_row(0, std::vector<double>(static_cast<size_t>(n), 1.0));
    const RhsVector u = solve_constrained(a, f, strategy);
    RhsVector w(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        if (mask[i] < 1.0) w[static_cast<size_t>(i)] = exact_solution_1d(m, grid.x(i));
    const ErrorPair e = error_norms(u, w, mask, grid.h);
    return {n, grid.h, eta, e.l2, e.linf, "1d", "replace-first"};
}

inline std::vector<ConvergenceRow> convergence_study_1d(int m, double eta,
                                                        const std::vector<int>& n_list) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) rows.push_back(run_1d(m, eta, n));
    return rows;
}

struct BranchFit {
    double slope = 0.0;
    double prefactor = 0.0;
};

struct EigenDistance {
    int mode = 0; // continuous mode number n, target cos(nx)
    double l2 = 0.0;
    double linf = 0.0;
};

struct SpectrumReport {
    int n = 0;
    double eta = 0.0;
    std::vector<double> eigenvalues;
    double zero_mode_magnitude = 0.0;
    BranchFit lower;         // fit of lambda_i vs i over the eta*i^2 branch
    BranchFit upper_shifted; // fit of lambda vs i' = i - n/2 + 2
    std::vector<EigenDistance> distances; // modes n/2, n/2+1, n/2+2 vs cos(2x),cos(3x),cos(4x)
};

// Distance between a discrete eigenvector and cos(mode*x), both restricted
// to the fluid and normalized there; sign-aligned.
inline EigenDistance eigenfunction_distance(const Eigen::MatrixXd& vectors, int column, int mode,
                                            const Grid1D& grid, const MaskField& mask) {
    std::vector<double> q, t;
    for (int i = 0; i < grid.n; ++i) {
        if (mask[i] >= 1.0) continue;
        q.push_back(vectors(i, column));
        t.push_back(std::cos(mode * grid.x(i)));
    }
    double nq = 0.0, nt = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        nq += q[i] * q[i];
        nt += t[i] * t[i];
    }
    nq = std::sqrt(nq * grid.h);
    nt = std::sqrt(nt * grid.h);
    double dp = 0.0, dm = 0.0, linf_p = 0.0, linf_m = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        const double a = q[i] / nq, b = t[i] / nt;
        dp += (a - b) * (a - b);
        dm += (a + b) * (a + b);
        linf_p = std::max(linf_p, std::abs(a - b));
        linf_m = std::max(linf_m, std::abs(a + b));
    }
    EigenDistance d;
    d.mode = mode;
    if (dp <= dm) {
        d.l2 = std::sqrt(dp * grid.h);
        d.linf = linf_p;
    } else {
        d.l2 = std::sqrt(dm * grid.h);
        d.linf = linf_m;
    }
    return d;
}

inline SpectrumReport spectrum_study(int n, double eta) {
    const Grid1D grid(n);
    const MaskField mask = build_mask_1d(grid);
    const DiffusivityField theta = diffusivity(mask, eta);
    const SparseSymMatrix a = assemble_1d(theta, grid);
    const SpectrumResult spec = eigen_decompose(a, eta);

    SpectrumReport rep;
    rep.n = n;
    rep.eta = eta;
    rep.eigenvalues = spec.eigenvalues;
    rep.zero_mode_magnitude = std::abs(spec.eigenvalues.front());

    // Lower branch follows eta*i^2 (1-based sorted index i); fit over the
    // power-law regime away from the i=1 outlier and the branch transition
    // near i = n/2.
    {
        std::vector<double> xs, ys;
        for (int i = 2; i <= n / 8; ++i) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(spec.eigenvalues[static_cast<size_t>(i)]);
        }
        const auto [slope, intercept] = fit_slope(xs, ys);
        rep.lower = {slope, std::exp(intercept)};
    }
    // Upper branch: shifted index i' = i - n/2 + 2 for 1-based i >= n/2 - 1;
    // fit below the Nyquist bend.
    {
        // the first upper eigenvalue (~1) sits at 0-based index n/2 - 2
        std::vector<double> xs, ys;
        for (int i = n / 2 - 2; i < 3 * n / 4; ++i) {
            xs.push_back(static_cast<double>(i - n / 2 + 3));
            ys.push_back(spec.eigenvalues[static_cast<size_t>(i)]);
        }
        const auto [slope, intercept] = fit_slope(xs, ys);
        rep.upper_shifted = {slope, std::exp(intercept)};
    }
    // Eigenfunctions number n/2, n/2+1, n/2+2 (1-based) against the 2nd,
    // 3rd and 4th Neumann eigenfunctions.
    for (int off = 0; off < 3; ++off) {
        const int column = n / 2 - 1 + off; // 0-based
        rep.distances.push_back(eigenfunction_distance(spec.eigenvectors, column, 2 + off, grid, mask));
    }
    return rep;
}

enum class Case2D { Square, Disc };

inline RhsVector sampled_rhs_2d(Case2D c, const Grid2D& grid, const MaskField& mask) {
    RhsVector f(static_cast<size_t>(grid.size()));
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            if (c == Case2D::Square) {
                f[static_cast<size_t>(k)] = rhs_2d_square(grid.x(i), grid.y(j), mask[k]);
            } else {
                const double dx = grid.x(i) - pi, dy = grid.y(j) - pi;
                f[static_cast<size_t>(k)] = rhs_2d_disc(std::sqrt(dx * dx + dy * dy), mask[k]);
            }
        }
    return f;
}

inline RhsVector sampled_exact_2d(Case2D c, const Grid2D& grid, const MaskField& mask) {
    RhsVector w(static_cast<size_t>(grid.size()), 0.0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            if (mask[k] >= 1.0) continue;
            if (c == Case2D::Square) {
                w[static_cast<size_t>(k)] = exact_2d_square(grid.x(i), grid.y(j));
            } else {
                const double dx = grid.x(i) - pi, dy = grid.y(j) - pi;
                w[static_cast<size_t>(k)] = exact_2d_disc(std::sqrt(dx * dx + dy * dy));
            }
        }
    return w;
}

inline std::vector<double> fluid_mean_weights(const MaskField& mask) {
    std::vector<double> w(mask.values.size());
    for (size_t k = 0; k < w.size(); ++k) w[k] = 1.0 - mask.values[k];
    return w;
}

inline RhsVector solve_2d(Case2D c, int n, double eta, const ConstraintStrategy& strategy,
                          MaskField* mask_out = nullptr) {
    const Grid2D grid(n, n);
    const MaskField mask = c == Case2D::Square ? build_mask_square(grid) : build_mask_disc(grid);
    const DiffusivityField theta = diffusivity(mask, eta);
    const SparseSymMatrix a = assemble_2d(theta, grid);
    const RhsVector f = sampled_rhs_2d(c, grid, mask);
    if (mask_out) *mask_out = mask;
    return solve_constrained(a, f, strategy);
}

inline ConvergenceRow run_2d(Case2D c, int n, double eta, const std::string& strategy_name) {
    const Grid2D grid(n, n);
    const MaskField mask = c == Case2D::Square ? build_mask_square(grid) : build_mask_disc(grid);
    const auto weights = fluid_mean_weights(mask);
    ConstraintStrategy strategy;
    if (strategy_name == "replace-first")
        strategy = ConstraintStrategy::replace_row(0, weights);
    else if (strategy_name == "replace-half")
        strategy = ConstraintStrategy::replace_row((n / 2) * n, weights);
    else if (strategy_name == "replace-half-mid")
        strategy = ConstraintStrategy::replace_row((n / 2) * n + n / 2, weights);
    else if (strategy_name == "least-squares")
        strategy = ConstraintStrategy::least_squares(weights);
    else
        throw std::invalid_argument("run_2d: unknown strategy " + strategy_name);
    const DiffusivityField theta = diffusivity(mask, eta);
    const SparseSymMatrix a = assemble_2d(theta, grid);
    const RhsVector f = sampled_rhs_2d(c, grid, mask);
    const RhsVector u = solve_constrained(a, f, strategy);
    const RhsVector w = sampled_exact_2d(c, grid, mask);
    const ErrorPair e = error_norms(u, w, mask, grid.hx * grid.hy);
    return {n, grid.hx, eta, e.l2, e.linf, c == Case2D::Square ? "square" : "disc", strategy_name};
}

inline std::vector<ConvergenceRow> convergence_study_2d(Case2D c, double eta,
                                                        const std::vector<int>& n_list,
                                                        const std::string& strategy_name) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) rows.push_back(run_2d(c, n, eta, strategy_name));
    return rows;
}

// Slope of the L-inf column vs n; drops the two coarsest resolutions when
// five or more are present.
inline double linf_slope(const std::vector<ConvergenceRow>& rows) {
    std::vector<double> xs, ys;
    const size_t skip = rows.size() >= 5 ? 2 : 0;
    for (size_t i = skip; i < rows.size(); ++i) {
        xs.push_back(static_cast<double>(rows[i].n));
        ys.push_back(rows[i].error_linf);
    }
    return fit_slope(xs, ys).first;
}

// --- CSV output, 17 significant digits ---

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "n,h,eta,l2,linf,case,strategy\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt17(r.h) << ',' << fmt17(r.eta) << ',' << fmt17(r.error_l2) << ','
           << fmt17(r.error_linf) << ',' << r.case_tag << ',' << r.strategy_tag << '\n';
}

inline std::vector<ConvergenceRow> read_convergence_csv(std::istream& is) {
    std::vector<ConvergenceRow> rows;
    std::string line;
    std::getline(is, line); // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        ConvergenceRow r;
        std::getline(ss, field, ',');
        r.n = std::stoi(field);
        std::getline(ss, field, ',');
        r.h = std::stod(field);
        std::getline(ss, field, ',');
        r.eta = std::stod(field);
        std::getline(ss, field, ',');
        r.error_l2 = std::stod(field);
        std::getline(ss, field, ',');
        r.error_linf = std::stod(field);
        std::getline(ss, r.case_tag, ',');
        std::getline(ss, r.strategy_tag);
        rows.push_back(r);
    }
    return rows;
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumReport& rep) {
    os << "index,lambda,branch\n";
    const int n = rep.n;
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        const char* branch = "zero";
        const int idx = static_cast<int>(i);
        if (idx > 0) branch = idx < n / 2 - 2 ? "lower" : "upper";
        os << idx << ',' << fmt17(rep.eigenvalues[i]) << ',' << branch << '\n';
    }
}

inline void write_eigdist_csv(std::ostream& os, const std::vector<SpectrumReport>& reps) {
    os << "n,h,mode,l2,linf\n";
    for (const auto& rep : reps)
        for (const auto& d : rep.distances)
            os << rep.n << ',' << fmt17(two_pi / rep.n) << ',' << d.mode << ',' << fmt17(d.l2)
               << ',' << fmt17(d.linf) << '\n';
}

} // namespace vplap
