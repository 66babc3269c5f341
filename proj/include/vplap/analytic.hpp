// Closed-form objects of the penalized Neumann problem: exact 1D solutions,
// Fourier coefficients, the characteristic function of the exact penalized
// eigenproblem, and the 2D reference solutions.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vplap/grid.hpp"

namespace vplap {


// Exact Neumann solution w(x) = cos(mx) on [0,pi], zero fluid mean.
inline double exact_solution_1d(int m, double x) {
    if (m == 0) return 0.0;
    return std::cos(m * x);
}

// f(x) = m^2 cos(mx)
inline double rhs_1d(int m, double x) {
    return static_cast<double>(m) * m * std::cos(m * x);
}

// Piecewise exact solution of the penalized equation:
//   v(x) = cos(mx) + a1*x + a2   on ]0,pi[
//   v(x) = b1*x + b2             on ]pi,2pi[
struct PenalizedSolution1D {
    int m = 1;
    double eta = 1.0;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;

    double operator()(double x) const {
        if (x < pi) return std::cos(m * x) + a1 * x + a2;
        if (x > pi) return b1 * x + b2;
        return b1 * pi + b2; // shared value at the interface
    }
};

// Coefficients with the zero-mean normalization over [0,2pi].
inline PenalizedSolution1D penalized_coefficients(int m, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("penalized_coefficients: eta must be positive");
    if (m < 0) throw std::invalid_argument("penalized_coefficients: m must be >= 0");
    PenalizedSolution1D s;
    s.m = m;
    s.eta = eta;
    if (m % 2 == 1) {
        s.a1 = (2.0 / pi) * eta / (1.0 + eta);
        s.b1 = (2.0 / pi) * 1.0 / (1.0 + eta);
        s.a2 = -eta / (1.0 + eta);
        s.b2 = -3.0 / (1.0 + eta);
    } else if (m == 0) {
        // f = 0, v is the zero-mean constant
        s.a2 = -1.0;
        s.b2 = 0.0;
    } else {
        // m even: v coincides with w in the fluid; continuity and zero
        // mean fix the constants
        s.a2 = -0.5;
        s.b2 = 0.5;
    }
    return s;
}

inline double penalized_solution_1d(const PenalizedSolution1D& sol, double x) {
    return sol(x);
}

enum class Norm { L2, Linf };

// ||w - v|| over the fluid domain, both shifted to zero fluid mean.
inline double penalization_error(int m, double eta, Norm norm, int samples = 100001) {
    const PenalizedSolution1D v = penalized_coefficients(m, eta);
    const double dx = pi / (samples - 1);
    double mean_w = 0.0, mean_v = 0.0;
    std::vector<double> wv(static_cast<size_t>(samples)), vv(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double x = i * dx;
        wv[static_cast<size_t>(i)] = exact_solution_1d(m, x);
        vv[static_cast<size_t>(i)] = v(x);
        const double wgt = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
        mean_w += wgt * wv[static_cast<size_t>(i)];
        mean_v += wgt * vv[static_cast<size_t>(i)];
    }
    mean_w /= (samples - 1);
    mean_v /= (samples - 1);
    double linf = 0.0, l2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double d = (wv[static_cast<size_t>(i)] - mean_w) - (vv[static_cast<size_t>(i)] - mean_v);
        linf = std::max(linf, std::abs(d));
        const double wgt = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
        l2 += wgt * d * d;
    }
    if (norm == Norm::Linf) return linf;
    return std::sqrt(l2 * dx);
}

// Fourier coefficients of v for odd m; vhat(0) = 0 by the zero-mean
// convention.
inline std::complex<double> fourier_coefficient(int k, int m, double eta) {
    if (m % 2 == 0) throw std::invalid_argument("fourier_coefficient: m must be odd");
    if (eta <= 0.0) throw std::invalid_argument("fourier_coefficient: eta must be positive");
    if (k == 0) return {0.0, 0.0};
    const double md = static_cast<double>(m);
    if (k % 2 == 0) {
        const double kd = static_cast<double>(k);
        return {0.0, (1.0 / pi) * md * md / (kd * (md * md - kd * kd))};
    }
    const double kd = static_cast<double>(k);
    double c = (2.0 / (pi * pi * kd * kd)) * (1.0 - eta) / (1.0 + eta);
    if (k == m || k == -m) c += 0.25;
    return {c, 0.0};
}

// Building blocks a,b,c,d of the 2x2 system for the exact penalized
// eigenmode coefficients (A2,B2).
struct CharCoeffs {
    double a, b, c, d;
};

inline CharCoeffs characteristic_coeffs(double lambda, double eta) {
    const double q = std::sqrt(lambda);
    const double s = std::sqrt(lambda / eta);
    const double se = std::sqrt(eta);
    const double c2 = std::cos(two_pi * s), s2 = std::sin(two_pi * s);
    const double cq = std::cos(pi * q), sq = std::sin(pi * q);
    const double cs = std::cos(pi * s), ss = std::sin(pi * s);
    CharCoeffs r{};
    r.a = c2 * cq - se * s2 * sq - cs;
    r.b = s2 * cq + se * c2 * sq - ss;
    r.c = -c2 * sq - se * s2 * cq + se * ss;
    r.d = -s2 * sq + se * c2 * cq - se * cs;
    return r;
}

// G(lambda; eta) = a*d - b*c; its zeros are the exact penalized eigenvalues.
inline double characteristic_g(double lambda, double eta) {
    if (lambda < 0.0) throw std::invalid_argument("characteristic_g: lambda must be >= 0");
    if (eta <= 0.0) throw std::invalid_argument("characteristic_g: eta must be positive");
    const CharCoeffs k = characteristic_coeffs(lambda, eta);
    return k.a * k.d - k.b * k.c;
}

// All sign-change roots of G in (0, lambda_max], bisected to tol, with
// lambda = 0 prepended. The scan step resolves the fast oscillation in
// sqrt(lambda/eta).
inline std::vector<double> exact_eigenvalues(double eta, double lambda_max, double tol) {
    if (lambda_max <= 0.0 || tol <= 0.0)
        throw std::invalid_argument("exact_eigenvalues: lambda_max and tol must be positive");
    const double step = std::min(eta * pi * pi / 100.0, lambda_max / 1000.0);
    std::vector<double> roots{0.0};
    double lo = step;
    double glo = characteristic_g(lo, eta);
    for (double hi = lo + step; lo < lambda_max; lo = hi, hi += step) {
        if (hi > lambda_max) hi = lambda_max;
        const double ghi = characteristic_g(hi, eta);
        if (glo == 0.0) {
            roots.push_back(lo);
        } else if (glo * ghi < 0.0) {
            double a = lo, b = hi, ga = glo;
            int it = 0;
            while (b - a > tol && ++it <= 200) {
                const double mid = 0.5 * (a + b);
                const double gm = characteristic_g(mid, eta);
                if (ga * gm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    ga = gm;
                }
            }
            if (it > 200)
                throw std::runtime_error("exact_eigenvalues: bisection failed to converge");
            roots.push_back(0.5 * (a + b));
        }
        glo = ghi;
        if (hi >= lambda_max) break;
    }
    return roots;
}

// Exact penalized eigenmode:
//   phi(x) = a1 cos(sqrt(lambda) x) + b1 sin(sqrt(lambda) x)        on ]0,pi[
//   phi(x) = a2 cos(sqrt(lambda/eta) x) + b2 sin(sqrt(lambda/eta) x) on ]pi,2pi[
struct ExactEigenmode {
    double lambda = 0.0;
    double eta = 1.0;
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;

    double operator()(double x) const {
        if (lambda == 0.0) return a1;
        if (x <= pi) {
            const double q = std::sqrt(lambda);
            return a1 * std::cos(q * x) + b1 * std::sin(q * x);
        }
        const double s = std::sqrt(lambda / eta);
        return a2 * std::cos(s * x) + b2 * std::sin(s * x);
    }
};

inline ExactEigenmode exact_eigenmode(double lambda, double eta) {
    ExactEigenmode mode;
    mode.lambda = lambda;
    mode.eta = eta;
    if (lambda == 0.0) {
        const double c = 1.0 / std::sqrt(two_pi);
        mode.a1 = mode.a2 = c;
        return mode;
    }
    const CharCoeffs k = characteristic_coeffs(lambda, eta);
    const double norm2x2 = std::abs(k.a) + std::abs(k.b) + std::abs(k.c) + std::abs(k.d);
    if (std::abs(k.a * k.d - k.b * k.c) > 1e-6 * norm2x2 * norm2x2)
        throw std::invalid_argument("exact_eigenmode: lambda is not a root of G");
    // null vector of [[a,b],[c,d]], taken from the row with the larger norm
    double a2, b2;
    if (k.a * k.a + k.b * k.b >= k.c * k.c + k.d * k.d) {
        a2 = -k.b;
        b2 = k.a;
    } else {
        a2 = -k.d;
        b2 = k.c;
    }
    const double s = std::sqrt(lambda / eta);
    const double se = std::sqrt(eta);
    const double c2 = std::cos(two_pi * s), s2 = std::sin(two_pi * s);
    mode.a2 = a2;
    mode.b2 = b2;
    mode.a1 = a2 * c2 + b2 * s2;
    mode.b1 = se * (-a2 * s2 + b2 * c2);
    // normalize to unit L2 over [0,2pi]
    const int ns = 200001;
    const double dx = two_pi / (ns - 1);
    double nrm2 = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double p = mode(i * dx);
        nrm2 += ((i == 0 || i == ns - 1) ? 0.5 : 1.0) * p * p;
    }
    const double nrm = std::sqrt(nrm2 * dx);
    mode.a1 /= nrm;
    mode.b1 /= nrm;
    mode.a2 /= nrm;
    mode.b2 /= nrm;
    return mode;
}

// Neumann eigenpair on (0,pi): lambda = n^2 with L2-normalized cos(nx).
inline std::pair<double, std::function<double(double)>> neumann_eigenpair(int n) {
    if (n < 0) throw std::invalid_argument("neumann_eigenpair: n must be >= 0");
    if (n == 0)
        return {0.0, [](double) { return 1.0 / std::sqrt(pi); }};
    const double amp = std::sqrt(2.0 / pi);
    return {static_cast<double>(n) * n,
            [n, amp](double x) { return amp * std::cos(n * x); }};
}

// --- 2D square case ---

inline double exact_2d_square(double x, double y) {
    const double lo = pi / 2, hi = 3 * pi / 2;
    if (x < lo || x > hi || y < lo || y > hi)
        throw std::invalid_argument("exact_2d_square: point outside the closed fluid square");
    return std::sin(x) * std::cos(2.0 * y);
}

// Piecewise right-hand side keyed off position: interior, four edges,
// four corners, outside.
inline double rhs_2d_square(double x, double y, double mask_value) {
    const double lo = pi / 2, hi = 3 * pi / 2;
    if (mask_value == 1.0) return 0.0;
    if (mask_value == 0.0) return 5.0 * std::sin(x) * std::cos(2.0 * y);
    if (mask_value == 0.25) {
        // corners: sign follows sin(x)
        return (x < pi) ? -1.25 : 1.25;
    }
    // edges
    if (x == lo) return 2.5 * std::cos(2.0 * y);
    if (x == hi) return -2.5 * std::cos(2.0 * y);
    return -2.5 * std::sin(x); // y = pi/2 or y = 3pi/2
}

// --- 2D disc case ---

inline double exact_2d_disc(double r) {
    if (r >= pi) throw std::invalid_argument("exact_2d_disc: r must be < pi");
    return std::cos(2.0 * r) + 4.0 / (pi * pi);
}

inline double rhs_2d_disc(double r, double mask_value) {
    if (mask_value == 1.0) return 0.0;
    if (mask_value == 0.5) return -0.5;
    // removable singularity: 2 sin(2r)/r -> 4 as r -> 0
    const double tail = (r < 1e-6) ? 4.0 - (8.0 / 3.0) * r * r : 2.0 * std::sin(2.0 * r) / r;
    return 4.0 * std::cos(2.0 * r) + tail;
}

} // namespace vplap
