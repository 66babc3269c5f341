// Constrained solution of the singular penalized systems, dense symmetric
// eigendecomposition, and condition-number estimation.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "vplap/sparse.hpp"

namespace vplap {

struct ConstraintStrategy {
    enum class Kind { ReplaceRow, LeastSquaresAugment };
    Kind kind = Kind::ReplaceRow;
    int row = 0;
    std::vector<double> mean_weights; // all-ones or (1 - chi)

    static ConstraintStrategy replace_row(int k, std::vector<double> weights) {
        return {Kind::ReplaceRow, k, std::move(weights)};
    }
    static ConstraintStrategy least_squares(std::vector<double> weights) {
        return {Kind::LeastSquaresAugment, 0, std::move(weights)};
    }
};

namespace detail {

inline Eigen::SparseMatrix<double> to_eigen(const SparseSymMatrix& m) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(m.nnz()));
    for (int i = 0; i < m.n; ++i)
        for (int p = m.row_ptr[static_cast<size_t>(i)]; p < m.row_ptr[static_cast<size_t>(i) + 1]; ++p)
            trips.emplace_back(i, m.col[static_cast<size_t>(p)], m.val[static_cast<size_t>(p)]);
    Eigen::SparseMatrix<double> out(m.n, m.n);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

} // namespace detail

// Nonsingular system produced by applying a constraint strategy; keeps the
// factorization alive for reuse (condition estimation).
class ConstrainedOperator {
public:
    ConstrainedOperator(const SparseSymMatrix& a, const ConstraintStrategy& strategy)
        : n_(a.n), strategy_(strategy) {
        if (static_cast<int>(strategy.mean_weights.size()) != a.n)
            throw std::invalid_argument("ConstrainedOperator: mean_weights length mismatch");
        double wsum = 0.0;
        for (double w : strategy.mean_weights) {
            if (w < 0.0) throw std::invalid_argument("ConstrainedOperator: negative mean weight");
            wsum += w;
        }
        if (wsum <= 0.0) throw std::invalid_argument("ConstrainedOperator: mean weights sum to zero");

        if (strategy.kind == ConstraintStrategy::Kind::ReplaceRow) {
            if (strategy.row < 0 || strategy.row >= a.n)
                throw std::invalid_argument("ConstrainedOperator: replace-row index out of range");
            std::vector<Eigen::Triplet<double>> trips;
            trips.reserve(static_cast<size_t>(a.nnz()) + strategy.mean_weights.size());
            for (int i = 0; i < a.n; ++i) {
                if (i == strategy.row) continue;
                for (int p = a.row_ptr[static_cast<size_t>(i)]; p < a.row_ptr[static_cast<size_t>(i) + 1]; ++p)
                    trips.emplace_back(i, a.col[static_cast<size_t>(p)], a.val[static_cast<size_t>(p)]);
            }
            for (int j = 0; j < a.n; ++j)
                if (strategy.mean_weights[static_cast<size_t>(j)] != 0.0)
                    trips.emplace_back(strategy.row, j, strategy.mean_weights[static_cast<size_t>(j)]);
            mat_.resize(a.n, a.n);
            mat_.setFromTriplets(trips.begin(), trips.end());
        } else {
            // min ||[A; w^T] u - [f; 0]||_2 via the normal equations
            // (A^T A + w w^T) u = A^T f, factored in bordered form
            //   [ A^T A   w ] [u]   [A^T f]
            //   [ w^T    -1 ] [t] = [  0  ]   with t = w^T u.
            aug_ = detail::to_eigen(a);
            Eigen::SparseMatrix<double> ata = Eigen::SparseMatrix<double>(aug_.transpose()) * aug_;
            std::vector<Eigen::Triplet<double>> trips;
            trips.reserve(static_cast<size_t>(ata.nonZeros()) + 2 * strategy.mean_weights.size() + 1);
            for (int k = 0; k < ata.outerSize(); ++k)
                for (Eigen::SparseMatrix<double>::InnerIterator it(ata, k); it; ++it)
                    trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
            for (int j = 0; j < a.n; ++j) {
                const double w = strategy.mean_weights[static_cast<size_t>(j)];
                if (w != 0.0) {
                    trips.emplace_back(j, a.n, w);
                    trips.emplace_back(a.n, j, w);
                }
            }
            trips.emplace_back(a.n, a.n, -1.0);
            mat_.resize(a.n + 1, a.n + 1);
            mat_.setFromTriplets(trips.begin(), trips.end());
        }
        mat_.makeCompressed();
        lu_.compute(mat_);
        if (lu_.info() != Eigen::Success)
            throw std::runtime_error("ConstrainedOperator: sparse LU factorization failed: " +
                                     lu_.lastErrorMessage());
    }

    RhsVector solve(const RhsVector& f) const {
        if (static_cast<int>(f.size()) != n_)
            throw std::invalid_argument("ConstrainedOperator::solve: dimension mismatch");
        Eigen::VectorXd rhs;
        if (strategy_.kind == ConstraintStrategy::Kind::ReplaceRow) {
            rhs = Eigen::Map<const Eigen::VectorXd>(f.data(), n_);
            rhs[strategy_.row] = 0.0;
        } else {
            rhs.resize(n_ + 1);
            rhs.head(n_) = aug_.transpose() * Eigen::Map<const Eigen::VectorXd>(f.data(), n_);
            rhs[n_] = 0.0;
        }
        Eigen::VectorXd u = lu_.solve(rhs);
        if (lu_.info() != Eigen::Success)
            throw std::runtime_error("ConstrainedOperator::solve: back substitution failed");
        return {u.data(), u.data() + n_};
    }

    int dim() const { return static_cast<int>(mat_.rows()); }

    Eigen::VectorXd apply_mat(const Eigen::VectorXd& v) const { return mat_ * v; }
    Eigen::VectorXd apply_mat_t(const Eigen::VectorXd& v) const { return mat_.transpose() * v; }
    Eigen::VectorXd solve_mat(const Eigen::VectorXd& v) const { return lu_.solve(v); }
    Eigen::VectorXd solve_mat_t(const Eigen::VectorXd& v) const {
        return lu_.adjoint().solve(v);
    }

private:
    int n_;
    ConstraintStrategy strategy_;
    Eigen::SparseMatrix<double> mat_;  // constrained (or bordered) system
    Eigen::SparseMatrix<double> aug_;  // original A, kept for the LSQ rhs
    // mutable: SparseLU::adjoint() is a non-const accessor in Eigen 3.4
    mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

inline RhsVector solve_constrained(const SparseSymMatrix& a, const RhsVector& f,
                                   const ConstraintStrategy& strategy) {
    return ConstrainedOperator(a, strategy).solve(f);
}

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending
    Eigen::MatrixXd eigenvectors;    // columns, orthonormal
    int n = 0;
    double eta = 0.0;
};

// Dense symmetric eigendecomposition (tridiagonalization + implicit QL).
inline SpectrumResult eigen_decompose(const SparseSymMatrix& a, double eta = 0.0,
                                      int dense_limit = 4096) {
    if (a.n > dense_limit)
        throw std::invalid_argument("eigen_decompose: dimension above dense limit");
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(a.n, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int p = a.row_ptr[static_cast<size_t>(i)]; p < a.row_ptr[static_cast<size_t>(i) + 1]; ++p)
            dense(i, a.col[static_cast<size_t>(p)]) = a.val[static_cast<size_t>(p)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigen_decompose: eigensolver failed to converge");
    SpectrumResult r;
    r.n = a.n;
    r.eta = eta;
    r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + a.n);
    r.eigenvectors = es.eigenvectors();
    return r;
}

// Count of numerically zero eigenvalues; threshold is relative to the
// largest eigenvalue magnitude.
inline int numerical_zero_count(const SpectrumResult& s, double rel_tol = 1e-13) {
    double lam_max = 0.0;
    for (double l : s.eigenvalues) lam_max = std::max(lam_max, std::abs(l));
    int count = 0;
    for (double l : s.eigenvalues)
        if (std::abs(l) < rel_tol * lam_max) ++count;
    return count;
}

// kappa ~ sigma_max / sigma_min of the constrained system, by power
// iteration on B^T B and on its inverse through the factorization.
inline double condition_estimate(const ConstrainedOperator& op, int max_iter = 100,
                                 double rel_tol = 1e-4, unsigned seed = 12345) {
    const int n = op.dim();
    Eigen::VectorXd v(n);
    // deterministic pseudo-random start
    unsigned state = seed;
    for (int i = 0; i < n; ++i) {
        state = state * 1664525u + 1013904223u;
        v[i] = (state / 4294967296.0) - 0.5;
    }
    v.normalize();
    double sigma_max = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = op.apply_mat_t(op.apply_mat(v));
        const double s = std::sqrt(w.norm());
        if (it > 0 && std::abs(s - sigma_max) <= rel_tol * s) {
            sigma_max = s;
            break;
        }
        sigma_max = s;
        v = w / w.norm();
    }
    Eigen::VectorXd u(n);
    state = seed ^ 0x9e3779b9u;
    for (int i = 0; i < n; ++i) {
        state = state * 1664525u + 1013904223u;
        u[i] = (state / 4294967296.0) - 0.5;
    }
    u.normalize();
    double inv_sigma_min = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = op.solve_mat(op.solve_mat_t(u));
        const double s = std::sqrt(w.norm());
        if (it > 0 && std::abs(s - inv_sigma_min) <= rel_tol * s) {
            inv_sigma_min = s;
            break;
        }
        inv_sigma_min = s;
        u = w / w.norm();
    }
    return sigma_max * inv_sigma_min;
}

} // namespace vplap
