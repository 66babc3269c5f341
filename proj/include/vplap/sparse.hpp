// Row-compressed symmetric sparse matrix and matrix-vector product.
#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace vplap {

struct SparseSymMatrix {
    int n = 0;
    std::vector<int> row_ptr; // size n+1
    std::vector<int> col;
    std::vector<double> val;

    double entry(int i, int j) const {
        for (int p = row_ptr[static_cast<size_t>(i)]; p < row_ptr[static_cast<size_t>(i) + 1]; ++p)
            if (col[static_cast<size_t>(p)] == j) return val[static_cast<size_t>(p)];
        return 0.0;
    }

    int nnz() const { return static_cast<int>(val.size()); }
};

using RhsVector = std::vector<double>;

inline RhsVector apply(const SparseSymMatrix& m, const RhsVector& v) {
    if (static_cast<int>(v.size()) != m.n)
        throw std::invalid_argument("apply: dimension mismatch");
    RhsVector out(v.size(), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int p = m.row_ptr[static_cast<size_t>(i)]; p < m.row_ptr[static_cast<size_t>(i) + 1]; ++p)
            s += m.val[static_cast<size_t>(p)] * v[static_cast<size_t>(m.col[static_cast<size_t>(p)])];
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

// coordinate-list text export: "row col value" per line
inline void write_coo(std::ostream& os, const SparseSymMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int p = m.row_ptr[static_cast<size_t>(i)]; p < m.row_ptr[static_cast<size_t>(i) + 1]; ++p)
            os << i << ' ' << m.col[static_cast<size_t>(p)] << ' ' << m.val[static_cast<size_t>(p)] << '\n';
}

} // namespace vplap
