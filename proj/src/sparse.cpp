#include "crseig/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crseig {

MvCounter& mv_counter() {
    static MvCounter counter;
    return counter;
}

SparseSymMatrix SparseSymMatrix::from_upper_triplets(int n, std::vector<Triplet> entries) {
    if (n < 1) throw std::invalid_argument("SparseSymMatrix: n must be >= 1");
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n)
            throw std::invalid_argument("SparseSymMatrix: index out of range");
        if (t.row > t.col)
            throw std::invalid_argument("SparseSymMatrix: expected upper-triangle entry (row <= col)");
    }

    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });

    // Sum duplicates, then mirror (i,j) -> (j,i) so both triangles carry the
    // same double.
    std::vector<Triplet> full;
    full.reserve(entries.size() * 2);
    std::size_t i = 0;
    while (i < entries.size()) {
        int r = entries[i].row, c = entries[i].col;
        double v = 0.0;
        while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
            v += entries[i].value;
            ++i;
        }
        full.push_back({r, c, v});
        if (r != c) full.push_back({c, r, v});
    }
    std::sort(full.begin(), full.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });

    SparseSymMatrix M;
    M.n_ = n;
    M.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    M.col_idx_.reserve(full.size());
    M.values_.reserve(full.size());
    for (const Triplet& t : full) {
        ++M.row_ptr_[static_cast<std::size_t>(t.row) + 1];
        M.col_idx_.push_back(t.col);
        M.values_.push_back(t.value);
    }
    for (int r = 0; r < n; ++r) M.row_ptr_[r + 1] += M.row_ptr_[r];
    return M;
}

SparseSymMatrix SparseSymMatrix::identity(int n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_upper_triplets(n, std::move(t));
}

SparseSymMatrix SparseSymMatrix::diagonal(const Vector& d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (int i = 0; i < static_cast<int>(d.size()); ++i) t.push_back({i, i, d[static_cast<std::size_t>(i)]});
    return from_upper_triplets(static_cast<int>(d.size()), std::move(t));
}

double SparseSymMatrix::inf_norm() const {
    double best = 0.0;
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[static_cast<std::size_t>(k)]);
        best = std::max(best, s);
    }
    return best;
}

double SparseSymMatrix::max_abs() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
}

double SparseSymMatrix::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SparseSymMatrix::at");
    auto begin = col_idx_.begin() + row_ptr_[i];
    auto end = col_idx_.begin() + row_ptr_[i + 1];
    auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector spmv(const SparseSymMatrix& M, const Vector& x) {
    check_same_dim(x.size(), static_cast<std::size_t>(M.n()), "spmv");
    Vector y(static_cast<std::size_t>(M.n()), 0.0);
    const auto& rp = M.row_ptr();
    const auto& ci = M.col_idx();
    const auto& va = M.values();
    for (int r = 0; r < M.n(); ++r) {
        double s = 0.0;
        for (int k = rp[r]; k < rp[r + 1]; ++k)
            s += va[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(ci[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(r)] = s;
    }
    mv_counter().increment();
    return y;
}

ShiftedOperator::ShiftedOperator(const SparseSymMatrix& A, const SparseSymMatrix& B, double shift)
    : A_(&A), B_(&B), shift_(shift) {
    check_same_dim(static_cast<std::size_t>(A.n()), static_cast<std::size_t>(B.n()), "ShiftedOperator");
}

Vector ShiftedOperator::apply(const Vector& x) const {
    Vector ax = spmv(*A_, x);
    Vector bx = spmv(*B_, x);
    axpy(-shift_, bx, ax);
    return ax;
}

double b_inner(const SparseSymMatrix& B, const Vector& u, const Vector& v) {
    Vector bu = spmv(B, u);
    return dot(v, bu);
}

double b_norm(const SparseSymMatrix& B, const Vector& v) {
    double s = b_inner(B, v, v);
    if (s < 0.0) throw std::runtime_error("b_norm: negative B-inner product, B is not positive definite");
    return std::sqrt(s);
}

double rayleigh_quotient(const SparseSymMatrix& A, const SparseSymMatrix& B, const Vector& x) {
    Vector ax = spmv(A, x);
    Vector bx = spmv(B, x);
    double den = dot(x, bx);
    if (den <= 0.0)
        throw std::runtime_error("rayleigh_quotient: x^T B x <= 0, B must be positive definite");
    return dot(x, ax) / den;
}

double relative_residual_from_products(const Vector& ax, const Vector& bx, double theta,
                                       const Vector& x, double a_inf_norm) {
    check_same_dim(ax.size(), bx.size(), "relative_residual");
    Vector r(ax);
    axpy(-theta, bx, r);
    double floor = 1e-12 * a_inf_norm;
    double denom = std::max(std::abs(theta), floor) * norm2(x);
    if (denom == 0.0) throw std::runtime_error("relative_residual: zero denominator (x = 0?)");
    return norm2(r) / denom;
}

double relative_residual(const SparseSymMatrix& A, const SparseSymMatrix& B, double theta,
                         const Vector& x) {
    Vector ax = spmv(A, x);
    Vector bx = spmv(B, x);
    return relative_residual_from_products(ax, bx, theta, x, A.inf_norm());
}

}  // namespace crseig
