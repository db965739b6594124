#pragma once

#include <atomic>
#include <cstdint>
#include <tuple>
#include <vector>

#include "crseig/vector_ops.hpp"

namespace crseig {

/// Process-wide count of sparse matrix-vector products. Every spmv with A or
/// with B bumps it by one; solvers report deltas between snapshots.
class MvCounter {
public:
    void increment(std::uint64_t by = 1) { count_.fetch_add(by, std::memory_order_relaxed); }
    std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> count_{0};
};

MvCounter& mv_counter();

/// One (row, col, value) entry of the upper triangle (row <= col).
struct Triplet {
    int row;
    int col;
    double value;
};

/// Sparse symmetric matrix in CSR layout storing the full symmetric pattern.
/// Both triangles hold bitwise-identical values; column indices are strictly
/// increasing within each row. Immutable after construction.
class SparseSymMatrix {
public:
    /// Empty placeholder; every usable instance comes from a factory below.
    SparseSymMatrix() = default;

    /// Build from upper-triangle entries (row <= col required). Duplicates are
    /// summed; the lower triangle is mirrored from the upper one so the stored
    /// values are exactly symmetric.
    static SparseSymMatrix from_upper_triplets(int n, std::vector<Triplet> entries);

    static SparseSymMatrix identity(int n);
    static SparseSymMatrix diagonal(const Vector& d);

    int n() const { return n_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

    /// Max absolute row sum.
    double inf_norm() const;

    double max_abs() const;

    /// Entry lookup by binary search; 0 for positions outside the pattern.
    double at(int i, int j) const;

private:
    int n_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

/// y = M x. Counts one matrix-vector product.
Vector spmv(const SparseSymMatrix& M, const Vector& x);

/// The operator C = A - shift*B, applied as A*x - shift*(B*x) without ever
/// assembling C. One apply costs two matrix-vector products.
class ShiftedOperator {
public:
    ShiftedOperator(const SparseSymMatrix& A, const SparseSymMatrix& B, double shift);

    Vector apply(const Vector& x) const;

    int n() const { return A_->n(); }
    double shift() const { return shift_; }
    const SparseSymMatrix& A() const { return *A_; }
    const SparseSymMatrix& B() const { return *B_; }

private:
    const SparseSymMatrix* A_;
    const SparseSymMatrix* B_;
    double shift_;
};

/// <u, v>_B = v^T B u. Costs one matrix-vector product.
double b_inner(const SparseSymMatrix& B, const Vector& u, const Vector& v);

double b_norm(const SparseSymMatrix& B, const Vector& v);

/// Generalized Rayleigh quotient x^T A x / x^T B x. Throws if x^T B x <= 0.
double rayleigh_quotient(const SparseSymMatrix& A, const SparseSymMatrix& B, const Vector& x);

/// ||A x - theta B x|| / (max(|theta|, floor) * ||x||) with
/// floor = 1e-12 * ||A||_inf, Euclidean norms throughout.
double relative_residual(const SparseSymMatrix& A, const SparseSymMatrix& B, double theta,
                         const Vector& x);

/// Same formula evaluated from precomputed products (no extra spmv).
double relative_residual_from_products(const Vector& ax, const Vector& bx, double theta,
                                       const Vector& x, double a_inf_norm);

}  // namespace crseig
