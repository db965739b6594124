#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

/// Small dense symmetric matrix, row-major. Projected blocks in the solvers
/// never exceed dim_max + 2 rows.
class DenseSymMatrix {
public:
    DenseSymMatrix() = default;
    explicit DenseSymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int n() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Sets both (i,j) and (j,i) to the same double.
    void set_sym(int i, int j, double v) {
        (*this)(i, j) = v;
        (*this)(j, i) = v;
    }

    double max_abs() const;
    double max_asymmetry() const;

    /// Copy of the leading k x k block.
    DenseSymMatrix leading_block(int k) const;

    static DenseSymMatrix identity(int n);
    static DenseSymMatrix from_sparse(const SparseSymMatrix& M);

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Eigenvalues ascending; vectors[i] is the column paired with values[i].
/// Vectors are orthonormal for standard solves and B-orthonormal for
/// generalized solves.
struct DenseEigResult {
    std::vector<double> values;
    std::vector<Vector> vectors;
};

/// Thrown when a Cholesky factorization meets a nonpositive pivot.
class CholeskyError : public std::runtime_error {
public:
    CholeskyError(int pivot, double value)
        : std::runtime_error("Cholesky breakdown at pivot " + std::to_string(pivot) +
                             " (value " + std::to_string(value) + "); matrix is not positive definite"),
          pivot_(pivot) {}
    int pivot() const { return pivot_; }

private:
    int pivot_;
};

/// Full spectrum of a symmetric matrix via Householder tridiagonalization and
/// implicit-shift QL with accumulated rotations.
DenseEigResult sym_eig(const DenseSymMatrix& M);

/// Eigenvalues only (same reduction, no vector accumulation).
std::vector<double> sym_eig_values(const DenseSymMatrix& M);

/// Generalized symmetric-definite solve: Cholesky-reduce B = L L^T, solve the
/// standard problem on L^{-1} A L^{-T}, back-transform. Throws CholeskyError
/// when B is not numerically SPD.
DenseEigResult sym_gen_eig(const DenseSymMatrix& A, const DenseSymMatrix& B);

/// Brute-force reference: densify the pencil and solve it completely.
/// Guarded to n <= 5000.
DenseEigResult dense_oracle(const SparseSymMatrix& A, const SparseSymMatrix& B);

/// Lower Cholesky factor of an SPD matrix; throws CholeskyError otherwise.
DenseSymMatrix cholesky(const DenseSymMatrix& M);

/// Solve M x = b by LU with partial pivoting (M need not be definite).
/// Throws on an exactly singular pivot.
Vector lu_solve(const DenseSymMatrix& M, const Vector& b);

}  // namespace crseig
