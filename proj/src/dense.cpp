#include "crseig/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace crseig {

double DenseSymMatrix::max_abs() const {
    double best = 0.0;
    for (double v : a_) best = std::max(best, std::abs(v));
    return best;
}

double DenseSymMatrix::max_asymmetry() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            best = std::max(best, std::abs((*this)(i, j) - (*this)(j, i)));
    return best;
}

DenseSymMatrix DenseSymMatrix::leading_block(int k) const {
    DenseSymMatrix out(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
    return out;
}

DenseSymMatrix DenseSymMatrix::identity(int n) {
    DenseSymMatrix out(n);
    for (int i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

DenseSymMatrix DenseSymMatrix::from_sparse(const SparseSymMatrix& M) {
    DenseSymMatrix out(M.n());
    const auto& rp = M.row_ptr();
    const auto& ci = M.col_idx();
    const auto& va = M.values();
    for (int r = 0; r < M.n(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k)
            out(r, ci[static_cast<std::size_t>(k)]) = va[static_cast<std::size_t>(k)];
    return out;
}

namespace {

constexpr int kMaxQlIterations = 30;

// Householder reduction to tridiagonal form. On exit `z` holds the orthogonal
// transformation when accumulate is set, d the diagonal and e the
// subdiagonal (e[0] unused).
void householder_tridiag(std::vector<std::vector<double>>& z, std::vector<double>& d,
                         std::vector<double>& e, bool accumulate) {
    const int n = static_cast<int>(d.size());
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(z[i][k]);
            if (scale == 0.0) {
                e[i] = z[i][l];
            } else {
                for (int k = 0; k <= l; ++k) {
                    z[i][k] /= scale;
                    h += z[i][k] * z[i][k];
                }
                double f = z[i][l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z[i][l] = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) z[j][i] = z[i][j] / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z[j][k] * z[i][k];
                    for (int k = j + 1; k <= l; ++k) g += z[k][j] * z[i][k];
                    e[j] = g / h;
                    f += e[j] * z[i][j];
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z[i][j];
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) z[j][k] -= f * e[k] + g * z[i][k];
                }
            }
        } else {
            e[i] = z[i][l];
        }
        d[i] = h;
    }
    if (accumulate) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (accumulate) {
            int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += z[i][k] * z[k][j];
                    for (int k = 0; k <= l; ++k) z[k][j] -= g * z[k][i];
                }
            }
            d[i] = z[i][i];
            z[i][i] = 1.0;
            for (int j = 0; j <= l; ++j) z[j][i] = z[i][j] = 0.0;
        } else {
            d[i] = z[i][i];
        }
    }
}

// Implicit-shift QL on a tridiagonal matrix, rotations applied to z's columns
// when accumulate is set.
void tridiag_ql(std::vector<std::vector<double>>& z, std::vector<double>& d,
                std::vector<double>& e, bool accumulate) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxQlIterations)
                    throw std::runtime_error(
                        "sym_eig: QL failed to converge for eigenvalue index " + std::to_string(l) +
                        " after " + std::to_string(kMaxQlIterations) + " iterations (n = " +
                        std::to_string(n) + ", off-diagonal " + std::to_string(e[l]) + ")");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (accumulate) {
                        for (int k = 0; k < n; ++k) {
                            f = z[k][i + 1];
                            z[k][i + 1] = s * z[k][i] + c * f;
                            z[k][i] = c * z[k][i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

std::vector<std::vector<double>> to_rows(const DenseSymMatrix& M) {
    const int n = M.n();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = M(i, j);
    return rows;
}

DenseEigResult solve_sym(const DenseSymMatrix& M, bool want_vectors) {
    const int n = M.n();
    if (n < 1) throw std::invalid_argument("sym_eig: empty matrix");
    auto z = to_rows(M);
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    householder_tridiag(z, d, e, want_vectors);
    tridiag_ql(z, d, e, want_vectors);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    DenseEigResult out;
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.values[i] = d[order[i]];
    if (want_vectors) {
        out.vectors.assign(static_cast<std::size_t>(n), Vector(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) out.vectors[i][k] = z[k][order[i]];
    }
    return out;
}

}  // namespace

DenseEigResult sym_eig(const DenseSymMatrix& M) { return solve_sym(M, true); }

std::vector<double> sym_eig_values(const DenseSymMatrix& M) {
    return solve_sym(M, false).values;
}

DenseSymMatrix cholesky(const DenseSymMatrix& M) {
    const int n = M.n();
    DenseSymMatrix L(n);
    for (int j = 0; j < n; ++j) {
        double diag = M(j, j);
        for (int k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
        if (!(diag > 0.0)) throw CholeskyError(j, diag);
        L(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = M(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

namespace {

// x := L^{-1} x
void forward_solve(const DenseSymMatrix& L, Vector& x) {
    const int n = L.n();
    for (int i = 0; i < n; ++i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= L(i, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / L(i, i);
    }
}

// x := L^{-T} x
void backward_solve_t(const DenseSymMatrix& L, Vector& x) {
    const int n = L.n();
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / L(i, i);
    }
}

}  // namespace

DenseEigResult sym_gen_eig(const DenseSymMatrix& A, const DenseSymMatrix& B) {
    const int n = A.n();
    if (B.n() != n) throw std::invalid_argument("sym_gen_eig: size mismatch");
    DenseSymMatrix L = cholesky(B);

    // Y = L^{-1} A, then S = Y L^{-T} computed as (L^{-1} Y^T)^T.
    DenseSymMatrix Y(n);
    Vector col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = A(i, j);
        forward_solve(L, col);
        for (int i = 0; i < n; ++i) Y(i, j) = col[static_cast<std::size_t>(i)];
    }
    DenseSymMatrix S(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = Y(i, j);
        forward_solve(L, col);
        for (int j = 0; j < n; ++j) S(i, j) = col[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) S.set_sym(i, j, 0.5 * (S(i, j) + S(j, i)));

    DenseEigResult eig = sym_eig(S);
    for (Vector& y : eig.vectors) backward_solve_t(L, y);
    return eig;
}

DenseEigResult dense_oracle(const SparseSymMatrix& A, const SparseSymMatrix& B) {
    if (A.n() > 5000)
        throw std::invalid_argument("dense_oracle: n = " + std::to_string(A.n()) +
                                    " exceeds the 5000 densification guard");
    if (A.n() != B.n()) throw std::invalid_argument("dense_oracle: pencil size mismatch");
    return sym_gen_eig(DenseSymMatrix::from_sparse(A), DenseSymMatrix::from_sparse(B));
}

Vector lu_solve(const DenseSymMatrix& M, const Vector& b) {
    const int n = M.n();
    check_same_dim(b.size(), static_cast<std::size_t>(n), "lu_solve");
    std::vector<std::vector<double>> a = [&] {
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = M(i, j);
        return rows;
    }();
    Vector x = b;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        std::swap(a[piv], a[k]);
        std::swap(x[static_cast<std::size_t>(piv)], x[static_cast<std::size_t>(k)]);
        for (int i = k + 1; i < n; ++i) {
            double f = a[i][k] / a[k][k];
            a[i][k] = f;
            for (int j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
            x[static_cast<std::size_t>(i)] -= f * x[static_cast<std::size_t>(k)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / a[i][i];
    }
    return x;
}

}  // namespace crseig
