#include "crseig/rqi.hpp"

#include <cmath>
#include <stdexcept>

namespace crseig {

namespace {

Vector dense_mv(const DenseSymMatrix& C, const Vector& v) {
    const int n = C.n();
    Vector out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += C(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

// Shifted solve (C - tau I) w = v; on an exactly singular pivot the shift is
// perturbed by 1e-14 * max|C| and retried once.
Vector shifted_solve(const DenseSymMatrix& C, double tau, const Vector& v) {
    DenseSymMatrix S = C;
    for (int i = 0; i < C.n(); ++i) S(i, i) -= tau;
    try {
        return lu_solve(S, v);
    } catch (const std::runtime_error&) {
        double bump = 1e-14 * C.max_abs();
        if (bump == 0.0) bump = 1e-300;
        for (int i = 0; i < C.n(); ++i) S(i, i) = C(i, i) - (tau + bump);
        return lu_solve(S, v);
    }
}

}  // namespace

Vector rqi_exact(const DenseSymMatrix& C, const Vector& v0, const RqiConfig& cfg) {
    check_same_dim(v0.size(), static_cast<std::size_t>(C.n()), "rqi_exact");
    if (cfg.max_outer < 1) throw std::invalid_argument("rqi_exact: max_outer must be >= 1");
    double nv = norm2(v0);
    if (nv == 0.0) throw std::invalid_argument("rqi_exact: v0 must be nonzero");
    Vector v = scaled(v0, 1.0 / nv);

    for (int i = 0; i < cfg.max_outer; ++i) {
        double tau = dot(dense_mv(C, v), v);
        Vector w = shifted_solve(C, tau, v);
        double nw = norm2(w);
        if (nw == 0.0) throw std::runtime_error("rqi_exact: shifted solve returned zero");
        scale(w, 1.0 / nw);
        if (dot(w, v) < 0.0) scale(w, -1.0);  // keep iterate orientation stable
        v = std::move(w);
        // Convergence test uses tau from before the solve, per the iteration
        // as stated.
        Vector cv = dense_mv(C, v);
        axpy(-tau, v, cv);
        if (norm2(cv) < cfg.eps) return v;
    }
    return v;
}

std::pair<Vector, InnerSolveReport> irqi_step(const SparseSymMatrix& A, const SparseSymMatrix& B,
                                              double theta, const Vector& x,
                                              const InnerSolveConfig& inner) {
    ShiftedOperator op(A, B, theta);
    return inner_solve(op, x, inner);
}

}  // namespace crseig
