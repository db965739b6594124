#include "crseig/inner_solve.hpp"

#include <cmath>
#include <stdexcept>

namespace crseig {

namespace {

// Machine-exact convergence stop, applied regardless of cfg.rel_tol so a
// solved system does not spin until the cap and trip the breakdown guard.
constexpr double kExactTol = 1e-15;

bool should_stop(double rel, const InnerSolveConfig& cfg) {
    if (rel <= kExactTol) return true;
    return cfg.rel_tol && rel <= *cfg.rel_tol;
}

void validate(const Vector& rhs, const InnerSolveConfig& cfg) {
    if (cfg.max_iters < 1) throw std::invalid_argument("inner solve: max_iters must be >= 1");
    if (cfg.rel_tol && !(*cfg.rel_tol > 0.0 && *cfg.rel_tol <= 1.0))
        throw std::invalid_argument("inner solve: rel_tol must lie in (0, 1]");
    if (norm2(rhs) == 0.0) throw std::invalid_argument("inner solve: rhs must be nonzero");
}

}  // namespace

std::pair<Vector, InnerSolveReport> cr_solve(const ShiftedOperator& Op, const Vector& rhs,
                                             const InnerSolveConfig& cfg) {
    validate(rhs, cfg);
    const double norm_rhs = norm2(rhs);
    Vector x(rhs.size(), 0.0);
    Vector r = rhs;
    Vector ar = Op.apply(r);
    Vector p = r;
    Vector ap = ar;
    double rho = dot(r, ar);

    InnerSolveReport rep;
    rep.final_rel_residual = 1.0;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        double pap = dot(p, ap);
        if (std::abs(pap) < 1e-30 * dot(p, p)) {
            rep.breakdown = true;
            break;
        }
        double app = dot(ap, ap);
        if (app == 0.0) {
            rep.breakdown = true;
            break;
        }
        double alpha = rho / app;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        rep.iters_used = k;
        rep.final_rel_residual = norm2(r) / norm_rhs;
        if (should_stop(rep.final_rel_residual, cfg) || k == cfg.max_iters) break;

        ar = Op.apply(r);
        double rho_next = dot(r, ar);
        if (rho == 0.0) {
            rep.breakdown = true;
            break;
        }
        double beta = rho_next / rho;
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = r[i] + beta * p[i];
            ap[i] = ar[i] + beta * ap[i];
        }
        rho = rho_next;
    }
    return {std::move(x), rep};
}

std::pair<Vector, InnerSolveReport> minres_solve(const ShiftedOperator& Op, const Vector& rhs,
                                                 const InnerSolveConfig& cfg) {
    validate(rhs, cfg);
    const std::size_t n = rhs.size();
    const double beta1 = norm2(rhs);

    // Lanczos vectors v_{k-1}, v_k and solution directions w_{k-2}, w_{k-1}.
    Vector v_old(n, 0.0);
    Vector v = scaled(rhs, 1.0 / beta1);
    Vector w1(n, 0.0), w2(n, 0.0);
    Vector x(n, 0.0);

    double beta = beta1;
    double dbar = 0.0, epsln = 0.0;
    double cs = -1.0, sn = 0.0;
    double phibar = beta1;

    InnerSolveReport rep;
    rep.final_rel_residual = 1.0;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        Vector pv = Op.apply(v);
        if (beta != 0.0) axpy(-beta, v_old, pv);
        double alfa = dot(v, pv);
        axpy(-alfa, v, pv);
        double beta_next = norm2(pv);

        double oldeps = epsln;
        double delta = cs * dbar + sn * alfa;
        double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta_next;
        dbar = -cs * beta_next;
        double gamma = std::hypot(gbar, beta_next);
        if (gamma < 1e-300) {
            rep.breakdown = true;
            break;
        }
        cs = gbar / gamma;
        sn = beta_next / gamma;
        double phi = cs * phibar;
        phibar = sn * phibar;

        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] - oldeps * w2[i] - delta * w1[i]) / gamma;
        axpy(phi, w, x);
        w2 = std::move(w1);
        w1 = std::move(w);

        rep.iters_used = k;
        rep.final_rel_residual = std::abs(phibar) / beta1;
        if (should_stop(rep.final_rel_residual, cfg)) break;
        if (beta_next == 0.0) break;  // Krylov space exhausted

        v_old = std::move(v);
        v = scaled(pv, 1.0 / beta_next);
        beta = beta_next;
    }
    return {std::move(x), rep};
}

std::pair<Vector, InnerSolveReport> inner_solve(const ShiftedOperator& Op, const Vector& rhs,
                                                const InnerSolveConfig& cfg) {
    return cfg.method == InnerMethod::cr ? cr_solve(Op, rhs, cfg) : minres_solve(Op, rhs, cfg);
}

}  // namespace crseig
