#include "crseig/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "crseig/orthonormalize.hpp"
#include "crseig/rng.hpp"
#include "crseig/rqi.hpp"

namespace crseig {

const char* to_string(SolverEventKind kind) {
    switch (kind) {
        case SolverEventKind::degenerate_z_replaced: return "degenerate_z_replaced";
        case SolverEventKind::degenerate_t_dropped: return "degenerate_t_dropped";
        case SolverEventKind::gap_floor_widened: return "gap_floor_widened";
        case SolverEventKind::filter_interval_widened: return "filter_interval_widened";
        case SolverEventKind::ritz_increase: return "ritz_increase";
        case SolverEventKind::reorth_rebuild: return "reorth_rebuild";
    }
    return "unknown";
}

void update_projection(SubspaceState& state, const std::vector<Vector>& new_vecs,
                       const SparseSymMatrix& A, const SparseSymMatrix& B) {
    const int old_dim = static_cast<int>(state.V.size());
    const int dim = old_dim + static_cast<int>(new_vecs.size());
    DenseSymMatrix Atil(dim), Btil(dim);
    for (int i = 0; i < old_dim; ++i)
        for (int j = i; j < old_dim; ++j) {
            Atil.set_sym(i, j, state.Atil(i, j));
            Btil.set_sym(i, j, state.Btil(i, j));
        }
    for (const Vector& v : new_vecs) {
        Vector av = spmv(A, v);
        Vector bv = spmv(B, v);
        const int col = static_cast<int>(state.V.size());
        for (int i = 0; i < col; ++i) {
            Atil.set_sym(i, col, dot(state.V[i], av));
            Btil.set_sym(i, col, dot(state.V[i], bv));
        }
        Atil.set_sym(col, col, dot(v, av));
        Btil.set_sym(col, col, dot(v, bv));
        state.V.push_back(v);
        state.AV.push_back(std::move(av));
        state.BV.push_back(std::move(bv));
    }
    state.Atil = std::move(Atil);
    state.Btil = std::move(Btil);
}

namespace {

constexpr double kGapFloor = 1e-8;

// Matches the filter's degenerate-interval guard; returns true after pushing
// b off a so the guard cannot fire on solver-selected parameters.
bool widen_interval(FilterParams& p) {
    if (p.b - p.a >= 1e-14 * std::max({std::abs(p.a), std::abs(p.b), 1.0})) return false;
    p.b = p.a + kGapFloor * std::max({1.0, std::abs(p.a), std::abs(p.b)});
    return true;
}

}  // namespace

FilterParams select_filter_params(const SubspaceState& state, double theta, bool* widened) {
    if (widened) *widened = false;
    const int dim = state.Atil.n();
    if (dim < 2) throw std::invalid_argument("select_filter_params: need dim(V) >= 2");
    DenseSymMatrix C(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) C.set_sym(i, j, state.Atil(i, j) - theta * state.Btil(i, j));
    std::vector<double> ev = sym_eig_values(C);

    FilterParams p = state.filter;
    p.sigma1 = ev[0];
    p.a = ev[1];
    p.b = ev[static_cast<std::size_t>(dim) - 1];
    if (p.a <= p.sigma1 + kGapFloor) {
        p.a = p.sigma1 + kGapFloor * std::max(1.0, std::abs(p.b));
        if (widened) *widened = true;
    }
    return p;
}

namespace {

struct Workspace {
    const SparseSymMatrix& A;
    const SparseSymMatrix& B;
    const SolverConfig& cfg;
    double a_inf;
    SeededRng rng;
    std::vector<Vector> W;  // locked eigenvectors, B-orthonormal
    EigResult result;

    void log(SolverEventKind kind, int pair, int iter, double detail = 0.0) {
        result.events.push_back({kind, pair, iter, detail});
    }
};

Vector basis_combo(const std::vector<Vector>& cols, const std::vector<double>& y) {
    Vector out(cols.front().size(), 0.0);
    for (std::size_t j = 0; j < y.size(); ++j) axpy(y[j], cols[j], out);
    return out;
}

// Near convergence the genuinely new content of an augmentation vector (the
// RQI correction in particular) sits many orders below its norm, so the sweep
// must keep remainders down to the rounding floor rather than the kernel's
// 1e-10 span test; dropping at 1e-10 discards exactly the refinement
// directions the outer iteration needs to pass the residual tolerance.
constexpr double kAugmentDropTol = 1e-13;

// Deflate then orthonormalize into the basis: B-weighted against the locked
// block, Euclidean against V and any vectors staged for this iteration. All
// projections run inside the same sweep with a single final norm test;
// staging them as separately normalized steps would let a later stage's norm
// collapse amplify the residual locked-direction content left by the earlier
// one, and the recovered eigenvectors would drift back toward locked pairs.
// Sweeps repeat while the norm keeps collapsing (DGKS criterion) so the
// result stays orthogonal to working precision even for deep collapses.
std::optional<Vector> orthonormalize_full(const Workspace& ws, const SubspaceState& st,
                                          const Vector& raw, const std::vector<Vector>* staged) {
    Vector v = raw;
    double pre_norm = norm2(v);
    if (pre_norm == 0.0) return std::nullopt;

    double before = pre_norm;
    for (int pass = 0; pass < 4; ++pass) {
        if (!ws.W.empty()) {
            Vector g = spmv(ws.B, v);
            for (const Vector& w : ws.W) axpy(-dot(w, g), w, v);
        }
        for (const Vector& q : st.V) axpy(-dot(q, v), q, v);
        if (staged) {
            for (const Vector& q : *staged) axpy(-dot(q, v), q, v);
        }
        double after = norm2(v);
        if (after < kAugmentDropTol * pre_norm) return std::nullopt;
        if (pass > 0 && after > 0.7 * before) break;
        before = after;
    }

    scale(v, 1.0 / norm2(v));
    return v;
}

// Seeded random substitute for a degenerate augmentation vector. Returns
// nullopt only when the locked and current spaces exhaust R^n.
std::optional<Vector> random_replacement(Workspace& ws, const SubspaceState& st,
                                         const std::vector<Vector>* staged) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        auto r = orthonormalize_full(ws, st, ws.rng.vector(st.x.size()), staged);
        if (r) return r;
    }
    std::size_t spanned = ws.W.size() + st.V.size() + (staged ? staged->size() : 0);
    if (spanned >= st.x.size()) return std::nullopt;
    throw std::runtime_error("solver: repeated degenerate random replacements below full span");
}

double ritz_value(const Vector& x, const Vector& ax, const Vector& bx) {
    double xbx = dot(x, bx);
    if (!(xbx > 0.0)) throw std::runtime_error("solver: x^T B x <= 0; B must be positive definite");
    return dot(x, ax) / xbx;
}

void init_state(Workspace& ws, SubspaceState& st, Vector start) {
    double nx = norm2(start);
    if (nx == 0.0) throw std::runtime_error("solver: zero start vector");
    Vector v = scaled(start, 1.0 / nx);
    st.V.assign(1, v);
    st.AV.assign(1, spmv(ws.A, v));
    st.BV.assign(1, spmv(ws.B, v));
    st.Atil = DenseSymMatrix(1);
    st.Btil = DenseSymMatrix(1);
    st.Atil(0, 0) = dot(v, st.AV[0]);
    st.Btil(0, 0) = dot(v, st.BV[0]);
    st.x = st.V[0];
    st.ax = st.AV[0];
    st.bx = st.BV[0];
    st.theta = ritz_value(st.x, st.ax, st.bx);
}

// Collapse to span{x}. The cached products rescale instead of recomputing.
void restart(SubspaceState& st) {
    double nx = norm2(st.x);
    Vector v = scaled(st.x, 1.0 / nx);
    Vector av = scaled(st.ax, 1.0 / nx);
    Vector bv = scaled(st.bx, 1.0 / nx);
    st.Atil = DenseSymMatrix(1);
    st.Btil = DenseSymMatrix(1);
    st.Atil(0, 0) = dot(v, av);
    st.Btil(0, 0) = dot(v, bv);
    st.theta = st.Atil(0, 0) / st.Btil(0, 0);
    st.V.assign(1, v);
    st.AV.assign(1, av);
    st.BV.assign(1, bv);
    st.x = std::move(v);
    st.ax = std::move(av);
    st.bx = std::move(bv);
}

// Re-orthonormalize every basis column (dropping degenerate ones) and rebuild
// the projections. Recovery path for a projected B that lost definiteness.
void rebuild_basis(Workspace& ws, SubspaceState& st) {
    std::vector<Vector> old = std::move(st.V);
    st.V.clear();
    st.AV.clear();
    st.BV.clear();
    st.Atil = DenseSymMatrix();
    st.Btil = DenseSymMatrix();
    std::vector<Vector> kept;
    for (const Vector& v : old) {
        std::optional<Vector> cur = v;
        if (!ws.W.empty()) {
            cur = orthonormalize_against(*cur, ws.W, ws.B);
            if (!cur) continue;
        }
        cur = orthonormalize_against(*cur, kept);
        if (cur) kept.push_back(std::move(*cur));
    }
    if (kept.empty()) throw std::runtime_error("solver: basis rebuild lost every direction");
    update_projection(st, kept, ws.A, ws.B);
}

// One eigenpair of the shared CD/CRS loop. Returns true when locked within
// it_max; fills warm_out with V y_2 for the next pair when available.
bool solve_pair(Workspace& ws, bool use_irqi, int pair, Vector start, Vector* warm_out) {
    SubspaceState st;
    st.filter.m = ws.cfg.m;
    init_state(ws, st, std::move(start));
    double rel = relative_residual_from_products(st.ax, st.bx, st.theta, st.x, ws.a_inf);
    std::vector<double> y2;
    double prev_theta = st.theta;

    for (int k = 1; k <= ws.cfg.it_max; ++k) {
        ws.result.history.push_back({pair, k, rel});
        if (rel < ws.cfg.eps) {
            ws.result.it_total += k;
            Vector w = scaled(st.x, 1.0 / std::sqrt(dot(st.x, st.bx)));
            ws.W.push_back(w);
            ws.result.values.push_back(st.theta);
            ws.result.vectors.push_back(std::move(w));
            ws.result.converged.push_back(true);
            if (!y2.empty()) *warm_out = basis_combo(st.V, y2);
            return true;
        }
        if (static_cast<int>(st.V.size()) >= ws.cfg.dim_max) restart(st);

        Vector z_raw;
        if (k == 1) {
            z_raw = st.ax;
            axpy(-st.theta, st.bx, z_raw);  // z = C x off the cached products
        } else {
            ShiftedOperator C(ws.A, ws.B, st.theta);
            z_raw = chebyshev_filter(C, st.x, st.filter);
        }
        std::optional<Vector> t_raw;
        if (use_irqi && k >= 2)
            t_raw = irqi_step(ws.A, ws.B, st.theta, st.x, ws.cfg.inner).first;

        std::vector<Vector> staged;
        std::optional<Vector> z = orthonormalize_full(ws, st, z_raw, nullptr);
        if (!z) {
            z = random_replacement(ws, st, nullptr);
            if (z) ws.log(SolverEventKind::degenerate_z_replaced, pair, k);
        }
        if (z) staged.push_back(std::move(*z));
        if (t_raw) {
            std::optional<Vector> t = orthonormalize_full(ws, st, *t_raw, &staged);
            if (t)
                staged.push_back(std::move(*t));
            else
                ws.log(SolverEventKind::degenerate_t_dropped, pair, k);
        }
        if (staged.empty()) continue;  // span exhausted; Ritz data already exact
        update_projection(st, staged, ws.A, ws.B);

        bool gap_widened = false;
        FilterParams p = select_filter_params(st, st.theta, &gap_widened);
        if (gap_widened) ws.log(SolverEventKind::gap_floor_widened, pair, k, p.a - p.sigma1);
        if (widen_interval(p)) ws.log(SolverEventKind::filter_interval_widened, pair, k, p.b - p.a);
        st.filter = p;

        DenseEigResult rr;
        try {
            rr = sym_gen_eig(st.Atil, st.Btil);
        } catch (const CholeskyError&) {
            ws.log(SolverEventKind::reorth_rebuild, pair, k);
            rebuild_basis(ws, st);
            rr = sym_gen_eig(st.Atil, st.Btil);  // second failure is fatal
        }
        st.x = basis_combo(st.V, rr.vectors[0]);
        st.ax = basis_combo(st.AV, rr.vectors[0]);
        st.bx = basis_combo(st.BV, rr.vectors[0]);
        st.theta = rr.values[0];
        if (st.theta > prev_theta + 1e-12 * std::abs(prev_theta))
            ws.log(SolverEventKind::ritz_increase, pair, k, st.theta - prev_theta);
        prev_theta = st.theta;
        y2 = rr.vectors.size() >= 2 ? std::vector<double>(rr.vectors[1]) : std::vector<double>();
        rel = relative_residual_from_products(st.ax, st.bx, st.theta, st.x, ws.a_inf);
    }

    ws.result.it_total += ws.cfg.it_max;
    ws.result.values.push_back(st.theta);
    ws.result.vectors.push_back(scaled(st.x, 1.0 / std::sqrt(dot(st.x, st.bx))));
    ws.result.converged.push_back(false);
    return false;
}

// Start vector for the next pair: the warm start (or a fresh random draw)
// deflated against the locked block.
Vector make_start(Workspace& ws, Vector candidate) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        if (candidate.empty()) candidate = ws.rng.vector(static_cast<std::size_t>(ws.A.n()));
        if (ws.W.empty()) return candidate;
        auto r = orthonormalize_against(candidate, ws.W, ws.B);
        if (r) return std::move(*r);
        candidate.clear();
    }
    throw std::runtime_error("solver: no start vector outside the locked span");
}

void validate_config(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg) {
    if (A.n() != B.n()) throw std::invalid_argument("solver: pencil size mismatch");
    if (cfg.nev < 1) throw std::invalid_argument("solver: nev must be >= 1");
    if (cfg.nev > A.n()) throw std::invalid_argument("solver: nev exceeds problem dimension");
    if (cfg.m < 1) throw std::invalid_argument("solver: m must be >= 1");
    if (cfg.dim_max < 3) throw std::invalid_argument("solver: dim_max must be >= 3");
    if (cfg.it_max < 1) throw std::invalid_argument("solver: it_max must be >= 1");
    if (!(cfg.eps > 0.0)) throw std::invalid_argument("solver: eps must be positive");
}

EigResult run_solver(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg,
                     bool use_irqi) {
    validate_config(A, B, cfg);
    Workspace ws{A, B, cfg, A.inf_norm(), SeededRng(cfg.seed), {}, {}};
    const std::uint64_t mv0 = mv_counter().count();
    Vector next;  // empty requests a fresh random start
    for (int pair = 0; pair < cfg.nev; ++pair) {
        Vector start = make_start(ws, std::move(next));
        next = Vector();
        if (!solve_pair(ws, use_irqi, pair, std::move(start), &next)) break;
    }
    ws.result.mv_total = mv_counter().count() - mv0;
    return ws.result;
}

}  // namespace

EigResult cd_solve(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg) {
    return run_solver(A, B, cfg, false);
}

EigResult crs_solve(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg) {
    return run_solver(A, B, cfg, true);
}

}  // namespace crseig
