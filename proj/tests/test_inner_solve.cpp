#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "crseig/dense.hpp"
#include "crseig/inner_solve.hpp"
#include "crseig/rng.hpp"
#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

using namespace crseig;

namespace {

// Wraps a plain symmetric matrix as the operator A - 0*I the solvers expect.
struct PlainOp {
    SparseSymMatrix a;
    SparseSymMatrix b;
    PlainOp(SparseSymMatrix m) : a(std::move(m)), b(SparseSymMatrix::identity(a.n())) {}
    ShiftedOperator op() const { return ShiftedOperator(a, b, 0.0); }
};

// Random symmetric matrix with equispaced eigenvalues of magnitude in [1, 3]
// and random signs: indefinite but separated and well conditioned, so n
// Krylov steps reach the exact solution within floating-point roundoff.
SparseSymMatrix random_indefinite(SeededRng& rng, int n) {
    std::vector<Vector> q;
    while (q.size() < static_cast<std::size_t>(n)) {
        Vector v = rng.vector(n);
        for (const Vector& u : q) axpy(-dot(u, v), u, v);
        double nrm = norm2(v);
        if (nrm < 1e-3) continue;
        scale(v, 1.0 / nrm);
        q.push_back(std::move(v));
    }
    std::vector<Triplet> tr;
    for (int i = 0; i < n; ++i) {
        double lam = 1.0 + 2.0 * i / std::max(1, n - 1);
        if (rng.uniform_pm1() < 0.0) lam = -lam;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c)
                tr.push_back({r, c,
                              lam * q[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] *
                                  q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]});
    }
    return SparseSymMatrix::from_upper_triplets(n, std::move(tr));
}

SparseSymMatrix random_spd(SeededRng& rng, int n) {
    std::vector<Triplet> tr;
    for (int i = 0; i < n; ++i) {
        tr.push_back({i, i, n + 1.0 + rng.uniform_pm1()});
        for (int j = i + 1; j < n; ++j)
            if (std::abs(rng.uniform_pm1()) < 0.3) tr.push_back({i, j, rng.uniform_pm1()});
    }
    return SparseSymMatrix::from_upper_triplets(n, std::move(tr));
}

double system_rel_residual(const ShiftedOperator& op, const Vector& rhs, const Vector& x) {
    Vector r = op.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    return norm2(r) / norm2(rhs);
}

}  // namespace

TEST_CASE("cr solves the identity in one iteration") {
    PlainOp s(SparseSymMatrix::identity(2));
    auto [x, rep] = cr_solve(s.op(), {2.0, -1.0}, {InnerMethod::cr, 1, std::nullopt});
    CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(rep.iters_used == 1);
    CHECK(rep.final_rel_residual <= 1e-15);
    CHECK_FALSE(rep.breakdown);
}

TEST_CASE("cr reaches the exact solution of a 2x2 diagonal in two iterations") {
    PlainOp s(SparseSymMatrix::diagonal({1.0, 2.0}));
    auto [x, rep] = cr_solve(s.op(), {1.0, 2.0}, {InnerMethod::cr, 2, std::nullopt});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.final_rel_residual <= 1e-12);
}

TEST_CASE("cr handles an indefinite diagonal") {
    PlainOp s(SparseSymMatrix::diagonal({-1.0, 3.0}));
    auto [x, rep] = cr_solve(s.op(), {1.0, 1.0}, {InnerMethod::cr, 10, std::nullopt});
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK_FALSE(rep.breakdown);
}

TEST_CASE("minres solves the identity in one iteration") {
    PlainOp s(SparseSymMatrix::identity(3));
    auto [x, rep] = minres_solve(s.op(), {1.0, 0.0, 0.0}, {InnerMethod::minres, 1, std::nullopt});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.iters_used == 1);
    CHECK(rep.final_rel_residual <= 1e-14);
}

TEST_CASE("minres handles an indefinite diagonal") {
    PlainOp s(SparseSymMatrix::diagonal({-1.0, 3.0}));
    auto [x, rep] = minres_solve(s.op(), {1.0, 1.0}, {InnerMethod::minres, 10, std::nullopt});
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("minres reaches the exact solution of a 3x3 diagonal in three iterations") {
    PlainOp s(SparseSymMatrix::diagonal({1.0, 2.0, 3.0}));
    auto [x, rep] = minres_solve(s.op(), {1.0, 1.0, 1.0}, {InnerMethod::minres, 3, std::nullopt});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(x[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("both methods are exact after n steps on random symmetric systems") {
    SeededRng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(27.0 * std::abs(rng.uniform_pm1()));
        PlainOp s(random_indefinite(rng, n));
        Vector rhs = rng.vector(n);
        for (InnerMethod m : {InnerMethod::cr, InnerMethod::minres}) {
            InnerSolveConfig cfg{m, n, std::nullopt};
            auto [x, rep] = inner_solve(s.op(), rhs, cfg);
            if (rep.breakdown) continue;  // exact-arithmetic tie, admissible
            CHECK(system_rel_residual(s.op(), rhs, x) <= 1e-8);
        }
    }
}

TEST_CASE("residual norms decrease monotonically with the iteration cap") {
    SeededRng rng(43);
    for (int n : {10, 50, 200}) {
        PlainOp s(random_indefinite(rng, n));
        Vector rhs = rng.vector(n);
        for (InnerMethod m : {InnerMethod::cr, InnerMethod::minres}) {
            double prev = 1.0;  // zero start has relative residual one
            for (int cap = 1; cap <= std::min(n, 25); ++cap) {
                InnerSolveConfig cfg{m, cap, std::nullopt};
                auto [x, rep] = inner_solve(s.op(), rhs, cfg);
                if (rep.breakdown) break;
                double rel = system_rel_residual(s.op(), rhs, x);
                CHECK(rel <= prev * (1.0 + 1e-10) + 1e-14);
                prev = rel;
            }
        }
    }
}

TEST_CASE("the first iterate is parallel to the right-hand side") {
    SeededRng rng(47);
    const int n = 12;
    PlainOp s(random_indefinite(rng, n));
    Vector rhs = rng.vector(n);
    for (InnerMethod m : {InnerMethod::cr, InnerMethod::minres}) {
        auto [x, rep] = inner_solve(s.op(), rhs, {m, 1, std::nullopt});
        // x = alpha * rhs for a zero starting guess.
        double alpha = dot(x, rhs) / dot(rhs, rhs);
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(x[static_cast<std::size_t>(i)] -
                           alpha * rhs[static_cast<std::size_t>(i)]) <=
                  1e-13 * (1.0 + std::abs(alpha) * norm2(rhs)));
    }
}

TEST_CASE("cr and minres agree on SPD systems") {
    SeededRng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 5 + static_cast<int>(20.0 * std::abs(rng.uniform_pm1()));
        PlainOp s(random_spd(rng, n));
        Vector rhs = rng.vector(n);
        auto [xc, rc] = cr_solve(s.op(), rhs, {InnerMethod::cr, n, std::nullopt});
        auto [xm, rm] = minres_solve(s.op(), rhs, {InnerMethod::minres, n, std::nullopt});
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(xc[static_cast<std::size_t>(i)] - xm[static_cast<std::size_t>(i)]) <=
                  1e-8 * (1.0 + norm2(xc)));
    }
}

TEST_CASE("cr reports breakdown on a curvature-free direction") {
    // p^T Op p = 0 for rhs (1,1) on diag(1,-1): no progress is possible.
    PlainOp s(SparseSymMatrix::diagonal({1.0, -1.0}));
    auto [x, rep] = cr_solve(s.op(), {1.0, 1.0}, {InnerMethod::cr, 5, std::nullopt});
    CHECK(rep.breakdown);
    CHECK(rep.iters_used == 0);
    CHECK(norm2(x) == 0.0);
}

TEST_CASE("relative tolerance stops the iteration early") {
    SeededRng rng(59);
    const int n = 40;
    PlainOp s(random_spd(rng, n));
    Vector rhs = rng.vector(n);
    for (InnerMethod m : {InnerMethod::cr, InnerMethod::minres}) {
        InnerSolveConfig cfg{m, n, 1e-6};
        auto [x, rep] = inner_solve(s.op(), rhs, cfg);
        CHECK(rep.iters_used < n);
        CHECK(system_rel_residual(s.op(), rhs, x) <= 1e-5);
    }
}

TEST_CASE("configuration validation") {
    PlainOp s(SparseSymMatrix::identity(2));
    Vector rhs{1.0, 0.0};
    CHECK_THROWS_AS(cr_solve(s.op(), rhs, {InnerMethod::cr, 0, std::nullopt}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minres_solve(s.op(), rhs, {InnerMethod::minres, 1, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minres_solve(s.op(), rhs, {InnerMethod::minres, 1, 1.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cr_solve(s.op(), {0.0, 0.0}, {InnerMethod::cr, 1, std::nullopt}),
                    std::invalid_argument);
}
