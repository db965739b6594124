#pragma once

#include <optional>
#include <utility>

#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

enum class InnerMethod { cr, minres };

struct InnerSolveConfig {
    InnerMethod method = InnerMethod::cr;
    int max_iters = 50;
    // Early exit on ||rhs - Op v|| / ||rhs||; disabled by default so iteration
    // counts stay fixed at max_iters.
    std::optional<double> rel_tol;
};

struct InnerSolveReport {
    int iters_used = 0;
    double final_rel_residual = 0.0;
    bool breakdown = false;
};

// Approximate solution of Op v = rhs from the zero vector, capped at
// cfg.max_iters. Both solvers handle symmetric indefinite Op and never fail
// on slow convergence; breakdown is reported, not thrown.
std::pair<Vector, InnerSolveReport> cr_solve(const ShiftedOperator& Op, const Vector& rhs,
                                             const InnerSolveConfig& cfg);
std::pair<Vector, InnerSolveReport> minres_solve(const ShiftedOperator& Op, const Vector& rhs,
                                                 const InnerSolveConfig& cfg);

// Dispatch on cfg.method.
std::pair<Vector, InnerSolveReport> inner_solve(const ShiftedOperator& Op, const Vector& rhs,
                                                const InnerSolveConfig& cfg);

}  // namespace crseig
