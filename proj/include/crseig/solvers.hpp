#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crseig/cheb_filter.hpp"
#include "crseig/dense.hpp"
#include "crseig/inner_solve.hpp"
#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

struct SolverConfig {
    int nev = 5;
    int m = 30;
    int dim_max = 80;
    int it_max = 500;
    double eps = 1e-10;
    InnerSolveConfig inner;  // CRS augmentation solve only
    std::uint64_t seed = 1;
};

enum class SolverEventKind {
    degenerate_z_replaced,    // filtered vector fell in span(W, V); random substitute
    degenerate_t_dropped,     // IRQI vector fell in span(W, V, z); basis grew by 1
    gap_floor_widened,        // clustered Ritz values; a pushed off sigma1
    filter_interval_widened,  // a == b at selection; b pushed up before filtering
    ritz_increase,            // Ritz value rose between consecutive iterations
    reorth_rebuild,           // projected B lost definiteness; basis rebuilt
};

const char* to_string(SolverEventKind kind);

struct SolverEvent {
    SolverEventKind kind;
    int eigenpair_index = 0;  // 0-based
    int outer_iter = 0;       // k within that eigenpair, 1-based
    double detail = 0.0;
};

/// Basis and projections carried across one eigenpair's outer iterations.
/// V is Euclidean-orthonormal and B-orthogonal to all locked eigenvectors;
/// AV/BV cache A*V[j] and B*V[j] so Ritz updates and restarts cost no
/// products; ax/bx mirror the current x the same way.
struct SubspaceState {
    std::vector<Vector> V;
    std::vector<Vector> AV;
    std::vector<Vector> BV;
    DenseSymMatrix Atil;
    DenseSymMatrix Btil;
    double theta = 0.0;
    Vector x;
    Vector ax;
    Vector bx;
    FilterParams filter;
};

struct HistoryEntry {
    int eigenpair_index = 0;  // 0-based
    int outer_iter = 0;       // 1-based
    double rel_residual = 0.0;
};

struct EigResult {
    std::vector<double> values;    // ascending; one entry per computed pair
    std::vector<Vector> vectors;   // B-normalized columns matching values
    std::vector<bool> converged;   // false marks an it_max dropout
    std::int64_t it_total = 0;
    std::uint64_t mv_total = 0;    // MvCounter delta over the whole solve
    std::vector<HistoryEntry> history;
    std::vector<SolverEvent> events;

    bool all_converged() const {
        for (bool c : converged)
            if (!c) return false;
        return !converged.empty();
    }
};

/// Append already-orthonormalized vectors to the basis and extend the
/// projected pair by the new rows/columns only; the existing block is
/// untouched. Two products per appended vector.
void update_projection(SubspaceState& state, const std::vector<Vector>& new_vecs,
                       const SparseSymMatrix& A, const SparseSymMatrix& B);

/// Filter parameters off the projected operator: eigenvalues of
/// Atil - theta*Btil give sigma1 (smallest), a (second smallest), b
/// (largest). Clustered values push a off sigma1 by a 1e-8 gap floor;
/// *widened reports that. Degree m carries over from state.filter.
FilterParams select_filter_params(const SubspaceState& state, double theta,
                                  bool* widened = nullptr);

/// Chebyshev-Davidson: one eigenpair at a time, smallest first. Basis grows
/// by one filtered vector per iteration and collapses to [x] at dim_max.
EigResult cd_solve(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg);

/// Chebyshev-RQI Subspace: same loop with a second augmentation vector per
/// iteration from a capped inexact RQI solve, so the basis grows by two.
EigResult crs_solve(const SparseSymMatrix& A, const SparseSymMatrix& B, const SolverConfig& cfg);

}  // namespace crseig
