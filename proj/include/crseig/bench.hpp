#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crseig/problems.hpp"
#include "crseig/solvers.hpp"

namespace crseig {

enum class SolverKind { cd, crs, oracle };

const char* to_string(SolverKind kind);

/// Parses "cd", "crs", or "oracle"; throws std::invalid_argument otherwise.
SolverKind parse_solver(const std::string& name);

/// A pencil plus the spec string that produced it. Specs: beam:<nx>x<ny>,
/// lap1d:<n>, mm:<pathA>,<pathB>.
struct ProblemSource {
    std::string id;
    AssembledPencil pencil;
};

ProblemSource load_problem(const std::string& spec);

/// One solver execution: outcome counters plus the config snapshot that
/// reproduces it (given the seed).
struct RunRecord {
    SolverKind solver = SolverKind::cd;
    std::string problem;
    SolverConfig cfg;
    std::vector<double> values;
    std::vector<bool> converged;
    std::int64_t it_total = 0;
    std::uint64_t mv_total = 0;
    double time_s = 0.0;
    std::vector<HistoryEntry> history;
    std::vector<SolverEvent> events;

    bool all_converged() const {
        for (bool c : converged)
            if (!c) return false;
        return !converged.empty();
    }
};

/// Runs one solver (or the dense oracle) on the pencil. Wall time wraps the
/// solver call only.
RunRecord run_one(const ProblemSource& src, SolverKind solver, const SolverConfig& cfg);

/// Cross-checks each record's values: against dense_oracle when n <= 2000,
/// otherwise pairwise across records with matching nev; 1e-6 relative either
/// way.
std::vector<bool> verify_records(const ProblemSource& src, const std::vector<RunRecord>& records);

struct SweepRow {
    int inner_iters = 0;
    std::int64_t it_total = 0;
    std::uint64_t mv_total = 0;
    double time_s = 0.0;
};

/// One CRS run per inner-iteration cap, identical config and seed otherwise.
std::vector<SweepRow> sweep_inner(const ProblemSource& src, SolverConfig base,
                                  const std::vector<int>& caps);

// CSV artifacts. Column orders and header strings are frozen:
//   summary:  solver,problem,nev,it,mv,time_s,converged
//   history:  eigenpair_index,outer_iter,rel_residual
//   sweep:    inner_iters,it,mv,time_s
void write_summary_csv(const std::string& path, const std::vector<RunRecord>& records);
void write_history_csv(const std::string& path, const RunRecord& record);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace crseig
