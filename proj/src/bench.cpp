#include "crseig/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "crseig/dense.hpp"
#include "crseig/matrix_market.hpp"

namespace crseig {

const char* to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::cd: return "cd";
        case SolverKind::crs: return "crs";
        case SolverKind::oracle: return "oracle";
    }
    return "unknown";
}

SolverKind parse_solver(const std::string& name) {
    if (name == "cd") return SolverKind::cd;
    if (name == "crs") return SolverKind::crs;
    if (name == "oracle") return SolverKind::oracle;
    throw std::invalid_argument("unknown solver '" + name + "'; expected cd, crs, or oracle");
}

ProblemSource load_problem(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("problem spec '" + spec +
                                    "' needs the form beam:<nx>x<ny>, lap1d:<n>, or "
                                    "mm:<pathA>,<pathB>");
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    ProblemSource out;
    out.id = spec;
    if (kind == "beam") {
        auto x = rest.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("beam spec needs beam:<nx>x<ny>, got '" + spec + "'");
        BeamSpec bs;
        try {
            bs.nx = std::stoi(rest.substr(0, x));
            bs.ny = std::stoi(rest.substr(x + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("beam spec needs integer nx, ny, got '" + spec + "'");
        }
        out.pencil = assemble_beam(bs);
    } else if (kind == "lap1d") {
        int n = 0;
        try {
            n = std::stoi(rest);
        } catch (const std::exception&) {
            throw std::invalid_argument("lap1d spec needs an integer size, got '" + spec + "'");
        }
        out.pencil = assemble_laplacian_1d(n);
    } else if (kind == "mm") {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("mm spec needs mm:<pathA>,<pathB>, got '" + spec + "'");
        out.pencil.K = read_matrix_market(rest.substr(0, comma));
        out.pencil.M = read_matrix_market(rest.substr(comma + 1));
        if (out.pencil.K.n() != out.pencil.M.n())
            throw std::invalid_argument("mm pencil size mismatch: " +
                                        std::to_string(out.pencil.K.n()) + " vs " +
                                        std::to_string(out.pencil.M.n()));
        out.pencil.n_free = out.pencil.K.n();
    } else {
        throw std::invalid_argument("unknown problem kind '" + kind + "'");
    }
    return out;
}

RunRecord run_one(const ProblemSource& src, SolverKind solver, const SolverConfig& cfg) {
    RunRecord rec;
    rec.solver = solver;
    rec.problem = src.id;
    rec.cfg = cfg;
    const SparseSymMatrix& A = src.pencil.K;
    const SparseSymMatrix& B = src.pencil.M;

    auto t0 = std::chrono::steady_clock::now();
    if (solver == SolverKind::oracle) {
        DenseEigResult oracle = dense_oracle(A, B);
        rec.values.assign(oracle.values.begin(),
                          oracle.values.begin() + std::min<std::size_t>(
                                                      static_cast<std::size_t>(cfg.nev),
                                                      oracle.values.size()));
        rec.converged.assign(rec.values.size(), true);
    } else {
        EigResult r = solver == SolverKind::cd ? cd_solve(A, B, cfg) : crs_solve(A, B, cfg);
        rec.values = std::move(r.values);
        rec.converged = std::move(r.converged);
        rec.it_total = r.it_total;
        rec.mv_total = r.mv_total;
        rec.history = std::move(r.history);
        rec.events = std::move(r.events);
    }
    rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<bool> verify_records(const ProblemSource& src, const std::vector<RunRecord>& records) {
    constexpr double kTol = 1e-6;
    auto agree = [&](const std::vector<double>& got, const std::vector<double>& ref) {
        if (got.empty() || got.size() > ref.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i) {
            double denom = std::max(std::abs(ref[i]), 1e-300);
            if (std::abs(got[i] - ref[i]) / denom > kTol) return false;
        }
        return true;
    };

    std::vector<bool> verified(records.size(), false);
    if (src.pencil.K.n() <= 2000) {
        DenseEigResult oracle = dense_oracle(src.pencil.K, src.pencil.M);
        for (std::size_t i = 0; i < records.size(); ++i)
            verified[i] = agree(records[i].values, oracle.values);
        return verified;
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        bool ok = true, any = false;
        for (std::size_t j = 0; j < records.size(); ++j) {
            if (j == i || records[j].cfg.nev != records[i].cfg.nev) continue;
            any = true;
            ok = ok && agree(records[i].values, records[j].values) &&
                 agree(records[j].values, records[i].values);
        }
        verified[i] = any && ok;
    }
    return verified;
}

std::vector<SweepRow> sweep_inner(const ProblemSource& src, SolverConfig base,
                                  const std::vector<int>& caps) {
    if (caps.empty()) throw std::invalid_argument("sweep: need at least one inner-iteration cap");
    std::vector<SweepRow> rows;
    rows.reserve(caps.size());
    for (int cap : caps) {
        if (cap < 1) throw std::invalid_argument("sweep: inner-iteration caps must be >= 1");
        SolverConfig cfg = base;
        cfg.inner.max_iters = cap;
        RunRecord rec = run_one(src, SolverKind::crs, cfg);
        rows.push_back({cap, rec.it_total, rec.mv_total, rec.time_s});
    }
    return rows;
}

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

// mm: problem ids embed a comma; quote such fields so rows stay seven columns.
std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void write_summary_csv(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out = open_csv(path);
    out << "solver,problem,nev,it,mv,time_s,converged\n";
    char buf[64];
    for (const RunRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.6f", r.time_s);
        out << to_string(r.solver) << "," << csv_quote(r.problem) << "," << r.cfg.nev << "," << r.it_total
            << "," << r.mv_total << "," << buf << "," << (r.all_converged() ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void write_history_csv(const std::string& path, const RunRecord& record) {
    std::ofstream out = open_csv(path);
    out << "eigenpair_index,outer_iter,rel_residual\n";
    char buf[64];
    for (const HistoryEntry& h : record.history) {
        std::snprintf(buf, sizeof buf, "%.17g", h.rel_residual);
        out << h.eigenpair_index << "," << h.outer_iter << "," << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "inner_iters,it,mv,time_s\n";
    char buf[64];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.time_s);
        out << r.inner_iters << "," << r.it_total << "," << r.mv_total << "," << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

}  // namespace crseig
