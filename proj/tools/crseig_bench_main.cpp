#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crseig/bench.hpp"

namespace {

struct CommonOpts {
    std::string problem;
    int nev = 5;
    int m = 30;
    int dim_max = 80;
    int it_max = 500;
    double tol = 1e-10;
    int inner_iters = 50;
    std::string inner_method = "cr";
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: print to stdout only, write no CSV files
};

void add_common(CLI::App* cmd, CommonOpts& o, bool inner_scalar = true) {
    cmd->add_option("--problem", o.problem, "beam:<nx>x<ny>, lap1d:<n>, or mm:<pathA>,<pathB>")
        ->required();
    cmd->add_option("--nev", o.nev, "number of eigenpairs");
    cmd->add_option("--m", o.m, "Chebyshev filter degree");
    cmd->add_option("--dim-max", o.dim_max, "restart dimension");
    cmd->add_option("--it-max", o.it_max, "outer iteration cap per eigenpair");
    cmd->add_option("--tol", o.tol, "relative residual tolerance");
    if (inner_scalar) cmd->add_option("--inner-iters", o.inner_iters, "inner Krylov iteration cap");
    cmd->add_option("--inner-method", o.inner_method, "inner solver")
        ->check(CLI::IsMember({"cr", "minres"}));
    cmd->add_option("--seed", o.seed, "RNG seed for the start vector");
    cmd->add_option("--out", o.out_dir, "output directory for CSV files");
}

crseig::SolverConfig to_config(const CommonOpts& o) {
    crseig::SolverConfig cfg;
    cfg.nev = o.nev;
    cfg.m = o.m;
    cfg.dim_max = o.dim_max;
    cfg.it_max = o.it_max;
    cfg.eps = o.tol;
    cfg.inner.method =
        o.inner_method == "minres" ? crseig::InnerMethod::minres : crseig::InnerMethod::cr;
    cfg.inner.max_iters = o.inner_iters;
    cfg.seed = o.seed;
    return cfg;
}

int converged_count(const crseig::RunRecord& r) {
    return static_cast<int>(std::count(r.converged.begin(), r.converged.end(), true));
}

void print_record(const crseig::RunRecord& r, const char* extra = "") {
    std::printf("%-7s %-16s nev=%-3d it=%-6lld mv=%-9llu time=%.3fs converged=%d/%d%s\n",
                crseig::to_string(r.solver), r.problem.c_str(), r.cfg.nev,
                static_cast<long long>(r.it_total), static_cast<unsigned long long>(r.mv_total),
                r.time_s, converged_count(r), r.cfg.nev, extra);
}

void write_outputs(const std::string& dir, const std::vector<crseig::RunRecord>& records) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    crseig::write_summary_csv(dir + "/summary.csv", records);
    for (const crseig::RunRecord& r : records)
        if (r.solver != crseig::SolverKind::oracle)
            crseig::write_history_csv(dir + "/history_" + crseig::to_string(r.solver) + ".csv", r);
}

int exit_code(const std::vector<crseig::RunRecord>& records) {
    for (const crseig::RunRecord& r : records)
        if (!r.all_converged()) return 2;
    return 0;
}

int cmd_run(const CommonOpts& o, const std::string& solver_name) {
    crseig::ProblemSource src = crseig::load_problem(o.problem);
    crseig::RunRecord rec = crseig::run_one(src, crseig::parse_solver(solver_name), to_config(o));
    print_record(rec);
    write_outputs(o.out_dir, {rec});
    return exit_code({rec});
}

int cmd_compare(const CommonOpts& o, const std::vector<std::string>& solver_names) {
    if (solver_names.size() < 2)
        throw std::invalid_argument("compare needs at least two --solver entries");
    crseig::ProblemSource src = crseig::load_problem(o.problem);
    std::vector<crseig::RunRecord> records;
    records.reserve(solver_names.size());
    for (const std::string& name : solver_names)
        records.push_back(crseig::run_one(src, crseig::parse_solver(name), to_config(o)));
    std::vector<bool> verified = crseig::verify_records(src, records);
    for (std::size_t i = 0; i < records.size(); ++i)
        print_record(records[i], verified[i] ? " verified=yes" : " verified=NO");
    write_outputs(o.out_dir, records);
    return exit_code(records);
}

int cmd_sweep(const CommonOpts& o, const std::vector<int>& caps) {
    crseig::ProblemSource src = crseig::load_problem(o.problem);
    std::vector<crseig::SweepRow> rows = crseig::sweep_inner(src, to_config(o), caps);
    for (const crseig::SweepRow& r : rows)
        std::printf("inner=%-5d it=%-6lld mv=%-9llu time=%.3fs\n", r.inner_iters,
                    static_cast<long long>(r.it_total), static_cast<unsigned long long>(r.mv_total),
                    r.time_s);
    if (!o.out_dir.empty()) {
        std::filesystem::create_directories(o.out_dir);
        crseig::write_sweep_csv(o.out_dir + "/sweep.csv", rows);
    }
    // Convergence state is not part of SweepRow; rerun bookkeeping lives in
    // summary runs. Sweeps report shape only, so exit 0 unless loading failed.
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev-filtered subspace eigensolver benchmarks"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string run_solver = "cd";
    CLI::App* run = app.add_subcommand("run", "run one solver on one problem");
    add_common(run, run_opts);
    run->add_option("--solver", run_solver, "cd, crs, or oracle")
        ->check(CLI::IsMember({"cd", "crs", "oracle"}));

    CommonOpts cmp_opts;
    std::vector<std::string> cmp_solvers;
    CLI::App* cmp = app.add_subcommand("compare", "run several solvers on one problem");
    add_common(cmp, cmp_opts);
    cmp->add_option("--solver", cmp_solvers, "repeatable: cd, crs, or oracle")
        ->required()
        ->check(CLI::IsMember({"cd", "crs", "oracle"}));

    CommonOpts sweep_opts;
    std::vector<int> caps;
    CLI::App* sweep = app.add_subcommand("sweep-inner", "CRS runs over inner-iteration caps");
    add_common(sweep, sweep_opts, false);
    sweep->add_option("--inner-iters", caps, "comma-separated caps, e.g. 5,10,25,50")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opts, run_solver);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_solvers);
        return cmd_sweep(sweep_opts, caps);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
