// Command-line front end: solve / decide / verify / render / gen-contest / bench.
//
// All randomized commands take --seed and are bit-reproducible: budgets are
// accounted on a deterministic work clock (see core.hpp), so rerunning with
// identical flags produces identical files.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pucc/pucc.hpp"

namespace fs = std::filesystem;
using namespace pucc;

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

struct TraceBuffer {
    std::vector<TraceRecord> records;
    TraceSink sink() {
        return [this](const TraceRecord& r) { records.push_back(r); };
    }
};

Instance load_instance_path(const std::string& path) {
    return load_instance(read_file(path), fs::path(path).stem().string());
}

void print_verify(const VerifyReport& rep, double tol) {
    std::printf("max violation   %.6g (tolerance %.3g)\n", rep.max_violation, tol);
    if (rep.worst_i >= 0) {
        if (rep.worst_j >= 0)
            std::printf("worst term      disks %d and %d\n", rep.worst_i + 1, rep.worst_j + 1);
        else
            std::printf("worst term      disk %d against the container\n", rep.worst_i + 1);
    }
    std::printf("verdict         %s\n", rep.feasible ? "feasible" : "INFEASIBLE");
}

// Multistart baselines for `decide --strategy mts|sd`: fresh random restarts
// around one combinatorial search, no perturbation chain.
DecideOutcome decide_multistart(const Instance& inst, double R, const SolverParams& params,
                                double budget_seconds, Rng& rng, bool use_tabu,
                                const TraceSink& sink) {
    WorkClock clock(budget_seconds * 4.0);
    const Deadline deadline = Deadline::after(clock, budget_seconds);
    SearchResult best;
    bool have_best = false;
    int restarts = 0;
    Lbfgs workspace;

    while (!(have_best && best.feasible(params.feasibility_tol)) &&
           (restarts == 0 || !deadline.expired(clock))) {
        ++restarts;
        Pattern scatter = random_pattern(inst, R, rng);
        MinimizeResult seed = minimize(inst, R, scatter, params.opt, &clock, &workspace);
        TraceSink stamped;
        if (sink)
            stamped = [&, restart_no = restarts](const TraceRecord& row) {
                TraceRecord r = row;
                r.restart = restart_no;
                sink(r);
            };
        SearchResult res =
            use_tabu ? swap_tabu_search(seed.pattern, inst, R, params, rng, stamped, &clock)
                     : steepest_descent(seed.pattern, inst, R, params, stamped, &clock);
        if (!have_best || res.energy < best.energy) {
            best = std::move(res);
            have_best = true;
        }
        if (sink) sink(TraceRecord{restarts, 0, 0, "restart", best.energy, best.energy});
    }

    DecideOutcome out;
    out.feasible = have_best && best.max_violation <= params.feasibility_tol;
    out.pattern = std::move(best.pattern);
    out.energy = best.energy;
    out.max_violation = best.max_violation;
    out.restarts = restarts;
    out.elapsed_seconds = clock.seconds_used();
    return out;
}

std::map<std::string, double> load_targets(const std::string& path) {
    std::map<std::string, double> targets;
    const auto lines = detail::data_lines(read_file(path));
    for (const auto& [text, line_no] : lines) {
        const auto split = text.find_first_of(" \t,");
        if (split == std::string::npos)
            throw ParseError("expected '<instance> <radius>'", line_no);
        const std::string name(detail::trim(text.substr(0, split)));
        targets[name] = detail::parse_double(detail::trim(text.substr(split + 1)), line_no);
    }
    return targets;
}

struct BenchRow {
    std::string instance;
    std::uint64_t seed = 0;
    std::string strategy;
    double best_radius = 0.0;
    double time_to_best = 0.0;
    bool feasible = false;
    int hit = -1;  // -1: no target known
};

std::string write_results_csv(const std::vector<BenchRow>& rows) {
    std::string out = "instance,seed,strategy,best_R,time_to_best_s,feasible,hit\n";
    for (const BenchRow& r : rows) {
        out += detail::csv_field(r.instance) + "," + std::to_string(r.seed) + "," + r.strategy +
               "," + detail::num(r.best_radius) + "," + detail::num(r.time_to_best) + "," +
               (r.feasible ? "1" : "0") + "," + (r.hit < 0 ? "" : std::to_string(r.hit)) + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pucc: packing unequal circles in a circle"};
    app.require_subcommand(1);

    std::string instance_path, solution_path, out_path, trace_path, history_path, targets_path;
    std::string strategy = "its";
    double time_limit = 60.0, radius = 0.0, tol = 1e-9, hit_rel = 1e-5;
    std::uint64_t seed = 1;
    int gen_n = 0, repeats = 1, jobs = 1;
    bool stop_at_target = false;
    std::optional<double> target_radius;

    auto* cmd_solve = app.add_subcommand("solve", "minimize the container radius");
    cmd_solve->add_option("instance", instance_path)->required();
    cmd_solve->add_option("--time-limit", time_limit, "budget in seconds");
    cmd_solve->add_option("--seed", seed);
    cmd_solve->add_option("--out", out_path, "solution file");
    cmd_solve->add_option("--history", history_path, "radius history CSV");
    cmd_solve->add_option("--trace", trace_path, "search trace CSV");
    cmd_solve->add_option("--tol", tol, "feasibility tolerance");
    cmd_solve->add_option("--target", target_radius, "stop once the radius reaches this value");

    auto* cmd_decide = app.add_subcommand("decide", "fixed-radius feasibility");
    cmd_decide->add_option("instance", instance_path)->required();
    cmd_decide->add_option("--radius", radius)->required();
    cmd_decide->add_option("--time-limit", time_limit);
    cmd_decide->add_option("--seed", seed);
    cmd_decide->add_option("--strategy", strategy)->check(CLI::IsMember({"its", "mts", "sd"}));
    cmd_decide->add_option("--out", out_path, "solution file (written when feasible)");
    cmd_decide->add_option("--trace", trace_path);
    cmd_decide->add_option("--tol", tol);

    auto* cmd_verify = app.add_subcommand("verify", "check a solution file");
    cmd_verify->add_option("instance", instance_path)->required();
    cmd_verify->add_option("solution", solution_path)->required();
    cmd_verify->add_option("--tol", tol);

    auto* cmd_render = app.add_subcommand("render", "solution to SVG");
    cmd_render->add_option("instance", instance_path)->required();
    cmd_render->add_option("solution", solution_path)->required();
    cmd_render->add_option("--out", out_path, "SVG file (default stdout)");

    auto* cmd_gen = app.add_subcommand("gen-contest", "emit the contest instance with radii 1..n");
    cmd_gen->add_option("n", gen_n)->required();
    cmd_gen->add_option("--out", out_path, "instance file (default stdout)");

    auto* cmd_bench = app.add_subcommand("bench", "solve a directory of instances");
    cmd_bench->add_option("dir", instance_path)->required();
    cmd_bench->add_option("--time-limit", time_limit);
    cmd_bench->add_option("--seed", seed, "first seed; repeats use seed, seed+1, ...");
    cmd_bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    cmd_bench->add_option("--targets", targets_path, "instance -> best-known radius list");
    cmd_bench->add_option("--hit-rel", hit_rel, "relative slack for the hit flag");
    cmd_bench->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    cmd_bench->add_option("--out", out_path, "results CSV (default stdout)");
    cmd_bench->add_flag("--stop-at-target", stop_at_target,
                        "stop each run once its target radius is reached");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) {
            const std::string text = write_instance(contest_instance(gen_n));
            if (out_path.empty())
                std::fputs(text.c_str(), stdout);
            else
                write_file(out_path, text);
            return kExitFeasible;
        }

        if (cmd_solve->parsed()) {
            const Instance inst = load_instance_path(instance_path);
            SolverParams params;
            params.feasibility_tol = tol;
            if (target_radius) params.stop_radius = *target_radius;
            TraceBuffer trace;
            const SolveRun run = solve(inst, params, time_limit, seed,
                                       trace_path.empty() ? TraceSink{} : trace.sink());

            std::printf("instance        %s (n=%d)\n", inst.name.c_str(), inst.n());
            std::printf("best R          %.10g\n", run.best.radius);
            std::printf("max violation   %.3g\n", run.best.max_violation);
            std::printf("time to best    %.3f s\n", run.time_to_best_seconds);
            std::printf("elapsed         %.3f s\n", run.elapsed_seconds);
            if (!out_path.empty()) write_file(out_path, write_solution(run.best));
            if (!history_path.empty()) write_file(history_path, write_history_csv(run.history));
            if (!trace_path.empty()) write_file(trace_path, write_trace_csv(trace.records));
            return kExitFeasible;
        }

        if (cmd_decide->parsed()) {
            const Instance inst = load_instance_path(instance_path);
            if (radius <= inst.max_radius()) {
                std::fprintf(stderr, "error: radius %g cannot hold the largest disk (radius %g)\n",
                             radius, inst.max_radius());
                return kExitError;
            }
            SolverParams params;
            params.feasibility_tol = tol;
            Rng rng(seed);
            TraceBuffer trace;
            const TraceSink sink = trace_path.empty() ? TraceSink{} : trace.sink();
            DecideOutcome out;
            if (strategy == "its")
                out = its_decide(inst, radius, params, time_limit, rng, sink);
            else
                out = decide_multistart(inst, radius, params, time_limit, rng, strategy == "mts",
                                        sink);
            std::printf("instance        %s (n=%d)\n", inst.name.c_str(), inst.n());
            std::printf("strategy        %s\n", strategy.c_str());
            std::printf("R               %.10g\n", radius);
            std::printf("feasible        %s\n", out.feasible ? "yes" : "no");
            std::printf("best energy     %.6g\n", out.energy);
            std::printf("max violation   %.6g\n", out.max_violation);
            std::printf("restarts        %d\n", out.restarts);
            std::printf("elapsed         %.3f s\n", out.elapsed_seconds);
            if (!trace_path.empty()) write_file(trace_path, write_trace_csv(trace.records));
            if (out.feasible && !out_path.empty()) {
                const Solution sol{radius, out.pattern, out.max_violation, inst.name};
                write_file(out_path, write_solution(sol));
            }
            return out.feasible ? kExitFeasible : kExitInfeasible;
        }

        if (cmd_verify->parsed()) {
            const Instance inst = load_instance_path(instance_path);
            const Solution sol = load_solution(read_file(solution_path), inst);
            const VerifyReport rep = verify_solution(inst, sol, tol);
            print_verify(rep, tol);
            return rep.feasible ? kExitFeasible : kExitInfeasible;
        }

        if (cmd_render->parsed()) {
            const Instance inst = load_instance_path(instance_path);
            const Solution sol = load_solution(read_file(solution_path), inst);
            const std::string svg = render_svg(inst, sol);
            if (out_path.empty())
                std::fputs(svg.c_str(), stdout);
            else
                write_file(out_path, svg);
            return kExitFeasible;
        }

        if (cmd_bench->parsed()) {
            if (!fs::is_directory(instance_path)) {
                std::fprintf(stderr, "error: '%s' is not a directory\n", instance_path.c_str());
                return kExitError;
            }
            std::vector<std::string> files;
            for (const auto& entry : fs::directory_iterator(instance_path))
                if (entry.is_regular_file()) files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            if (files.empty()) {
                std::fprintf(stderr, "error: no instance files in '%s'\n", instance_path.c_str());
                return kExitError;
            }
            std::map<std::string, double> targets;
            if (!targets_path.empty()) targets = load_targets(targets_path);

            struct Cell {
                std::string path;
                std::uint64_t seed;
            };
            std::vector<Cell> cells;
            for (const std::string& f : files)
                for (int r = 0; r < repeats; ++r)
                    cells.push_back({f, seed + static_cast<std::uint64_t>(r)});

            std::vector<BenchRow> rows(cells.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= cells.size()) return;
                    const Cell& cell = cells[idx];
                    const Instance inst = load_instance_path(cell.path);
                    SolverParams params;
                    params.feasibility_tol = tol;
                    const auto it = targets.find(inst.name);
                    if (it != targets.end() && stop_at_target)
                        params.stop_radius = it->second * (1.0 + hit_rel);
                    const SolveRun run = solve(inst, params, time_limit, cell.seed);
                    BenchRow& row = rows[idx];
                    row.instance = inst.name;
                    row.seed = cell.seed;
                    row.strategy = "its";
                    row.best_radius = run.best.radius;
                    row.time_to_best = run.time_to_best_seconds;
                    row.feasible = verify_solution(inst, run.best, params.feasibility_tol).feasible;
                    if (it != targets.end())
                        row.hit = run.best.radius <= it->second * (1.0 + hit_rel) ? 1 : 0;
                }
            };
            std::vector<std::thread> pool;
            const int nworkers = std::min<int>(jobs, static_cast<int>(cells.size()));
            for (int w = 1; w < nworkers; ++w) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();

            const std::string csv = write_results_csv(rows);
            if (out_path.empty())
                std::fputs(csv.c_str(), stdout);
            else
                write_file(out_path, csv);
            return kExitFeasible;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
