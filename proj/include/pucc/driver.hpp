#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pucc/core.hpp"
#include "pucc/energy.hpp"
#include "pucc/its.hpp"
#include "pucc/params.hpp"

namespace pucc {

/// Starting container radius with a guaranteed feasible witness: the sum of
/// all radii (see lineup_pattern).
inline double initial_radius(const Instance& inst) { return inst.radius_sum(); }

/// Deterministic witness at initial_radius: disks lined up along a diameter,
/// consecutive disks tangent, the end disks tangent to the container.
inline Pattern lineup_pattern(const Instance& inst) {
    const double R = initial_radius(inst);
    Pattern p(inst.n());
    double x = -R;
    for (int i = 0; i < inst.n(); ++i) {
        x += inst.radii[i];
        p.set(i, x, 0.0);
        x += inst.radii[i];
    }
    return p;
}

struct TightenResult {
    Pattern pattern;
    double radius = 0.0;
};

/// Shrink the container around a feasible pattern by bisection. Each probe
/// re-minimizes from the current pattern at the midpoint radius; feasible
/// probes move the upper end down and adopt the repaired pattern. The lower
/// anchor is the largest radius, which can never hold two disks.
inline TightenResult tighten(const Pattern& pattern, const Instance& inst, double R,
                             const SolverParams& params, WorkClock* clock = nullptr) {
    if (clock) clock->charge(eval_cost(inst.n()));
    const EnergyReport rep = energy(pattern, inst, R);
    if (rep.max_violation > params.feasibility_tol)
        throw std::invalid_argument("tighten: pattern is not feasible at the given radius");

    double lo = inst.max_radius();
    double hi = R;
    Pattern best = pattern;
    if (lo >= hi) return {std::move(best), hi};

    Lbfgs workspace;
    const double width_tol = 1e-10 * R;
    for (int probe = 0; probe < 60 && hi - lo > width_tol; ++probe) {
        const double mid = 0.5 * (lo + hi);
        MinimizeResult res = minimize(inst, mid, best, params.opt, clock, &workspace);
        if (res.max_violation <= params.feasibility_tol) {
            hi = mid;
            best = std::move(res.pattern);
        } else {
            lo = mid;
        }
    }
    return {std::move(best), hi};
}

struct HistoryRow {
    double radius = 0.0;
    std::string outcome;  // initial | accepted | feasible | failed
    double elapsed_seconds = 0.0;
};

struct SolveRun {
    Solution best;
    std::vector<HistoryRow> history;
    SolverParams params;
    std::uint64_t seed = 0;
    double time_to_best_seconds = 0.0;
    double elapsed_seconds = 0.0;
};

// ---------------------------------------------------------------------------
// Full minimization: start from the lineup witness, then repeatedly propose
// a slightly smaller radius, solve the decision problem there, and tighten
// on success. The proposal shrink factor delta starts at shrink_delta_init,
// is halved on every failure (down to shrink_delta_floor) and reset on every
// success; the run stops on budget exhaustion, on max_floor_failures
// consecutive failures at the floor, or on reaching params.stop_radius.
// ---------------------------------------------------------------------------
inline SolveRun solve(const Instance& inst, const SolverParams& params, double budget_seconds,
                      std::uint64_t seed, const TraceSink& sink = {}) {
    WorkClock clock(budget_seconds * 4.0);
    const Deadline deadline = Deadline::after(clock, budget_seconds);
    Rng rng(seed);

    SolveRun run;
    run.params = params;
    run.seed = seed;
    auto elapsed = [&] { return clock.seconds_used(); };

    auto accept = [&](Pattern p, double R) {
        clock.charge(eval_cost(inst.n()));
        const EnergyReport rep = energy(p, inst, R);
        run.best.radius = R;
        run.best.pattern = std::move(p);
        run.best.max_violation = rep.max_violation;
        run.best.instance_name = inst.name;
        run.time_to_best_seconds = elapsed();
        run.history.push_back({R, "accepted", elapsed()});
    };

    const double R0 = initial_radius(inst);
    run.history.push_back({R0, "initial", elapsed()});
    TightenResult t0 = tighten(lineup_pattern(inst), inst, R0, params, &clock);
    accept(std::move(t0.pattern), t0.radius);

    double delta = params.shrink_delta_init;
    int floor_failures = 0;
    auto hit_target = [&] { return params.stop_radius && run.best.radius <= *params.stop_radius; };

    while (!hit_target() && !deadline.expired(clock)) {
        if (delta <= params.shrink_delta_floor && floor_failures >= params.max_floor_failures)
            break;
        double target = run.best.radius * (1.0 - delta);
        if (target <= inst.max_radius()) {
            target = 0.5 * (run.best.radius + inst.max_radius());
            if (target >= run.best.radius || target <= inst.max_radius()) break;
        }
        const double remaining = deadline.remaining_seconds(clock);
        if (remaining <= 0.0) break;
        const double slice =
            std::min(remaining, std::max(params.slice_min_seconds,
                                         remaining * params.slice_fraction));

        DecideOutcome out = its_decide(inst, target, params, slice, rng, sink, &clock);
        if (out.feasible) {
            run.history.push_back({target, "feasible", elapsed()});
            TightenResult tt = tighten(out.pattern, inst, target, params, &clock);
            accept(std::move(tt.pattern), tt.radius);
            delta = params.shrink_delta_init;
            floor_failures = 0;
        } else {
            run.history.push_back({target, "failed", elapsed()});
            if (delta <= params.shrink_delta_floor) ++floor_failures;
            delta = std::max(0.5 * delta, params.shrink_delta_floor);
        }
    }
    run.elapsed_seconds = elapsed();

    const double lower_bound = std::max(inst.max_radius(), inst.area_lower_bound());
    if (run.best.radius < lower_bound * (1.0 - 1e-9))
        throw std::logic_error("solve: best radius fell below a provable lower bound");
    return run;
}

}  // namespace pucc
