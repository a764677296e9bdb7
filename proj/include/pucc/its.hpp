#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "pucc/core.hpp"
#include "pucc/energy.hpp"
#include "pucc/optimizer.hpp"
#include "pucc/params.hpp"
#include "pucc/tabu.hpp"

namespace pucc {

/// Result of one fixed-R decision run.
struct DecideOutcome {
    bool feasible = false;
    Pattern pattern;  // best found across all restarts
    double energy = 0.0;
    double max_violation = 0.0;
    int restarts = 0;
    std::int64_t perturb_rounds = 0;
    double elapsed_seconds = 0.0;
};

namespace detail {

inline void random_point_in_disk(Rng& rng, double rho, double& x, double& y) {
    const double theta = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
    const double rad = rho * std::sqrt(uniform_real(rng, 0.0, 1.0));
    x = rad * std::cos(theta);
    y = rad * std::sin(theta);
}

}  // namespace detail

/// Scatter each disk uniformly over the positions where it fits fully inside
/// the container (or at the origin when it does not fit at all).
inline Pattern random_pattern(const Instance& inst, double R, Rng& rng) {
    Pattern p(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        const double rho = std::max(0.0, R - inst.radii[i]);
        double x, y;
        detail::random_point_in_disk(rng, rho, x, y);
        p.set(i, x, y);
    }
    return p;
}

/// Escape move: relocate a random disk to a random in-container position and
/// re-minimize, repeated s times with s drawn uniformly from
/// [1, perturb_strength_max(n)]. Returns the final local minimum.
inline MinimizeResult shift_perturb(const Pattern& pattern, const Instance& inst, double R,
                                    const SolverParams& params, Rng& rng,
                                    WorkClock* clock = nullptr, Lbfgs* workspace = nullptr) {
    const int n = inst.n();
    const auto strength = uniform_int(rng, 1, params.perturb_strength_max(n));
    Pattern cur = pattern;
    MinimizeResult res;
    for (std::int64_t t = 0; t < strength; ++t) {
        const int disk = static_cast<int>(uniform_int(rng, 0, n - 1));
        const double rho = std::max(0.0, R - inst.radii[disk]);
        double x, y;
        detail::random_point_in_disk(rng, rho, x, y);
        cur.set(disk, x, y);
        res = minimize(inst, R, cur, params.opt, clock, workspace);
        cur = std::move(res.pattern);
    }
    res.pattern = std::move(cur);
    return res;
}

// ---------------------------------------------------------------------------
// The fixed-R decision solver: multi-start iterated tabu search. Each restart
// scatters the disks, minimizes, runs the swap tabu search, then alternates
// shift perturbations with tabu searches, accepting the new pattern whenever
// it is no worse. A restart ends after perturb_depth(n) rounds without
// improving its own best; the whole run ends on feasibility or when the
// budget expires (checked between rounds, so a round in flight completes).
// ---------------------------------------------------------------------------
inline DecideOutcome its_decide(const Instance& inst, double R, const SolverParams& params,
                                double budget_seconds, Rng& rng, const TraceSink& sink = {},
                                WorkClock* external_clock = nullptr) {
    if (!(R > inst.max_radius()))
        throw std::invalid_argument("its_decide: container cannot hold the largest disk");

    WorkClock own_clock(budget_seconds * 4.0);
    WorkClock& clock = external_clock ? *external_clock : own_clock;
    const Deadline deadline = Deadline::after(clock, budget_seconds);
    const std::uint64_t start_units = clock.used();

    const std::int64_t depth = params.perturb_depth(inst.n());
    Lbfgs workspace;

    SearchResult best;
    bool have_best = false;
    int restarts = 0;
    std::int64_t rounds = 0;

    auto update_best = [&](const SearchResult& c) {
        if (!have_best || c.energy < best.energy) {
            best = c;
            have_best = true;
        }
    };
    auto found = [&] { return have_best && best.feasible(params.feasibility_tol); };

    while (!found() && (restarts == 0 || !deadline.expired(clock))) {
        ++restarts;
        int round_no = 0;
        TraceSink stamped;
        if (sink)
            stamped = [&, restart_no = restarts](const TraceRecord& row) {
                TraceRecord r = row;
                r.restart = restart_no;
                r.round = round_no;
                sink(r);
            };

        Pattern scatter = random_pattern(inst, R, rng);
        MinimizeResult seed = minimize(inst, R, scatter, params.opt, &clock, &workspace);
        SearchResult cur = swap_tabu_search(seed.pattern, inst, R, params, rng, stamped, &clock);
        update_best(cur);
        if (sink) sink(TraceRecord{restarts, 0, 0, "restart", cur.energy, best.energy});

        double restart_best = cur.energy;
        std::int64_t stall = 0;
        while (stall < depth && !found() && !deadline.expired(clock)) {
            ++round_no;
            MinimizeResult pert =
                shift_perturb(cur.pattern, inst, R, params, rng, &clock, &workspace);
            SearchResult trial =
                swap_tabu_search(pert.pattern, inst, R, params, rng, stamped, &clock);
            ++rounds;
            update_best(trial);
            if (trial.energy < restart_best) {
                restart_best = trial.energy;
                stall = 0;
            } else {
                ++stall;
            }
            const bool accepted = trial.energy <= cur.energy;
            if (sink)
                sink(TraceRecord{restarts, round_no, 0, accepted ? "accept" : "reject",
                                 trial.energy, best.energy});
            if (accepted) cur = std::move(trial);
        }
    }

    DecideOutcome out;
    out.feasible = found();
    if (have_best) {
        out.pattern = std::move(best.pattern);
        out.energy = best.energy;
        out.max_violation = best.max_violation;
    }
    out.restarts = restarts;
    out.perturb_rounds = rounds;
    out.elapsed_seconds =
        static_cast<double>(clock.used() - start_units) / WorkClock::units_per_second;
    return out;
}

}  // namespace pucc
