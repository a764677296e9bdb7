#pragma once

#include <algorithm>
#include <optional>

#include "pucc/optimizer.hpp"

namespace pucc {

/// All tunables of the solver stack. The schedule fields are the standard
/// settings (tabu tenure n/5 + rand(0,10), improvement cutoffs 10n, shift
/// strength rand(1, n/8)); they scale with the instance size through the
/// accessors below.
struct SolverParams {
    OptimizerSettings opt;

    double feasibility_tol = 1e-9;  // on overlap depth (distance units)

    // Tabu search schedule.
    int tabu_tenure_divisor = 5;  // base tenure = n / divisor
    int tabu_tenure_jitter = 10;  // + uniform integer in [0, jitter]
    int tabu_depth_factor = 10;   // stop after factor*n non-improving steps

    // Iterated search schedule.
    int perturb_strength_divisor = 8;  // strength drawn from [1, max(1, n/divisor)]
    int perturb_depth_factor = 10;     // stop after factor*n non-improving rounds

    // Descending-radius driver.
    double shrink_delta_init = 1e-3;
    double shrink_delta_floor = 1e-7;
    int max_floor_failures = 3;      // consecutive failures at the floor before giving up
    double slice_fraction = 0.25;    // per-decision budget = remaining * fraction
    double slice_min_seconds = 5.0;  // ... clamped to [min, remaining]

    // Optional early stop once the driver's best radius drops to this value.
    std::optional<double> stop_radius;

    int tabu_tenure_base(int n) const { return n / tabu_tenure_divisor; }
    int tabu_depth(int n) const { return tabu_depth_factor * n; }
    int perturb_strength_max(int n) const { return std::max(1, n / perturb_strength_divisor); }
    int perturb_depth(int n) const { return perturb_depth_factor * n; }
};

}  // namespace pucc
