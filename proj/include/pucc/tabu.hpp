#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pucc/core.hpp"
#include "pucc/energy.hpp"
#include "pucc/optimizer.hpp"
#include "pucc/params.hpp"

namespace pucc {

/// Swap of sorted-adjacent disks k and k+1.
struct SwapMove {
    int k = 0;
};

/// The restricted neighborhood: one move per adjacent pair with different
/// radii. Equal-radius pairs are identity moves and are skipped.
inline std::vector<SwapMove> candidate_moves(const Instance& inst) {
    std::vector<SwapMove> moves;
    moves.reserve(static_cast<std::size_t>(inst.n()) - 1);
    for (int k = 0; k + 1 < inst.n(); ++k)
        if (inst.radii[k] != inst.radii[k + 1]) moves.push_back({k});
    return moves;
}

/// Exchange the centers of disks k and k+1, then locally re-minimize.
/// The input pattern is left untouched.
inline MinimizeResult swap_move(const Pattern& p, const Instance& inst, double R, SwapMove mv,
                                const OptimizerSettings& settings, WorkClock* clock = nullptr,
                                Lbfgs* workspace = nullptr) {
    if (mv.k < 0 || mv.k + 1 >= inst.n())
        throw std::out_of_range("swap_move: move index out of range");
    Pattern swapped = p;
    swapped.swap_disks(mv.k, mv.k + 1);
    return minimize(inst, R, swapped, settings, clock, workspace);
}

/// Outcome of one combinatorial search (tabu or steepest descent): the best
/// pattern seen, its energy report, and the number of search steps taken.
struct SearchResult {
    Pattern pattern;
    double energy = 0.0;
    double max_violation = 0.0;
    std::int64_t iterations = 0;

    bool feasible(double tol) const { return max_violation <= tol; }
};

struct TabuState {
    std::vector<std::int64_t> tabu_until;  // move k is forbidden through this iteration
    std::int64_t iteration = 0;
    std::int64_t stall = 0;  // iterations since the last best improvement
};

// ---------------------------------------------------------------------------
// SwapTabuSearch: walks the set of local minima through swap moves. Every
// iteration evaluates all candidate swaps, picks the admissible one with the
// lowest re-minimized energy (tabu moves are admissible only when they beat
// the best found so far), moves there even if worse, and marks the move tabu
// for n/5 + rand(0,10) iterations. Stops after tabu_depth(n) iterations
// without improving the best, or as soon as the best is feasible.
// ---------------------------------------------------------------------------
inline SearchResult swap_tabu_search(const Pattern& start, const Instance& inst, double R,
                                     const SolverParams& params, Rng& rng,
                                     const TraceSink& sink = {}, WorkClock* clock = nullptr) {
    const int n = inst.n();
    const std::vector<SwapMove> moves = candidate_moves(inst);

    if (clock) clock->charge(eval_cost(n));
    const EnergyReport start_rep = energy(start, inst, R);
    SearchResult cur{start, start_rep.energy, start_rep.max_violation, 0};
    SearchResult best = cur;
    if (moves.empty()) return best;  // all radii equal: no neighborhood

    TabuState st;
    st.tabu_until.assign(moves.size(), -1);
    const std::int64_t depth = params.tabu_depth(n);

    Lbfgs workspace;
    std::vector<MinimizeResult> cand(moves.size());
    std::vector<int> pool, ties;
    pool.reserve(moves.size());
    ties.reserve(moves.size());

    while (st.stall < depth) {
        if (best.energy <= params.opt.energy_tol || best.feasible(params.feasibility_tol)) break;

        for (std::size_t m = 0; m < moves.size(); ++m)
            cand[m] = swap_move(cur.pattern, inst, R, moves[m], params.opt, clock, &workspace);

        pool.clear();
        for (std::size_t m = 0; m < moves.size(); ++m) {
            const bool tabu = st.iteration <= st.tabu_until[m];
            if (!tabu || cand[m].energy < best.energy) pool.push_back(static_cast<int>(m));
        }
        const bool fallback = pool.empty();
        if (fallback) {
            // Every move tabu and none aspirating: pick greedily anyway.
            for (std::size_t m = 0; m < moves.size(); ++m) pool.push_back(static_cast<int>(m));
        }

        double emin = std::numeric_limits<double>::infinity();
        for (int m : pool) emin = std::min(emin, cand[m].energy);
        ties.clear();
        for (int m : pool)
            if (cand[m].energy == emin) ties.push_back(m);
        const int pick =
            ties.size() == 1
                ? ties[0]
                : ties[uniform_int(rng, 0, static_cast<std::int64_t>(ties.size()) - 1)];

        const bool was_tabu = st.iteration <= st.tabu_until[pick];
        cur.pattern = std::move(cand[pick].pattern);
        cur.energy = cand[pick].energy;
        cur.max_violation = cand[pick].max_violation;

        const int tenure = params.tabu_tenure_base(n) +
                           static_cast<int>(uniform_int(rng, 0, params.tabu_tenure_jitter));
        st.tabu_until[pick] = st.iteration + tenure;

        if (cur.energy < best.energy) {
            best = cur;
            st.stall = 0;
        } else {
            ++st.stall;
        }
        if (sink) {
            std::string event = "swap:" + std::to_string(moves[pick].k);
            if (fallback)
                event += ":fallback";
            else if (was_tabu)
                event += ":aspiration";
            sink(TraceRecord{0, 0, st.iteration, std::move(event), cur.energy, best.energy});
        }
        ++st.iteration;
    }
    best.iterations = st.iteration;
    return best;
}

// ---------------------------------------------------------------------------
// Steepest Descent baseline on the same neighborhood: move to the best
// neighbor while it is at least as good as the current pattern, stop at the
// first pattern with no improving-or-equal neighbor or on feasibility.
// Accepting equal-energy neighbors can cycle, so the walk also stops after n
// consecutive accepted moves without strict improvement.
// ---------------------------------------------------------------------------
inline SearchResult steepest_descent(const Pattern& start, const Instance& inst, double R,
                                     const SolverParams& params, const TraceSink& sink = {},
                                     WorkClock* clock = nullptr) {
    const int n = inst.n();
    const std::vector<SwapMove> moves = candidate_moves(inst);

    if (clock) clock->charge(eval_cost(n));
    const EnergyReport start_rep = energy(start, inst, R);
    SearchResult cur{start, start_rep.energy, start_rep.max_violation, 0};
    if (moves.empty()) return cur;

    Lbfgs workspace;
    int weak_streak = 0;
    while (!cur.feasible(params.feasibility_tol) && cur.energy > params.opt.energy_tol) {
        int pick = -1;
        MinimizeResult best_cand;
        for (const SwapMove mv : moves) {
            MinimizeResult res = swap_move(cur.pattern, inst, R, mv, params.opt, clock, &workspace);
            if (pick < 0 || res.energy < best_cand.energy) {
                best_cand = std::move(res);
                pick = mv.k;
            }
        }
        if (best_cand.energy > cur.energy) break;  // strict ascent only: local minimum
        const bool strict = best_cand.energy < cur.energy;
        cur.pattern = std::move(best_cand.pattern);
        cur.energy = best_cand.energy;
        cur.max_violation = best_cand.max_violation;
        ++cur.iterations;
        if (sink)
            sink(TraceRecord{0, 0, cur.iterations, "sd:" + std::to_string(pick), cur.energy,
                             cur.energy});
        weak_streak = strict ? 0 : weak_streak + 1;
        if (weak_streak >= n) break;  // equal-energy plateau guard
    }
    return cur;
}

}  // namespace pucc
