#include <catch2/catch_amalgamated.hpp>

#include "pucc/io.hpp"
#include "pucc/its.hpp"
#include "support.hpp"

using namespace pucc;

TEST_CASE("random patterns start fully inside the container") {
    Rng rng(8);
    const Instance inst = make_instance({0.5, 1.0, 2.0, 3.5});
    const double R = 6.0;
    for (int draw = 0; draw < 500; ++draw) {
        const Pattern p = random_pattern(inst, R, rng);
        for (int i = 0; i < inst.n(); ++i) REQUIRE(container_overlap(p, inst, R, i) == 0.0);
    }
}

TEST_CASE("random pattern centers average to the origin") {
    Rng rng(9);
    const Instance inst = make_instance({1, 1});
    const double R = 5.0;
    const int draws = 10000;
    double sx = 0.0, sy = 0.0;
    for (int draw = 0; draw < draws; ++draw) {
        const Pattern p = random_pattern(inst, R, rng);
        sx += p.x(0);
        sy += p.y(0);
    }
    const double rho = R - 1.0;  // sampling disk of the first disk
    const double se = 0.5 * rho / std::sqrt(static_cast<double>(draws));
    REQUIRE(std::abs(sx / draws) <= 3.0 * se);
    REQUIRE(std::abs(sy / draws) <= 3.0 * se);
}

TEST_CASE("perturbation strength follows the n/8 rule") {
    SolverParams params;
    REQUIRE(params.perturb_strength_max(8) == 1);
    REQUIRE(params.perturb_strength_max(40) == 5);
    REQUIRE(params.perturb_strength_max(2) == 1);  // clamped to at least one shift
}

TEST_CASE("shift_perturb outputs a local minimum") {
    const Instance c6 = contest_instance(6);
    const double R = 11.5;
    SolverParams params;
    Rng rng(14);
    const MinimizeResult start = minimize(c6, R, random_pattern(c6, R, rng), params.opt);
    for (int trial = 0; trial < 5; ++trial) {
        const MinimizeResult pert = shift_perturb(start.pattern, c6, R, params, rng);
        const MinimizeResult again = minimize(c6, R, pert.pattern, params.opt);
        REQUIRE(std::abs(again.energy - pert.energy) <= 1e-15 * std::max(1.0, pert.energy));
    }
}

TEST_CASE("its_decide rejects containers smaller than the largest disk") {
    const Instance mixed = make_instance({1, 2});
    SolverParams params;
    Rng rng(1);
    REQUIRE_THROWS_AS(its_decide(mixed, 1.5, params, 1.0, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(its_decide(mixed, 2.0, params, 1.0, rng), std::invalid_argument);
}

TEST_CASE("its_decide reports infeasibility at an impossible radius") {
    // two disks of radii 1 and 2 need R = 3; R = 2.5 is valid but infeasible
    const Instance mixed = make_instance({1, 2});
    SolverParams params;
    Rng rng(2);
    const DecideOutcome out = its_decide(mixed, 2.5, params, 1.5, rng);
    REQUIRE(!out.feasible);
    REQUIRE(out.max_violation > params.feasibility_tol);
    REQUIRE(out.restarts >= 1);
    // the budget is respected up to the round in flight
    REQUIRE(out.elapsed_seconds <= 1.5 + 0.5);
}

TEST_CASE("its_decide solves contest 5 at the known radius") {
    const Instance c5 = contest_instance(5);
    SolverParams params;
    Rng rng(3);
    const DecideOutcome out = its_decide(c5, 9.00139775, params, 30.0, rng);
    REQUIRE(out.feasible);
    REQUIRE(out.max_violation <= params.feasibility_tol);

    // independent re-verification of the winning pattern
    const Solution sol{9.00139775, out.pattern, out.max_violation, c5.name};
    REQUIRE(verify_solution(c5, sol, params.feasibility_tol).feasible);
}

TEST_CASE("accepted energies within a restart never increase") {
    const Instance c5 = contest_instance(5);
    SolverParams params;
    Rng rng(4);
    std::vector<TraceRecord> trace;
    its_decide(c5, 8.8, params, 2.0, rng, [&](const TraceRecord& t) { trace.push_back(t); });

    // reconstruct the accepted-X energy sequence per restart
    std::map<int, double> current;
    for (const TraceRecord& t : trace) {
        if (t.event == "restart") {
            current[t.restart] = t.energy;
        } else if (t.event == "accept") {
            auto it = current.find(t.restart);
            REQUIRE(it != current.end());
            REQUIRE(t.energy <= it->second + 1e-18);
            it->second = t.energy;
        }
    }
    REQUIRE(!current.empty());
}

TEST_CASE("its_decide is deterministic under a fixed seed") {
    const Instance c5 = contest_instance(5);
    SolverParams params;
    Rng a(55), b(55);
    std::vector<TraceRecord> ta, tb;
    const DecideOutcome ra =
        its_decide(c5, 8.9, params, 1.0, a, [&](const TraceRecord& t) { ta.push_back(t); });
    const DecideOutcome rb =
        its_decide(c5, 8.9, params, 1.0, b, [&](const TraceRecord& t) { tb.push_back(t); });
    REQUIRE(ra.pattern.coords == rb.pattern.coords);
    REQUIRE(ra.energy == rb.energy);
    REQUIRE(ra.restarts == rb.restarts);
    REQUIRE(ra.perturb_rounds == rb.perturb_rounds);
    REQUIRE(ra.elapsed_seconds == rb.elapsed_seconds);
    REQUIRE(ta.size() == tb.size());
}
