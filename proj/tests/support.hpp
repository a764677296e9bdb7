#pragma once

// Test-only helpers: independent oracles and random-configuration
// generators. The oracles deliberately avoid the library's evaluation
// entry points; they exist to cross-check them.

#include <cmath>
#include <vector>

#include "pucc/core.hpp"
#include "pucc/energy.hpp"

namespace testsup {

struct OracleReport {
    double energy = 0.0;
    double max_violation = 0.0;
};

/// Brute-force penalty energy: a plain double loop over every pair plus a
/// container term per disk, written separately from pucc::energy.
inline OracleReport brute_force_energy(const pucc::Pattern& p, const std::vector<double>& radii,
                                       double R) {
    OracleReport rep;
    const int n = static_cast<int>(radii.size());
    for (int i = 0; i < n; ++i) {
        double depth = std::hypot(p.x(i), p.y(i)) + radii[i] - R;
        if (depth < 0.0) depth = 0.0;
        rep.energy += depth * depth;
        if (depth > rep.max_violation) rep.max_violation = depth;
        for (int j = i + 1; j < n; ++j) {
            double od = radii[i] + radii[j] - std::hypot(p.x(i) - p.x(j), p.y(i) - p.y(j));
            if (od < 0.0) od = 0.0;
            rep.energy += od * od;
            if (od > rep.max_violation) rep.max_violation = od;
        }
    }
    return rep;
}

/// Random instance with radii in [0.5, 2.5].
inline pucc::Instance random_instance(pucc::Rng& rng, int n) {
    std::vector<double> radii(n);
    for (double& r : radii) r = pucc::uniform_real(rng, 0.5, 2.5);
    return pucc::make_instance(std::move(radii), "random");
}

/// Uniform scatter over the container disk (overlaps of both kinds likely).
inline pucc::Pattern random_config(pucc::Rng& rng, const pucc::Instance& inst, double R) {
    pucc::Pattern p(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        const double theta = pucc::uniform_real(rng, 0.0, 6.283185307179586);
        const double rad = R * std::sqrt(pucc::uniform_real(rng, 0.0, 1.0));
        p.set(i, rad * std::cos(theta), rad * std::sin(theta));
    }
    return p;
}

/// True when every pair and container term is far from the hinge and no two
/// centers nearly coincide, so finite differences are trustworthy.
inline bool non_degenerate(const pucc::Pattern& p, const pucc::Instance& inst, double R,
                           double margin = 1e-4) {
    const int n = inst.n();
    for (int i = 0; i < n; ++i) {
        const double d = std::hypot(p.x(i), p.y(i));
        if (d < 1e-2) return false;
        if (std::abs(d + inst.radii[i] - R) < margin) return false;
        for (int j = i + 1; j < n; ++j) {
            const double dij = std::hypot(p.x(i) - p.x(j), p.y(i) - p.y(j));
            if (dij < 1e-2) return false;
            if (std::abs(inst.radii[i] + inst.radii[j] - dij) < margin) return false;
        }
    }
    return true;
}

/// Rejection-samples a non-degenerate overlapping configuration.
inline pucc::Pattern random_non_degenerate(pucc::Rng& rng, const pucc::Instance& inst, double R) {
    for (;;) {
        pucc::Pattern p = random_config(rng, inst, 0.8 * R);
        if (non_degenerate(p, inst, R)) return p;
    }
}

}  // namespace testsup
