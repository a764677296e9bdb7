#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pucc/core.hpp"

namespace pucc {

struct EnergyReport {
    double energy = 0.0;         // sum of squared overlap depths
    double max_violation = 0.0;  // largest single overlap depth
};

/// Work units charged per full energy/gradient evaluation (call overhead
/// plus one term per pair and per disk).
inline std::uint64_t eval_cost(int n) {
    const auto un = static_cast<std::uint64_t>(n);
    return 16 + un * (un + 1) / 2;
}

namespace detail {

/// Fixed unit direction for degenerate geometry (coincident centers, or a
/// disk sitting exactly on the origin with an active container term). Any
/// finite direction works; this one is deterministic in the indices.
inline void tie_direction(int i, int j, double& ux, double& uy) {
    const double a = 2.399963229728653 * static_cast<double>(31 * (i + 1) + j + 1);
    ux = std::cos(a);
    uy = std::sin(a);
}

inline void check_dims(const Pattern& p, const Instance& inst) {
    if (p.size() != inst.n())
        throw std::invalid_argument("pattern size does not match instance");
}

}  // namespace detail

/// Core O(n^2) kernel over raw coordinates (x0,y0,x1,y1,...). When grad is
/// non-null it must hold 2n doubles; it is zeroed and filled with the
/// analytic gradient of the fixed-R energy. Terms with zero overlap
/// contribute nothing (one-sided derivative at the hinge).
inline EnergyReport energy_eval_raw(const double* xy, const Instance& inst, double R,
                                    double* grad) {
    const int n = inst.n();
    if (grad) {
        for (int c = 0; c < 2 * n; ++c) grad[c] = 0.0;
    }
    EnergyReport rep;

    for (int i = 0; i < n; ++i) {
        const double xi = xy[2 * i], yi = xy[2 * i + 1];
        const double d = std::sqrt(xi * xi + yi * yi);
        const double o = d + inst.radii[i] - R;
        if (o > 0.0) {
            rep.energy += o * o;
            if (o > rep.max_violation) rep.max_violation = o;
            if (grad) {
                double ux, uy;
                if (d > 0.0) {
                    ux = xi / d;
                    uy = yi / d;
                } else {
                    detail::tie_direction(i, i, ux, uy);
                }
                grad[2 * i] += 2.0 * o * ux;
                grad[2 * i + 1] += 2.0 * o * uy;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const double xi = xy[2 * i], yi = xy[2 * i + 1];
        const double ri = inst.radii[i];
        for (int j = i + 1; j < n; ++j) {
            const double dx = xi - xy[2 * j];
            const double dy = yi - xy[2 * j + 1];
            const double d = std::sqrt(dx * dx + dy * dy);
            const double o = ri + inst.radii[j] - d;
            if (o > 0.0) {
                rep.energy += o * o;
                if (o > rep.max_violation) rep.max_violation = o;
                if (grad) {
                    double ux, uy;
                    if (d > 0.0) {
                        ux = dx / d;
                        uy = dy / d;
                    } else {
                        detail::tie_direction(i, j, ux, uy);
                    }
                    grad[2 * i] -= 2.0 * o * ux;
                    grad[2 * i + 1] -= 2.0 * o * uy;
                    grad[2 * j] += 2.0 * o * ux;
                    grad[2 * j + 1] += 2.0 * o * uy;
                }
            }
        }
    }
    return rep;
}

/// Overlap depth between disks i and j: max{0, r_i + r_j - dist}.
inline double pair_overlap(const Pattern& p, const Instance& inst, int i, int j) {
    if (i < 0 || j < 0 || i >= inst.n() || j >= inst.n() || i == j)
        throw std::out_of_range("pair_overlap: bad disk index");
    const double dx = p.x(i) - p.x(j);
    const double dy = p.y(i) - p.y(j);
    const double d = std::sqrt(dx * dx + dy * dy);
    const double o = inst.radii[i] + inst.radii[j] - d;
    return o > 0.0 ? o : 0.0;
}

/// Overlap depth between disk i and the container exterior: max{0, |c_i| + r_i - R}.
inline double container_overlap(const Pattern& p, const Instance& inst, double R, int i) {
    if (i < 0 || i >= inst.n())
        throw std::out_of_range("container_overlap: bad disk index");
    const double d = std::sqrt(p.x(i) * p.x(i) + p.y(i) * p.y(i));
    const double o = d + inst.radii[i] - R;
    return o > 0.0 ? o : 0.0;
}

inline EnergyReport energy(const Pattern& p, const Instance& inst, double R) {
    detail::check_dims(p, inst);
    return energy_eval_raw(p.coords.data(), inst, R, nullptr);
}

inline std::vector<double> energy_gradient(const Pattern& p, const Instance& inst, double R) {
    detail::check_dims(p, inst);
    std::vector<double> grad(p.coords.size());
    energy_eval_raw(p.coords.data(), inst, R, grad.data());
    return grad;
}

inline double max_violation(const Pattern& p, const Instance& inst, double R) {
    return energy(p, inst, R).max_violation;
}

}  // namespace pucc
