#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pucc {

// ---------------------------------------------------------------------------
// Randomness
//
// One explicit generator threaded through every randomized operation; no
// global state. The raw-bit helpers below avoid std::uniform_*_distribution
// so that streams are identical across standard library implementations.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline double uniform_real(Rng& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
}

/// Uniform integer in the inclusive range [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

// ---------------------------------------------------------------------------
// Problem data
// ---------------------------------------------------------------------------

/// The immutable problem: n disk radii, kept sorted nondecreasing.
struct Instance {
    std::vector<double> radii;      // sorted nondecreasing
    std::vector<int> input_order;   // input_order[k] = original index of sorted disk k
    std::string name;

    int n() const { return static_cast<int>(radii.size()); }
    double max_radius() const { return radii.back(); }
    double radius_sum() const { return std::accumulate(radii.begin(), radii.end(), 0.0); }
    double area_lower_bound() const {
        double s = 0.0;
        for (double r : radii) s += r * r;
        return std::sqrt(s);
    }
};

inline Instance make_instance(std::vector<double> radii, std::string name = "") {
    if (radii.size() < 2)
        throw std::invalid_argument("instance needs at least 2 radii");
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("instance radii must be positive and finite");
    Instance inst;
    inst.name = std::move(name);
    std::vector<int> order(radii.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return radii[a] < radii[b]; });
    inst.radii.reserve(radii.size());
    for (int idx : order) inst.radii.push_back(radii[idx]);
    inst.input_order = std::move(order);
    return inst;
}

/// Contest family: n disks with radii 1, 2, ..., n.
inline Instance contest_instance(int n) {
    if (n < 2) throw std::invalid_argument("contest instance needs n >= 2");
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) radii[i] = i + 1;
    return make_instance(std::move(radii), "contest-" + std::to_string(n));
}

/// Candidate placement: 2n coordinates, (x_i, y_i) for disk i in sorted order.
struct Pattern {
    std::vector<double> coords;

    Pattern() = default;
    explicit Pattern(int n) : coords(2 * static_cast<std::size_t>(n), 0.0) {}

    int size() const { return static_cast<int>(coords.size() / 2); }
    double x(int i) const { return coords[2 * static_cast<std::size_t>(i)]; }
    double y(int i) const { return coords[2 * static_cast<std::size_t>(i) + 1]; }
    double& x(int i) { return coords[2 * static_cast<std::size_t>(i)]; }
    double& y(int i) { return coords[2 * static_cast<std::size_t>(i) + 1]; }

    void set(int i, double px, double py) {
        x(i) = px;
        y(i) = py;
    }
    void swap_disks(int i, int j) {
        std::swap(x(i), x(j));
        std::swap(y(i), y(j));
    }
    bool finite() const {
        for (double c : coords)
            if (!std::isfinite(c)) return false;
        return true;
    }
};

/// A container radius plus a packing pattern, with its achieved violation.
struct Solution {
    double radius = 0.0;
    Pattern pattern;
    double max_violation = 0.0;
    std::string instance_name;
};

// ---------------------------------------------------------------------------
// Trace plumbing
// ---------------------------------------------------------------------------

struct TraceRecord {
    int restart = 0;
    int round = 0;
    std::int64_t iteration = 0;
    std::string event;
    double energy = 0.0;
    double best_energy = 0.0;
};

/// Optional per-step sink; empty function means tracing is off.
using TraceSink = std::function<void(const TraceRecord&)>;

// ---------------------------------------------------------------------------
// Deterministic budget clock
//
// Budgets are expressed in seconds but accounted in abstract work units
// (charged per objective evaluation), so two runs with the same seed follow
// identical search paths and report identical elapsed values regardless of
// machine load. units_per_second is calibrated so one unit-second roughly
// matches one wall second on a desktop core; a wall-clock guard at 4x the
// nominal budget stops pathologically slow runs.
// ---------------------------------------------------------------------------

class WorkClock {
public:
    static constexpr double units_per_second = 2.0e8;

    explicit WorkClock(double wall_guard_seconds = 0.0)
        : wall_start_(std::chrono::steady_clock::now()),
          wall_guard_seconds_(wall_guard_seconds) {}

    void charge(std::uint64_t units) { used_ += units; }
    std::uint64_t used() const { return used_; }
    double seconds_used() const { return static_cast<double>(used_) / units_per_second; }

    static std::uint64_t to_units(double seconds) {
        return static_cast<std::uint64_t>(seconds * units_per_second);
    }

    bool wall_guard_tripped() const {
        if (wall_guard_seconds_ <= 0.0) return false;
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - wall_start_;
        return dt.count() > wall_guard_seconds_;
    }

private:
    std::uint64_t used_ = 0;
    std::chrono::steady_clock::time_point wall_start_;
    double wall_guard_seconds_;
};

/// A slice of a WorkClock's budget: expires when the clock passes until_units.
struct Deadline {
    std::uint64_t until_units = UINT64_MAX;

    static Deadline after(const WorkClock& clock, double seconds) {
        return Deadline{clock.used() + WorkClock::to_units(seconds)};
    }
    bool expired(const WorkClock& clock) const {
        return clock.used() >= until_units || clock.wall_guard_tripped();
    }
    double remaining_seconds(const WorkClock& clock) const {
        if (clock.used() >= until_units) return 0.0;
        return static_cast<double>(until_units - clock.used()) / WorkClock::units_per_second;
    }
};

}  // namespace pucc
