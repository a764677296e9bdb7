#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pucc/core.hpp"
#include "pucc/energy.hpp"

namespace pucc {

enum class Termination {
    gradient_converged,
    energy_converged,
    iteration_cap,
    line_search_failure,
};

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::gradient_converged: return "gradient-converged";
        case Termination::energy_converged: return "energy-converged";
        case Termination::iteration_cap: return "iteration-cap";
        case Termination::line_search_failure: return "line-search-failure";
    }
    return "?";
}

struct OptimizerSettings {
    int memory = 7;            // stored correction pairs
    double grad_tol = 1e-12;   // infinity norm of the gradient
    double energy_tol = 1e-20; // objective value considered converged
    int max_iters = 0;         // <= 0: 100 * dimension
    double wolfe_c1 = 1e-4;    // sufficient decrease
    double wolfe_c2 = 0.9;     // curvature
};

struct MinimizeResult {
    Pattern pattern;
    double energy = 0.0;
    double max_violation = 0.0;
    int iterations = 0;
    Termination termination = Termination::iteration_cap;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

inline bool all_finite(const std::vector<double>& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Limited-memory BFGS with a strong-Wolfe line search.
//
// The objective is any callable  double(const std::vector<double>& x,
// std::vector<double>& grad)  that fills grad (size of x) and returns the
// value. Workspace lives in the object so hot loops can reuse one instance
// across many calls without reallocating.
// ---------------------------------------------------------------------------
class Lbfgs {
public:
    struct Result {
        std::vector<double> x;
        double f = 0.0;
        int iterations = 0;
        Termination termination = Termination::iteration_cap;
    };

    template <class Objective>
    Result minimize(Objective&& obj, std::vector<double> x0, const OptimizerSettings& s) {
        const int dim = static_cast<int>(x0.size());
        const int m = std::max(1, s.memory);
        const int max_iters = s.max_iters > 0 ? s.max_iters : 100 * dim;
        reserve(dim, m);

        std::vector<double>& x = x0;
        double f = obj(x, g_);
        if (!std::isfinite(f) || !detail::all_finite(g_))
            throw std::invalid_argument("minimize: non-finite objective at start");
        if (f <= s.energy_tol) return Result{std::move(x), f, 0, Termination::energy_converged};
        if (detail::inf_norm(g_) <= s.grad_tol)
            return Result{std::move(x), f, 0, Termination::gradient_converged};

        stored_ = 0;
        head_ = 0;
        for (int iter = 1; iter <= max_iters; ++iter) {
            compute_direction();
            double dphi0 = detail::dot(d_, g_);
            if (dphi0 >= 0.0) {
                // Numerically corrupted curvature memory: fall back to steepest
                // descent and drop the stored pairs.
                stored_ = 0;
                for (std::size_t i = 0; i < d_.size(); ++i) d_[i] = -g_[i];
                dphi0 = -detail::dot(g_, g_);
                if (dphi0 >= 0.0)
                    return Result{std::move(x), f, iter, Termination::gradient_converged};
            }
            const double alpha0 =
                stored_ == 0 ? std::min(1.0, 1.0 / std::sqrt(-dphi0)) : 1.0;

            double f_new = 0.0;
            if (!line_search(obj, x, f, dphi0, alpha0, s, f_new)) {
                return Result{std::move(x), f, iter, Termination::line_search_failure};
            }
            // xn_/gn_ now hold the accepted point; push the correction pair.
            push_pair(x, xn_, g_, gn_);
            x.swap(xn_);
            g_.swap(gn_);
            f = f_new;

            if (f <= s.energy_tol)
                return Result{std::move(x), f, iter, Termination::energy_converged};
            if (detail::inf_norm(g_) <= s.grad_tol)
                return Result{std::move(x), f, iter, Termination::gradient_converged};
        }
        return Result{std::move(x), f, max_iters, Termination::iteration_cap};
    }

private:
    void reserve(int dim, int m) {
        const auto d = static_cast<std::size_t>(dim);
        g_.assign(d, 0.0);
        d_.assign(d, 0.0);
        xt_.assign(d, 0.0);
        gt_.assign(d, 0.0);
        xn_.assign(d, 0.0);
        gn_.assign(d, 0.0);
        xlo_.assign(d, 0.0);
        glo_.assign(d, 0.0);
        s_mem_.assign(m, std::vector<double>(d, 0.0));
        y_mem_.assign(m, std::vector<double>(d, 0.0));
        rho_.assign(m, 0.0);
        alpha_.assign(m, 0.0);
    }

    // d_ = -H g_ via the two-loop recursion over the stored pairs.
    void compute_direction() {
        d_ = g_;
        const int m = static_cast<int>(s_mem_.size());
        for (int k = 0; k < stored_; ++k) {
            const int i = (head_ - 1 - k + 2 * m) % m;  // newest to oldest
            alpha_[i] = rho_[i] * detail::dot(s_mem_[i], d_);
            for (std::size_t c = 0; c < d_.size(); ++c) d_[c] -= alpha_[i] * y_mem_[i][c];
        }
        if (stored_ > 0) {
            const int newest = (head_ - 1 + m) % m;
            const double yy = detail::dot(y_mem_[newest], y_mem_[newest]);
            if (yy > 0.0) {
                const double gamma = 1.0 / (rho_[newest] * yy);
                for (double& c : d_) c *= gamma;
            }
        }
        for (int k = stored_ - 1; k >= 0; --k) {
            const int i = (head_ - 1 - k + 2 * m) % m;  // oldest to newest
            const double beta = rho_[i] * detail::dot(y_mem_[i], d_);
            for (std::size_t c = 0; c < d_.size(); ++c) d_[c] += (alpha_[i] - beta) * s_mem_[i][c];
        }
        for (double& c : d_) c = -c;
    }

    void push_pair(const std::vector<double>& x_old, const std::vector<double>& x_new,
                   const std::vector<double>& g_old, const std::vector<double>& g_new) {
        const int m = static_cast<int>(s_mem_.size());
        std::vector<double>& sv = s_mem_[head_];
        std::vector<double>& yv = y_mem_[head_];
        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (std::size_t c = 0; c < x_old.size(); ++c) {
            sv[c] = x_new[c] - x_old[c];
            yv[c] = g_new[c] - g_old[c];
            sy += sv[c] * yv[c];
            ss += sv[c] * sv[c];
            yy += yv[c] * yv[c];
        }
        if (sy > 1e-10 * std::sqrt(ss * yy) && sy > 0.0) {
            rho_[head_] = 1.0 / sy;
            head_ = (head_ + 1) % m;
            stored_ = std::min(stored_ + 1, m);
        }
    }

    // Evaluates the objective at x + alpha * d_; fills xt_/gt_.
    template <class Objective>
    void eval_trial(Objective& obj, const std::vector<double>& x, double alpha, double& phi,
                    double& dphi) {
        for (std::size_t c = 0; c < x.size(); ++c) xt_[c] = x[c] + alpha * d_[c];
        phi = obj(xt_, gt_);
        if (!std::isfinite(phi)) {
            phi = std::numeric_limits<double>::infinity();
            dphi = 0.0;
            return;
        }
        dphi = detail::dot(gt_, d_);
    }

    // Strong-Wolfe search along d_. On success xn_/gn_ hold the accepted
    // point and f_new its value. On exhaustion a point with sufficient
    // decrease is still accepted (the curvature-poor pair is dropped by
    // push_pair); returns false only when no decrease was found at all.
    template <class Objective>
    bool line_search(Objective& obj, const std::vector<double>& x, double phi0, double dphi0,
                     double alpha0, const OptimizerSettings& s, double& f_new) {
        const double c1 = s.wolfe_c1, c2 = s.wolfe_c2;
        const double alpha_max = 1e12;
        double a_prev = 0.0, phi_prev = phi0, dphi_prev = dphi0;
        double a = alpha0;
        bool have_cached_prev = false;

        for (int it = 0; it < 25; ++it) {
            double phi, dphi;
            eval_trial(obj, x, a, phi, dphi);
            if (!std::isfinite(phi) || phi > phi0 + c1 * a * dphi0 ||
                (it > 0 && phi >= phi_prev)) {
                return zoom(obj, x, phi0, dphi0, a_prev, phi_prev, dphi_prev, have_cached_prev,
                            a, phi, s, f_new);
            }
            if (std::abs(dphi) <= -c2 * dphi0) {
                xn_.swap(xt_);
                gn_.swap(gt_);
                f_new = phi;
                return true;
            }
            if (dphi >= 0.0) {
                xlo_.swap(xt_);
                glo_.swap(gt_);
                return zoom(obj, x, phi0, dphi0, a, phi, dphi, true, a_prev, phi_prev, s, f_new);
            }
            a_prev = a;
            phi_prev = phi;
            dphi_prev = dphi;
            xlo_.swap(xt_);
            glo_.swap(gt_);
            have_cached_prev = true;
            if (a >= alpha_max) break;
            a = std::min(2.5 * a, alpha_max);
        }
        // Expansion ran out while every trial kept improving: take the last one.
        if (have_cached_prev) {
            xn_.swap(xlo_);
            gn_.swap(glo_);
            f_new = phi_prev;
            return true;
        }
        return false;
    }

    template <class Objective>
    bool zoom(Objective& obj, const std::vector<double>& x, double phi0, double dphi0,
              double a_lo, double phi_lo, double dphi_lo, bool lo_cached, double a_hi,
              double phi_hi, const OptimizerSettings& s, double& f_new) {
        const double c1 = s.wolfe_c1, c2 = s.wolfe_c2;
        for (int it = 0; it < 50; ++it) {
            const double width = a_hi - a_lo;
            if (std::abs(width) <= 1e-14 * std::max(1.0, std::abs(a_lo))) break;

            // Quadratic model through (phi_lo, dphi_lo, phi_hi), safeguarded
            // to the middle 80% of the interval; bisect when it misbehaves.
            double a = a_lo + 0.5 * width;
            if (std::isfinite(phi_hi)) {
                const double denom = 2.0 * (phi_hi - phi_lo - dphi_lo * width);
                if (denom != 0.0) {
                    const double step = -dphi_lo * width * width / denom;
                    const double cand = a_lo + step;
                    const double lo_guard = a_lo + 0.1 * width;
                    const double hi_guard = a_lo + 0.9 * width;
                    const double lo_bound = std::min(lo_guard, hi_guard);
                    const double hi_bound = std::max(lo_guard, hi_guard);
                    if (std::isfinite(cand) && cand >= lo_bound && cand <= hi_bound) a = cand;
                }
            }

            double phi, dphi;
            eval_trial(obj, x, a, phi, dphi);
            if (!std::isfinite(phi) || phi > phi0 + c1 * a * dphi0 || phi >= phi_lo) {
                a_hi = a;
                phi_hi = phi;
            } else {
                if (std::abs(dphi) <= -c2 * dphi0) {
                    xn_.swap(xt_);
                    gn_.swap(gt_);
                    f_new = phi;
                    return true;
                }
                if (dphi * width >= 0.0) {
                    a_hi = a_lo;
                    phi_hi = phi_lo;
                }
                a_lo = a;
                phi_lo = phi;
                dphi_lo = dphi;
                xlo_.swap(xt_);
                glo_.swap(gt_);
                lo_cached = true;
            }
        }
        if (lo_cached && a_lo > 0.0) {
            xn_.swap(xlo_);
            gn_.swap(glo_);
            f_new = phi_lo;
            return true;
        }
        return false;
    }

    std::vector<double> g_, d_, xt_, gt_, xn_, gn_, xlo_, glo_;
    std::vector<std::vector<double>> s_mem_, y_mem_;
    std::vector<double> rho_, alpha_;
    int stored_ = 0;
    int head_ = 0;
};

// ---------------------------------------------------------------------------
// Packing-specific entry points
// ---------------------------------------------------------------------------

/// Objective adapter for the fixed-R penalty energy; charges the work clock
/// per evaluation when one is attached.
struct PackingObjective {
    const Instance* inst;
    double R;
    WorkClock* clock = nullptr;

    double operator()(const std::vector<double>& x, std::vector<double>& grad) const {
        if (clock) clock->charge(eval_cost(inst->n()));
        grad.resize(x.size());
        return energy_eval_raw(x.data(), *inst, R, grad.data()).energy;
    }
};

inline MinimizeResult minimize(const Instance& inst, double R, const Pattern& start,
                               const OptimizerSettings& settings, WorkClock* clock = nullptr,
                               Lbfgs* workspace = nullptr) {
    detail::check_dims(start, inst);
    if (!(R > 0.0)) throw std::invalid_argument("minimize: container radius must be positive");
    if (!start.finite()) throw std::invalid_argument("minimize: non-finite start pattern");
    OptimizerSettings s = settings;
    if (s.max_iters <= 0) s.max_iters = 200 * inst.n();

    PackingObjective obj{&inst, R, clock};
    Lbfgs local;
    Lbfgs& lbfgs = workspace ? *workspace : local;
    Lbfgs::Result r = lbfgs.minimize(obj, start.coords, s);

    MinimizeResult out;
    out.pattern.coords = std::move(r.x);
    out.iterations = r.iterations;
    out.termination = r.termination;
    if (clock) clock->charge(eval_cost(inst.n()));
    const EnergyReport rep = energy_eval_raw(out.pattern.coords.data(), inst, R, nullptr);
    out.energy = rep.energy;
    out.max_violation = rep.max_violation;
    return out;
}

/// Compares the analytic gradient against central finite differences
/// (h = 1e-6) and returns the worst relative discrepancy over components
/// whose magnitude exceeds 1e-6.
inline double check_gradient(const Instance& inst, double R, const Pattern& pattern) {
    const double h = 1e-6;
    const std::vector<double> analytic = energy_gradient(pattern, inst, R);
    Pattern probe = pattern;
    double worst = 0.0;
    for (std::size_t c = 0; c < probe.coords.size(); ++c) {
        const double saved = probe.coords[c];
        probe.coords[c] = saved + h;
        const double fp = energy(probe, inst, R).energy;
        probe.coords[c] = saved - h;
        const double fm = energy(probe, inst, R).energy;
        probe.coords[c] = saved;
        const double fd = (fp - fm) / (2.0 * h);
        const double scale = std::max(std::abs(analytic[c]), std::abs(fd));
        if (scale > 1e-6) worst = std::max(worst, std::abs(analytic[c] - fd) / scale);
    }
    return worst;
}

}  // namespace pucc
