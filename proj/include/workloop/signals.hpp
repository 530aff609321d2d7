// Periodic target outputs x(t) as truncated harmonic series, with analytic
// derivatives and half-cycle structure detection.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "workloop/errors.hpp"
#include "workloop/numerics.hpp"

namespace wl {

/// x(t) = sum_k a_k cos(k W t) + b_k sin(k W t), k = 0..K.
/// Immutable after construction; evaluation and differentiation are exact
/// term-wise operations.
class PeriodicSignal {
  public:
    PeriodicSignal(double omega, std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
        : omega_(omega), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
        if (!(omega_ > 0.0)) throw Error("PeriodicSignal: omega must be > 0");
        if (sin_.size() < cos_.size()) sin_.resize(cos_.size(), 0.0);
        if (cos_.size() < sin_.size()) cos_.resize(sin_.size(), 0.0);
    }

    /// Pure cosine wave x = amp cos(W t).
    static PeriodicSignal simple_harmonic(double amplitude, double omega) {
        return PeriodicSignal(omega, {0.0, amplitude}, {0.0, 0.0});
    }

    double omega() const { return omega_; }
    double period() const { return 2.0 * std::numbers::pi / omega_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

    /// True iff the signal is a single cosine harmonic at the fundamental.
    bool is_simple_harmonic() const {
        for (std::size_t k = 0; k < cos_.size(); ++k) {
            if (sin_[k] != 0.0) return false;
            if (k != 1 && cos_[k] != 0.0) return false;
        }
        return cos_.size() > 1 && cos_[1] != 0.0;
    }

    /// x, xdot, or xddot at time t (derivative_order 0, 1, 2).
    double eval(double t, int derivative_order = 0) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < cos_.size(); ++k) {
            const double w = k * omega_;
            const double c = std::cos(w * t), s = std::sin(w * t);
            switch (derivative_order) {
                case 0: acc += cos_[k] * c + sin_[k] * s; break;
                case 1: acc += w * (-cos_[k] * s + sin_[k] * c); break;
                case 2: acc += -w * w * (cos_[k] * c + sin_[k] * s); break;
                default: throw Error("eval: derivative_order must be 0, 1 or 2");
            }
        }
        return acc;
    }

    /// Largest harmonic magnitude, as an amplitude scale.
    double amplitude_scale() const {
        double m = 0.0;
        for (std::size_t k = 0; k < cos_.size(); ++k)
            m = std::max(m, std::hypot(cos_[k], sin_[k]));
        return m;
    }

  private:
    double omega_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Half-cycle structure of one period: times and values of the global
/// extrema, and whether the signal consists of exactly two monotonic
/// half-cycles (velocity reversal only at the extrema).
struct HalfCycleDecomposition {
    double t_max = 0.0;
    double t_min = 0.0;
    double max_x = 0.0;
    double min_x = 0.0;
    bool monotonic = false;
};

namespace detail {

// Roots of g on [0, T) by uniform sign scan + bisection.
inline std::vector<double> periodic_roots(const std::function<double(double)>& g,
                                          double period, int grid_size,
                                          double abs_tol) {
    std::vector<double> roots;
    const double h = period / grid_size;
    double prev = g(0.0);
    for (int i = 1; i <= grid_size; ++i) {
        const double t = i * h;
        const double cur = g(t);
        if (prev == 0.0) {
            roots.push_back((i - 1) * h);
        } else if (prev * cur < 0.0) {
            RootConfig cfg;
            cfg.abs_tol = abs_tol;
            roots.push_back(bisect(g, {(i - 1) * h, t}, cfg));
        }
        prev = cur;
    }
    // a root at t = 0 can reappear near t = T through rounding; dedup mod T
    std::vector<double> unique;
    for (double r : roots) {
        bool dup = false;
        for (double u : unique) {
            double d = std::abs(r - u);
            d = std::min(d, period - d);
            if (d < 1e-6 * period) { dup = true; break; }
        }
        if (!dup) unique.push_back(r);
    }
    return unique;
}

}  // namespace detail

/// Find all velocity reversals over one period and classify the signal.
/// monotonic is true iff xdot changes sign exactly twice and has no grazing
/// zeros (|xdot| ~ 0 without sign change) elsewhere.
inline HalfCycleDecomposition decompose_half_cycles(const PeriodicSignal& signal,
                                                    int grid_size = 2048) {
    if (grid_size < 64) throw Error("decompose_half_cycles: grid_size >= 64 required");
    const double T = signal.period();
    const double t_tol = 1e-12 * T;

    auto vel = [&](double t) { return signal.eval(t, 1); };

    // velocity scale for degenerate / grazing detection
    double vscale = 0.0;
    for (int i = 0; i < grid_size; ++i)
        vscale = std::max(vscale, std::abs(vel(i * T / grid_size)));
    if (vscale == 0.0) throw DegenerateSignal("decompose_half_cycles: xdot is identically zero");

    std::vector<double> roots = detail::periodic_roots(vel, T, grid_size, t_tol);

    HalfCycleDecomposition out;
    out.monotonic = (roots.size() == 2);

    // Grazing contact: xdot touches zero without a sign change. These sit at
    // extrema of xdot, i.e. roots of xddot, away from the sign-change roots.
    if (out.monotonic) {
        auto acc = [&](double t) { return signal.eval(t, 2); };
        for (double tc : detail::periodic_roots(acc, T, grid_size, t_tol)) {
            bool near_root = false;
            for (double r : roots) {
                double d = std::abs(tc - r);
                d = std::min(d, T - d);
                if (d < 1e-6 * T) { near_root = true; break; }
            }
            if (!near_root && std::abs(vel(tc)) < 1e-9 * vscale) {
                out.monotonic = false;
                break;
            }
        }
    }

    // Global extrema: candidates are all velocity roots plus a fine scan.
    double best_max = -1e300, best_min = 1e300;
    auto consider = [&](double t) {
        const double x = signal.eval(t, 0);
        if (x > best_max) { best_max = x; out.t_max = t; }
        if (x < best_min) { best_min = x; out.t_min = t; }
    };
    for (double r : roots) consider(r);
    for (int i = 0; i < grid_size; ++i) consider(i * T / grid_size);
    // snap to the nearest velocity root (extrema lie at xdot = 0)
    for (double r : roots) {
        if (std::abs(signal.eval(r, 0) - best_max) <= 1e-12 * std::max(1.0, std::abs(best_max)))
            out.t_max = r;
        if (std::abs(signal.eval(r, 0) - best_min) <= 1e-12 * std::max(1.0, std::abs(best_min)))
            out.t_min = r;
    }
    out.max_x = signal.eval(out.t_max, 0);
    out.min_x = signal.eval(out.t_min, 0);
    return out;
}

}  // namespace wl
