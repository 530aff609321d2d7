// Work-loop construction and the per-period power metrics.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "workloop/errors.hpp"
#include "workloop/numerics.hpp"
#include "workloop/signals.hpp"

namespace wl {

enum class BranchKind { TotalLoad, InelasticLoad };

struct TimeSample {
    double t;
    double x;
    double xdot;
    double load;
};

/// A closed, simple, bivalued loop in the x-load plane: an upper and lower
/// branch over a common strictly increasing x-grid. The upper branch is the
/// rising (xdot > 0) half-cycle. When built from a trajectory the time
/// samples are retained.
struct WorkLoop {
    std::vector<double> x_grid;
    std::vector<double> upper;
    std::vector<double> lower;
    BranchKind branch_kind = BranchKind::InelasticLoad;
    std::vector<TimeSample> source;  // empty for imported loops

    double min_x() const { return x_grid.front(); }
    double max_x() const { return x_grid.back(); }
    double load_scale() const {
        double m = 0.0;
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            m = std::max({m, std::abs(upper[i]), std::abs(lower[i])});
        return m;
    }
};

struct PowerMetrics {
    double p_net = 0.0;
    double p_abs = 0.0;
    double p_pos = 0.0;
};

namespace detail {

/// Chebyshev-clustered grid on [lo, hi], denser near the endpoints where
/// elliptical branches have infinite slope.
inline std::vector<double> clustered_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i)
        g[i] = c - r * std::cos(std::numbers::pi * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// Piecewise-linear interpolation of (xs, ys) sorted ascending in xs.
inline double interp_linear(const std::vector<double>& xs,
                            const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto hi = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = hi - xs.begin();
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace detail

/// Trace (x(t), load(t)) over one period and re-parameterize each monotonic
/// half-cycle by x onto a common clustered grid. Requires a signal with
/// exactly two monotonic half-cycles.
inline WorkLoop build_loop(const PeriodicSignal& signal,
                           const std::function<double(double)>& load,
                           int grid_size = 513, BranchKind kind = BranchKind::InelasticLoad) {
    const HalfCycleDecomposition hc = decompose_half_cycles(signal);
    if (!hc.monotonic)
        throw NonMonotonicSignal("build_loop: signal is not two monotonic half-cycles");

    const double T = signal.period();
    // rising half: t_min -> t_max (xdot > 0); falling half: t_max -> t_min
    double t0 = hc.t_min;
    double t1 = hc.t_max;
    if (t1 <= t0) t1 += T;
    const double t2 = t0 + T;

    const int ns = std::max(4 * grid_size, 1024);
    auto sample_half = [&](double ta, double tb) {
        std::vector<double> xs(ns + 1), ls(ns + 1), ts(ns + 1);
        for (int i = 0; i <= ns; ++i) {
            const double t = ta + (tb - ta) * i / ns;
            ts[i] = t;
            xs[i] = signal.eval(t, 0);
            ls[i] = load(t);
        }
        return std::tuple{ts, xs, ls};
    };
    auto [tr, xr, lr] = sample_half(t0, t1);  // rising: x increasing
    auto [tf, xf, lf] = sample_half(t1, t2);  // falling: x decreasing
    std::reverse(xf.begin(), xf.end());
    std::reverse(lf.begin(), lf.end());

    WorkLoop loop;
    loop.branch_kind = kind;
    loop.x_grid = detail::clustered_grid(hc.min_x, hc.max_x, grid_size);
    loop.upper.resize(grid_size);
    loop.lower.resize(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        loop.upper[i] = detail::interp_linear(xr, lr, loop.x_grid[i]);
        loop.lower[i] = detail::interp_linear(xf, lf, loop.x_grid[i]);
    }
    // branches meet exactly at the turning points
    loop.upper.front() = loop.lower.front() = load(t0);
    loop.upper.back() = loop.lower.back() = load(t1);

    loop.source.reserve(2 * ns + 1);
    for (int i = 0; i <= ns; ++i)
        loop.source.push_back({tr[i], xr[i], signal.eval(tr[i], 1), lr[i]});
    for (int i = 1; i <= ns; ++i)
        loop.source.push_back(
            {tf[i], signal.eval(tf[i], 0), signal.eval(tf[i], 1), load(tf[i])});

    // upper/lower may invert wholesale for anti-dissipative loops; mixed
    // ordering means self-intersection
    const double tol = 1e-9 * std::max(1.0, loop.load_scale());
    bool ge = true, le = true;
    for (int i = 0; i < grid_size; ++i) {
        if (loop.upper[i] < loop.lower[i] - tol) ge = false;
        if (loop.upper[i] > loop.lower[i] + tol) le = false;
    }
    if (!ge && !le) throw SelfIntersecting("build_loop: branches cross in the interior");
    return loop;
}

/// Ingest a loop given directly as branch tables (e.g. from an external
/// CFD analysis). No time parameterization is retained.
inline WorkLoop import_loop(const std::vector<double>& x,
                            const std::vector<double>& f_upper,
                            const std::vector<double>& f_lower,
                            BranchKind kind = BranchKind::TotalLoad) {
    if (x.size() < 2 || x.size() != f_upper.size() || x.size() != f_lower.size())
        throw Error("import_loop: need >= 2 rows of matching length");
    if (!std::is_sorted(x.begin(), x.end()) ||
        std::adjacent_find(x.begin(), x.end()) != x.end())
        throw Error("import_loop: x must be strictly increasing");
    double scale = 1e-300;
    for (std::size_t i = 0; i < x.size(); ++i)
        scale = std::max({scale, std::abs(f_upper[i]), std::abs(f_lower[i])});
    if (std::abs(f_upper.front() - f_lower.front()) > 1e-6 * scale ||
        std::abs(f_upper.back() - f_lower.back()) > 1e-6 * scale)
        throw NotClosed("import_loop: branches do not meet at the endpoints");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (f_upper[i] < f_lower[i] - 1e-9 * scale)
            throw NotBivalued("import_loop: upper branch below lower branch");
    WorkLoop loop;
    loop.x_grid = x;
    loop.upper = f_upper;
    loop.lower = f_lower;
    loop.branch_kind = kind;
    return loop;
}

/// Enclosed area, integral of (upper - lower) dx by the trapezoid rule.
/// Equals the net work per cycle for a total-load loop.
inline double loop_area(const WorkLoop& loop) {
    double area = 0.0;
    for (std::size_t i = 1; i < loop.x_grid.size(); ++i) {
        const double dx = loop.x_grid[i] - loop.x_grid[i - 1];
        area += 0.5 * dx * ((loop.upper[i] - loop.lower[i]) +
                            (loop.upper[i - 1] - loop.lower[i - 1]));
    }
    return area;
}

/// Net, absolute, and positive-only power of a load along a signal, by
/// trapezoid quadrature of F xdot over one period.
inline PowerMetrics power_metrics(const PeriodicSignal& signal,
                                  const std::function<double(double)>& load,
                                  int quad_points = 4096) {
    if (quad_points < 256) throw Error("power_metrics: quad_points >= 256 required");
    const double T = signal.period();
    auto p = [&](double t) { return load(t) * signal.eval(t, 1); };
    PowerMetrics m;
    m.p_net = quad_trapezoid(p, {0.0, T}, quad_points);
    m.p_abs = quad_trapezoid([&](double t) { return std::abs(p(t)); }, {0.0, T}, quad_points);
    m.p_pos = quad_trapezoid([&](double t) { const double v = p(t); return v > 0.0 ? v : 0.0; },
                             {0.0, T}, quad_points);
    return m;
}

}  // namespace wl
