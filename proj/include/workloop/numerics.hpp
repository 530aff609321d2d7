// Shared numerical kernels: bracketing bisection, trapezoidal quadrature,
// stable quadratic solving.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "workloop/errors.hpp"

namespace wl {

struct Interval {
    double lo;
    double hi;
};

struct RootConfig {
    double abs_tol = 1e-12;
    int max_iterations = 200;
    int scan_points = 1024;
};

/// Bisect a bracketed root of f. Requires f(lo) and f(hi) of opposite sign
/// (or one of them zero). Returns the interval midpoint once the bracket
/// width is below cfg.abs_tol.
inline double bisect(const std::function<double(double)>& f, Interval bracket,
                     const RootConfig& cfg = {}) {
    double lo = bracket.lo, hi = bracket.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw NoSignChange("bisect: no sign change over bracket");
    for (int i = 0; i < cfg.max_iterations; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= cfg.abs_tol) return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    throw MaxIterations("bisect: iteration limit reached");
}

/// Uniform-grid trapezoid rule with n panels over [lo, hi].
/// Spectrally accurate for smooth periodic integrands over a full period.
inline double quad_trapezoid(const std::function<double(double)>& f,
                             Interval interval, int n) {
    const double h = (interval.hi - interval.lo) / n;
    double sum = 0.5 * (f(interval.lo) + f(interval.hi));
    for (int i = 1; i < n; ++i) sum += f(interval.lo + i * h);
    return sum * h;
}

/// Real roots of a x^2 + b x + c = 0, ascending. Cancellation-free: the
/// larger-magnitude root is computed first, the other via c/(a r).
/// A near-zero discriminant (relative to b^2, 4ac) reports a double root once.
inline std::vector<double> solve_quadratic(double a, double b, double c) {
    if (a == 0.0 && b == 0.0 && c == 0.0)
        throw AllZeroCoefficients("solve_quadratic: all coefficients zero");
    if (a == 0.0) {
        if (b == 0.0) return {};  // c != 0: no roots
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    const double scale = std::max(std::abs(b * b), std::abs(4.0 * a * c));
    if (std::abs(disc) <= 1e-12 * scale) return {-b / (2.0 * a)};
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double r1 = q / a;
    double r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace wl
