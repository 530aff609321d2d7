// Structural optimization of the Duffing oscillator: the constrained
// energy-resonant stiffness family, its critical quartic, and the analytic
// validity bound on the normalized cubic stiffness.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "workloop/errors.hpp"
#include "workloop/numerics.hpp"
#include "workloop/plants.hpp"
#include "workloop/signals.hpp"

namespace wl {

/// One member of the energy-resonant Duffing stiffness family for a
/// simple-harmonic output (delta, Omega, xhat): Fs(x) = alpha x + beta x^3
/// with alpha = Omega^2 (1 - beta_star xhat^2), beta = beta_star Omega^2.
/// Every member matches the peak load: Fs(xhat) = Omega^2 xhat.
struct DuffingDesign {
    double delta;
    double omega;
    double xhat;
    double beta_star;

    double alpha() const { return omega * omega * (1.0 - beta_star * xhat * xhat); }
    double beta() const { return beta_star * omega * omega; }
    ElasticityProfile elasticity() const {
        return ElasticityProfile::duffing(alpha(), beta());
    }
};

/// Family member at a given free parameter beta_star. No validity check.
inline DuffingDesign optimal_family(double delta, double omega, double xhat,
                                    double beta_star) {
    if (!(omega > 0.0) || !(xhat > 0.0))
        throw Error("optimal_family: require omega > 0, xhat > 0");
    return {delta, omega, xhat, beta_star};
}

/// Bound on |beta_star| for the family to be energy resonant:
/// beta_star_crit = 2 delta / (xhat^2 omega).
inline double beta_star_crit(double delta, double omega, double xhat) {
    if (!(omega > 0.0) || !(xhat > 0.0) || delta < 0.0)
        throw Error("beta_star_crit: require omega > 0, xhat > 0, delta >= 0");
    return 2.0 * delta / (xhat * xhat * omega);
}

/// Interior critical displacements where a bound touches the elasticity:
/// real roots of x^4 - x^2 xhat^2 + delta^2/(beta_star^2 omega^2) = 0 with
/// x^2 in (0, xhat^2). Empty exactly when |beta_star| < beta_star_crit.
inline std::vector<double> critical_quartic_roots(const DuffingDesign& d) {
    if (d.beta_star == 0.0)
        throw ZeroBetaStar("critical_quartic_roots: beta_star must be nonzero");
    const double c = d.delta * d.delta / (d.beta_star * d.beta_star * d.omega * d.omega);
    std::vector<double> roots;
    for (double x2 : solve_quadratic(1.0, -d.xhat * d.xhat, c)) {
        if (x2 <= 0.0 || x2 >= d.xhat * d.xhat * (1.0 + 1e-12)) continue;
        const double x = std::sqrt(std::min(x2, d.xhat * d.xhat));
        roots.push_back(-x);
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct ValidityReport {
    bool valid = false;
    double margin = 0.0;  // beta_star_crit - |beta_star|
};

inline ValidityReport is_valid(const DuffingDesign& d) {
    const double crit = beta_star_crit(d.delta, d.omega, d.xhat);
    const double margin = crit - std::abs(d.beta_star);
    return {margin >= 0.0, margin};
}

/// Inverse dynamics: the forcing that produces the signal through the full
/// Duffing equation xddot + delta xdot + alpha x + beta x^3 = F(t).
inline std::function<double(double)> required_forcing(const DuffingDesign& d,
                                                      const PeriodicSignal& signal) {
    const double delta = d.delta, alpha = d.alpha(), beta = d.beta();
    return [delta, alpha, beta, signal](double t) {
        const double x = signal.eval(t, 0);
        return signal.eval(t, 2) + delta * signal.eval(t, 1) + alpha * x +
               beta * x * x * x;
    };
}

/// Forward-integrate the forced Duffing equation under the required forcing
/// and report the worst trajectory deviation from the target signal.
/// Diagnostic only: near the validity boundary the forced system can be
/// unstable or chaotic, so no threshold is asserted here.
inline double forward_verify(const DuffingDesign& d, const PeriodicSignal& signal,
                             int periods, int steps_per_period = 2000) {
    if (periods < 1) throw Error("forward_verify: periods >= 1 required");
    if (steps_per_period < 16)
        throw Error("forward_verify: steps_per_period >= 16 required");
    auto forcing = required_forcing(d, signal);
    const double delta = d.delta, alpha = d.alpha(), beta = d.beta();
    auto accel = [&](double t, double x, double v) {
        return forcing(t) - delta * v - alpha * x - beta * x * x * x;
    };
    const double T = signal.period();
    const double h = T / steps_per_period;
    double t = 0.0, x = signal.eval(0.0, 0), v = signal.eval(0.0, 1);
    double worst = 0.0;
    const long nsteps = static_cast<long>(periods) * steps_per_period;
    for (long i = 0; i < nsteps; ++i) {
        // classical RK4 on (x, v)
        const double k1x = v, k1v = accel(t, x, v);
        const double k2x = v + 0.5 * h * k1v,
                     k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
        const double k3x = v + 0.5 * h * k2v,
                     k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
        const double k4x = v + h * k3v,
                     k4v = accel(t + h, x + h * k3x, v + h * k3v);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t += h;
        worst = std::max(worst, std::abs(x - signal.eval(t, 0)));
    }
    return worst;
}

}  // namespace wl
