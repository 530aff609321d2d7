// Frequency-band resonance: the two-harmonic waveform family, the
// third-harmonic mix law rho(Omega), its validity windows, and numeric
// location of the resonant frequency window.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "workloop/errors.hpp"
#include "workloop/loop.hpp"
#include "workloop/numerics.hpp"
#include "workloop/plants.hpp"
#include "workloop/resonance.hpp"
#include "workloop/signals.hpp"

namespace wl {

enum class BandLimit { ElasticBoundViolation, RhoMonotonicityWindow };

struct FreqBandResult {
    double omega_e = 0.0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    double rho_at_lo = 0.0;
    double rho_at_hi = 0.0;
    BandLimit limit_lo = BandLimit::ElasticBoundViolation;
    BandLimit limit_hi = BandLimit::ElasticBoundViolation;
};

struct RhoWindows {
    double extrema_lo = 0.0, extrema_hi = 0.0;      // global extrema are +-xhat at t = 0, T/2
    double monotonic_lo = 0.0, monotonic_hi = 0.0;  // two monotonic half-cycles
};

// rho windows for the two-harmonic waveform; the monotonic window is closed
// conservatively (grazing reversal counts as outside)
inline constexpr double kRhoMonotonicLo = -0.125;
inline constexpr double kRhoMonotonicHi = 0.25;

/// Frequency at which a simple-harmonic output of amplitude xhat is energy
/// resonant in the Duffing oscillator: omega_e = sqrt(alpha + beta xhat^2).
inline double resonant_frequency(double alpha, double beta, double xhat) {
    const double we2 = alpha + beta * xhat * xhat;
    if (!(we2 > 0.0))
        throw NonPositiveStiffness("resonant_frequency: alpha + beta xhat^2 must be > 0");
    return std::sqrt(we2);
}

/// Third-harmonic mix making the peak-load equality hold at drive frequency
/// Omega: rho = (1/8)(omega_e^2 / Omega^2 - 1).
inline double rho_of_omega(double omega_e, double omega) {
    if (!(omega > 0.0)) throw Error("rho_of_omega: omega must be > 0");
    return 0.125 * (omega_e * omega_e / (omega * omega) - 1.0);
}

/// x(t) = xhat (1 - rho) cos(W t) + xhat rho cos(3 W t).
inline PeriodicSignal waveform(double xhat, double omega, double rho) {
    return PeriodicSignal(omega, {0.0, xhat * (1.0 - rho), 0.0, xhat * rho},
                          {0.0, 0.0, 0.0, 0.0});
}

namespace detail {

inline bool extrema_at_endpoints(double xhat, double rho, int samples) {
    const PeriodicSignal sig = waveform(xhat, 1.0, rho);
    const double T = sig.period();
    const double tol = 1e-9 * xhat;
    for (int i = 0; i < samples; ++i) {
        const double x = sig.eval(T * i / samples, 0);
        if (x > xhat + tol || x < -xhat - tol) return false;
    }
    return true;
}

inline bool is_monotonic(double xhat, double rho, int samples) {
    try {
        return decompose_half_cycles(waveform(xhat, 1.0, rho), samples).monotonic;
    } catch (const DegenerateSignal&) {
        return false;
    }
}

// Bisect the edge of a boolean property of rho; inside/outside must bracket.
inline double bisect_edge(const std::function<bool(double)>& inside,
                          double rho_in, double rho_out, double tol = 1e-5) {
    while (std::abs(rho_out - rho_in) > tol) {
        const double mid = 0.5 * (rho_in + rho_out);
        (inside(mid) ? rho_in : rho_out) = mid;
    }
    return 0.5 * (rho_in + rho_out);
}

}  // namespace detail

/// Numerically locate the rho-intervals over which the waveform keeps its
/// global extrema at +-xhat (t = 0, T/2) and stays two-monotonic-half-cycle.
inline RhoWindows rho_validity_windows(double xhat, int samples = 2048) {
    if (samples < 1024) throw Error("rho_validity_windows: samples >= 1024 required");
    RhoWindows w;
    auto ext = [&](double rho) { return detail::extrema_at_endpoints(xhat, rho, samples); };
    auto mono = [&](double rho) { return detail::is_monotonic(xhat, rho, samples); };
    w.extrema_lo = detail::bisect_edge(ext, -0.12, -0.5);
    w.extrema_hi = detail::bisect_edge(ext, 0.9, 1.5);
    w.monotonic_lo = detail::bisect_edge(mono, -0.12, -0.5);
    w.monotonic_hi = detail::bisect_edge(mono, 0.2, 0.5);
    return w;
}

/// Elastic-bound margin of the rho(Omega) waveform for the Duffing plant at
/// drive frequency Omega. Positive inside the resonant band.
inline double band_margin(double alpha, double beta, double delta, double xhat,
                          double omega, int grid_size = 513) {
    const double omega_e = resonant_frequency(alpha, beta, xhat);
    const double rho = rho_of_omega(omega_e, omega);
    if (rho < kRhoMonotonicLo || rho > kRhoMonotonicHi)
        throw OutsideRhoWindow("band_margin: rho(omega) outside the monotonic window");
    const PeriodicSignal sig = waveform(xhat, omega, rho);
    const PlantModel plant{DuffingInelasticPlant{delta}};
    auto load = [&](double t) { return inelastic_load(plant, sig, t); };
    const WorkLoop loop = build_loop(sig, load, grid_size, BranchKind::InelasticLoad);
    return check_bounds(loop, ElasticityProfile::duffing(alpha, beta)).margin;
}

/// Locate the frequency window of band resonance around omega_e by bisecting
/// the margin sign change on each side. If the rho window edge arrives
/// before a sign change, that edge is the reported boundary.
inline FreqBandResult find_band(double alpha, double beta, double delta,
                                double xhat, double omega_tol_rel = 1e-6) {
    if (!(delta > 0.0)) throw Error("find_band: delta > 0 required");
    const double omega_e = resonant_frequency(alpha, beta, xhat);
    if (band_margin(alpha, beta, delta, xhat, omega_e) <= 0.0)
        throw NoBand("find_band: margin at omega_e is not positive");

    // rho window translated to omega: rho = 0.25 at omega_e/sqrt(3);
    // rho -> -0.125 only as omega -> infinity
    const double omega_rho_lo = omega_e / std::sqrt(3.0) * (1.0 + 1e-6);
    const double step = 0.01 * omega_e;
    const double tol = omega_tol_rel * omega_e;

    FreqBandResult out;
    out.omega_e = omega_e;

    auto margin = [&](double om) { return band_margin(alpha, beta, delta, xhat, om); };

    // lower side
    {
        double in = omega_e, outw = omega_e;
        bool hit_window = false;
        while (true) {
            const double next = outw - step;
            if (next <= omega_rho_lo) { outw = omega_rho_lo; hit_window = true; break; }
            if (margin(next) <= 0.0) { in = next + step; outw = next; break; }
            outw = next;
        }
        if (hit_window && margin(outw) > 0.0) {
            out.omega_lo = outw;
            out.limit_lo = BandLimit::RhoMonotonicityWindow;
        } else {
            if (hit_window) in = outw + step;
            while (in - outw > tol) {
                const double mid = 0.5 * (in + outw);
                (margin(mid) > 0.0 ? in : outw) = mid;
            }
            out.omega_lo = 0.5 * (in + outw);
            out.limit_lo = BandLimit::ElasticBoundViolation;
        }
        out.rho_at_lo = rho_of_omega(omega_e, out.omega_lo);
    }
    // upper side (rho approaches -0.125 asymptotically, never leaves the window)
    {
        double in = omega_e, outw = omega_e;
        while (true) {
            outw += step;
            if (margin(outw) <= 0.0) { in = outw - step; break; }
            if (outw > 100.0 * omega_e)
                throw NoBand("find_band: no upper boundary found below 100 omega_e");
        }
        while (outw - in > tol) {
            const double mid = 0.5 * (in + outw);
            (margin(mid) > 0.0 ? in : outw) = mid;
        }
        out.omega_hi = 0.5 * (in + outw);
        out.limit_hi = BandLimit::ElasticBoundViolation;
        out.rho_at_hi = rho_of_omega(omega_e, out.omega_hi);
    }
    return out;
}

}  // namespace wl
