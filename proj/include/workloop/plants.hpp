// Inelastic plant dynamics D(.), elasticity profiles Fs(x), and closed-form
// work-loop branches for the simple-harmonic cases.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <variant>
#include <vector>

#include "workloop/errors.hpp"
#include "workloop/signals.hpp"

namespace wl {

/// Linear plant: inelastic part xddot + 2 zeta w0 xdot. Its natural
/// stiffness w0^2 x belongs to the elastic term when splitting loads.
struct LinearPlant {
    double zeta;    // damping ratio, >= 0
    double omega0;  // natural frequency, > 0
};

/// Duffing inelastic part: xddot + delta xdot.
struct DuffingInelasticPlant {
    double delta;  // damping coefficient, > 0
};

/// Placeholder for loops imported from external analyses; carries no
/// time-domain dynamics.
struct TabulatedPlant {};

class PlantModel {
  public:
    PlantModel(LinearPlant p) : v_(p) {
        if (p.zeta < 0.0 || !(p.omega0 > 0.0))
            throw Error("LinearPlant: require zeta >= 0, omega0 > 0");
    }
    PlantModel(DuffingInelasticPlant p) : v_(p) {
        if (!(p.delta > 0.0)) throw Error("DuffingInelasticPlant: require delta > 0");
    }
    PlantModel(TabulatedPlant p) : v_(p) {}

    bool is_tabulated() const { return std::holds_alternative<TabulatedPlant>(v_); }
    const LinearPlant* as_linear() const { return std::get_if<LinearPlant>(&v_); }
    const DuffingInelasticPlant* as_duffing() const {
        return std::get_if<DuffingInelasticPlant>(&v_);
    }

  private:
    std::variant<LinearPlant, DuffingInelasticPlant, TabulatedPlant> v_;
};

/// Elasticity Fs(x): odd-style polynomial (coeffs for powers 1..n) or a
/// piecewise-linear table over a strictly increasing x-grid.
class ElasticityProfile {
  public:
    struct Polynomial {
        std::vector<double> coeffs;  // coeffs[k] multiplies x^(k+1)
    };
    struct Tabulated {
        std::vector<double> x;
        std::vector<double> fs;
    };

    ElasticityProfile(Polynomial p) : v_(std::move(p)) {}
    ElasticityProfile(Tabulated t) : v_(std::move(t)) {
        const auto& tab = std::get<Tabulated>(v_);
        if (tab.x.size() != tab.fs.size() || tab.x.size() < 2)
            throw Error("Tabulated elasticity: need >= 2 matching samples");
        if (!std::is_sorted(tab.x.begin(), tab.x.end()) ||
            std::adjacent_find(tab.x.begin(), tab.x.end()) != tab.x.end())
            throw Error("Tabulated elasticity: x-grid must be strictly increasing");
    }

    static ElasticityProfile polynomial(std::vector<double> coeffs_from_power1) {
        return ElasticityProfile(Polynomial{std::move(coeffs_from_power1)});
    }
    static ElasticityProfile linear(double stiffness) {
        return ElasticityProfile(Polynomial{{stiffness}});
    }
    static ElasticityProfile duffing(double alpha, double beta) {
        return ElasticityProfile(Polynomial{{alpha, 0.0, beta}});
    }
    static ElasticityProfile tabulated(std::vector<double> x, std::vector<double> fs) {
        return ElasticityProfile(Tabulated{std::move(x), std::move(fs)});
    }

    bool is_tabulated() const { return std::holds_alternative<Tabulated>(v_); }
    const Tabulated* as_tabulated() const { return std::get_if<Tabulated>(&v_); }
    const Polynomial* as_polynomial() const { return std::get_if<Polynomial>(&v_); }

    /// Fs(x). Tabulated profiles reject x outside the grid span.
    double eval(double x) const {
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            // Horner over powers 1..n
            double acc = 0.0;
            for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it)
                acc = acc * x + *it;
            return acc * x;
        }
        const auto& tab = std::get<Tabulated>(v_);
        const double span_tol = 1e-12 * (tab.x.back() - tab.x.front());
        if (x < tab.x.front() - span_tol || x > tab.x.back() + span_tol)
            throw OutOfRange("Tabulated elasticity: x outside grid span");
        x = std::clamp(x, tab.x.front(), tab.x.back());
        auto hi = std::upper_bound(tab.x.begin(), tab.x.end(), x);
        if (hi == tab.x.end()) return tab.fs.back();
        if (hi == tab.x.begin()) return tab.fs.front();
        const std::size_t i = hi - tab.x.begin();
        const double w = (x - tab.x[i - 1]) / (tab.x[i] - tab.x[i - 1]);
        return tab.fs[i - 1] + w * (tab.fs[i] - tab.fs[i - 1]);
    }

  private:
    std::variant<Polynomial, Tabulated> v_;
};

/// Inelastic load G(t) along the signal: xddot + 2 zeta w0 xdot (linear)
/// or xddot + delta xdot (Duffing).
inline double inelastic_load(const PlantModel& plant, const PeriodicSignal& signal,
                             double t) {
    if (const auto* lin = plant.as_linear())
        return signal.eval(t, 2) + 2.0 * lin->zeta * lin->omega0 * signal.eval(t, 1);
    if (const auto* duf = plant.as_duffing())
        return signal.eval(t, 2) + duf->delta * signal.eval(t, 1);
    throw UnsupportedPlant("inelastic_load: tabulated plant has no time-domain evaluator");
}

/// Total load F(t) = G(t) + Fs(x(t)).
inline double total_load(const PlantModel& plant, const ElasticityProfile& profile,
                         const PeriodicSignal& signal, double t) {
    return inelastic_load(plant, signal, t) + profile.eval(signal.eval(t, 0));
}

struct BranchPair {
    std::function<double(double)> upper;  // G+(x), xdot > 0 half-cycle
    std::function<double(double)> lower;  // G-(x), xdot < 0 half-cycle
};

/// Analytic inelastic branches for a pure cosine output:
///   G+-(x) = -W^2 x +- c W sqrt(xhat^2 - x^2),
/// with c = delta (Duffing) or 2 zeta w0 (linear). The -W^2 x term is fixed
/// by the branch closure G+-(+-xhat) = -W^2 (+-xhat) and the identity
/// G+- + w0^2 x = F+- for the linear plant.
inline BranchPair closed_form_branches(const PlantModel& plant,
                                       const PeriodicSignal& signal) {
    if (!signal.is_simple_harmonic())
        throw NotSimpleHarmonic("closed_form_branches: signal must be a single cosine term");
    const double omega = signal.omega();
    const double xhat = signal.cos_coeffs()[1];
    double damping = 0.0;
    if (const auto* lin = plant.as_linear())
        damping = 2.0 * lin->zeta * lin->omega0;
    else if (const auto* duf = plant.as_duffing())
        damping = duf->delta;
    else
        throw UnsupportedPlant("closed_form_branches: tabulated plant unsupported");

    auto branch = [omega, xhat, damping](double x, double sign) {
        const double rad = std::max(0.0, xhat * xhat - x * x);
        return -omega * omega * x + sign * damping * omega * std::sqrt(rad);
    };
    return {[branch](double x) { return branch(x, +1.0); },
            [branch](double x) { return branch(x, -1.0); }};
}

}  // namespace wl
