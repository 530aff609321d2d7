// workloop: command-line front end.
//
//   workloop <command> <config-file> [--dotted.key value ...]
//
// Commands: analyze, duffing-opt, one-way, freq-band, simulate.
// Overrides patch the config by dotted JSON path and take precedence.
// Exit codes: 0 success, 2 invalid config, 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "workloop/duffing_opt.hpp"
#include "workloop/freqband.hpp"
#include "workloop/io.hpp"
#include "workloop/loop.hpp"
#include "workloop/plants.hpp"
#include "workloop/resonance.hpp"
#include "workloop/signals.hpp"

using json = nlohmann::json;
namespace io = wl::io;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

const char kUsage[] =
    "usage: workloop <analyze|duffing-opt|one-way|freq-band|simulate> <config.json>"
    " [--key value ...]\n";

double num(const json& j, const std::string& key) { return io::require_num(j, key); }

double num_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string str_or(const json& j, const std::string& key, const std::string& fallback) {
    return j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

struct Sweep {
    double lo, hi;
    int steps;
};

Sweep parse_sweep(const json& cfg, double def_lo, double def_hi, int def_steps) {
    Sweep s{def_lo, def_hi, def_steps};
    if (cfg.contains("sweep")) {
        const json& j = cfg["sweep"];
        s.lo = num_or(j, "lo", def_lo);
        s.hi = num_or(j, "hi", def_hi);
        s.steps = static_cast<int>(num_or(j, "steps", def_steps));
    }
    if (s.steps < 2) throw io::ConfigInvalid("sweep.steps must be >= 2");
    return s;
}

void write_outputs(const json& cfg, const std::string& csv,
                   const std::string& svg) {
    if (cfg.contains("output")) {
        const json& out = cfg["output"];
        if (out.contains("csv") && !csv.empty())
            io::write_file(out["csv"].get<std::string>(), csv);
        if (out.contains("svg") && !svg.empty())
            io::write_file(out["svg"].get<std::string>(), svg);
    }
}

// analyze: loop CSV + power metrics + resonance report for a configured
// plant / elasticity / signal triple.
int cmd_analyze(const json& cfg) {
    const auto signal = io::parse_signal(cfg.at("signal"));
    const auto plant = io::parse_plant(cfg.at("plant"));
    const auto profile = io::parse_elasticity(cfg.at("elasticity"));
    const int grid = static_cast<int>(num_or(cfg.value("numeric", json::object()), "grid_size", 513));
    const int quad = static_cast<int>(num_or(cfg.value("numeric", json::object()), "quad_points", 4096));

    auto g_load = [&](double t) { return wl::inelastic_load(plant, signal, t); };
    auto f_load = [&](double t) { return wl::total_load(plant, profile, signal, t); };

    const wl::WorkLoop g_loop = wl::build_loop(signal, g_load, grid, wl::BranchKind::InelasticLoad);
    const wl::WorkLoop f_loop = wl::build_loop(signal, f_load, grid, wl::BranchKind::TotalLoad);
    const wl::PowerMetrics pm = wl::power_metrics(signal, f_load, quad);
    const wl::ResonanceReport rr = wl::check_bounds(g_loop, profile);
    const wl::TimeDomainCheck td = wl::check_time_domain(signal, f_load, quad);

    io::Report rep;
    rep.add("p_net", pm.p_net);
    rep.add("p_abs", pm.p_abs);
    rep.add("p_pos", pm.p_pos);
    rep.add("loop_area", wl::loop_area(f_loop));
    rep.add("resonant", rr.is_resonant);
    rep.add("margin", rr.margin);
    rep.add("violation_x", rr.violation_x);
    rep.add("time_domain_resonant", td.is_resonant);
    rep.add("worst_power", td.worst_power);
    std::cout << rep.text();

    std::vector<io::SvgCurve> curves;
    io::add_loop_curves(curves, f_loop, "#1f77b4", "total load");
    io::add_loop_curves(curves, g_loop, "#7f7f7f", "inelastic load");
    write_outputs(cfg, io::loop_csv(f_loop), io::render_svg(curves));
    return 0;
}

// duffing-opt: beta_star sweep of the energy-resonant family, CSV
// beta_star,alpha,beta,valid,margin plus family-over-loop SVG.
int cmd_duffing_opt(const json& cfg) {
    const json& d = cfg.at("duffing");
    const double delta = num(d, "delta"), omega = num(d, "omega"), xhat = num(d, "xhat");
    const double crit = wl::beta_star_crit(delta, omega, xhat);
    const Sweep sw = parse_sweep(cfg, -1.5 * crit, 1.5 * crit, 25);

    const auto signal = wl::PeriodicSignal::simple_harmonic(xhat, omega);
    const wl::PlantModel plant{wl::DuffingInelasticPlant{delta}};
    auto g_load = [&](double t) { return wl::inelastic_load(plant, signal, t); };
    const wl::WorkLoop g_loop = wl::build_loop(signal, g_load, 513, wl::BranchKind::InelasticLoad);

    std::string csv = "beta_star,alpha,beta,valid,margin\n";
    for (int i = 0; i < sw.steps; ++i) {
        const double bs = sw.lo + (sw.hi - sw.lo) * i / (sw.steps - 1);
        const auto design = wl::optimal_family(delta, omega, xhat, bs);
        const auto rr = wl::check_bounds(g_loop, design.elasticity());
        csv += io::fmt(bs) + "," + io::fmt(design.alpha()) + "," + io::fmt(design.beta()) +
               "," + (rr.is_resonant ? "1" : "0") + "," + io::fmt(rr.margin) + "\n";
    }

    io::Report rep;
    rep.add("beta_star_crit", crit);
    std::cout << rep.text();

    std::vector<io::SvgCurve> curves;
    io::add_loop_curves(curves, g_loop, "#7f7f7f", "inelastic loop");
    const char* colors[] = {"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd"};
    const double members[] = {-crit, -0.5 * crit, 0.0, 0.5 * crit, crit};
    for (int m = 0; m < 5; ++m) {
        const auto design = wl::optimal_family(delta, omega, xhat, members[m]);
        io::SvgCurve c;
        c.color = colors[m];
        c.label = "-Fs, beta* = " + io::fmt(members[m]).substr(0, 8);
        const auto prof = design.elasticity();
        for (int i = 0; i < 201; ++i) {
            const double x = -xhat + 2.0 * xhat * i / 200;
            c.x.push_back(x);
            c.y.push_back(-prof.eval(x));
        }
        curves.push_back(std::move(c));
    }
    write_outputs(cfg, csv, io::render_svg(curves));
    return 0;
}

// one-way: extremal one-way-drive elasticity, profile CSV + duty cycle.
int cmd_one_way(const json& cfg) {
    const auto signal = io::parse_signal(cfg.at("signal"));
    const auto plant = io::parse_plant(cfg.at("plant"));
    const std::string side_s = str_or(cfg, "side", "upper");
    if (side_s != "upper" && side_s != "lower")
        throw io::ConfigInvalid("side: expected 'upper' or 'lower'");
    const auto side = side_s == "upper" ? wl::DriveSide::Upper : wl::DriveSide::Lower;

    auto g_load = [&](double t) { return wl::inelastic_load(plant, signal, t); };
    const wl::WorkLoop g_loop = wl::build_loop(signal, g_load, 513, wl::BranchKind::InelasticLoad);
    const wl::OneWayDrive ow = wl::one_way_drive(g_loop, side);

    std::string csv = "x,fs\n";
    const auto* tab = ow.profile.as_tabulated();
    for (std::size_t i = 0; i < tab->x.size(); ++i)
        csv += io::fmt(tab->x[i]) + "," + io::fmt(tab->fs[i]) + "\n";

    io::Report rep;
    rep.add("duty_cycle", ow.duty_cycle);
    rep.add("total_loop_area", wl::loop_area(ow.total_loop));
    std::cout << rep.text();

    std::vector<io::SvgCurve> curves;
    io::add_loop_curves(curves, g_loop, "#7f7f7f", "inelastic loop");
    io::add_loop_curves(curves, ow.total_loop, "#d62728", "one-way total load");
    curves.push_back({tab->x, [&] {
                          std::vector<double> neg(tab->fs.size());
                          for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -tab->fs[i];
                          return neg;
                      }(),
                      "#2ca02c", "-Fs", false});
    write_outputs(cfg, csv, io::render_svg(curves));
    return 0;
}

// freq-band: omega sweep CSV + band result + loops at the boundaries.
int cmd_freq_band(const json& cfg) {
    const json& f = cfg.at("freqband");
    const double alpha = num(f, "alpha"), beta = num(f, "beta");
    const double delta = num(f, "delta"), xhat = num(f, "xhat");
    const double omega_e = wl::resonant_frequency(alpha, beta, xhat);
    const wl::FreqBandResult band = wl::find_band(alpha, beta, delta, xhat);
    const Sweep sw = parse_sweep(cfg, 0.6 * omega_e, 1.3 * omega_e, 29);

    std::string csv = "omega,rho,margin,resonant\n";
    for (int i = 0; i < sw.steps; ++i) {
        const double om = sw.lo + (sw.hi - sw.lo) * i / (sw.steps - 1);
        const double rho = wl::rho_of_omega(omega_e, om);
        double margin = 0.0;
        bool resonant = false, have = true;
        try {
            margin = wl::band_margin(alpha, beta, delta, xhat, om);
            resonant = margin >= 0.0;
        } catch (const wl::OutsideRhoWindow&) {
            have = false;
        }
        csv += io::fmt(om) + "," + io::fmt(rho) + "," + (have ? io::fmt(margin) : "nan") +
               "," + (resonant ? "1" : "0") + "\n";
    }

    io::Report rep;
    rep.add("omega_e", band.omega_e);
    rep.add("omega_lo", band.omega_lo);
    rep.add("omega_hi", band.omega_hi);
    rep.add("rho_at_lo", band.rho_at_lo);
    rep.add("rho_at_hi", band.rho_at_hi);
    rep.add("limit_lo", std::string(band.limit_lo == wl::BandLimit::ElasticBoundViolation
                                        ? "elastic-bound-violation"
                                        : "rho-monotonicity-window"));
    rep.add("limit_hi", std::string(band.limit_hi == wl::BandLimit::ElasticBoundViolation
                                        ? "elastic-bound-violation"
                                        : "rho-monotonicity-window"));
    std::cout << rep.text();

    std::vector<io::SvgCurve> curves;
    const wl::PlantModel plant{wl::DuffingInelasticPlant{delta}};
    const char* colors[] = {"#d62728", "#2ca02c", "#1f77b4"};
    const double omegas[] = {band.omega_lo * 1.0001, omega_e, band.omega_hi * 0.9999};
    const char* labels[] = {"omega_lo", "omega_e", "omega_hi"};
    for (int k = 0; k < 3; ++k) {
        const double rho = wl::rho_of_omega(omega_e, omegas[k]);
        const auto sig = wl::waveform(xhat, omegas[k], rho);
        auto g_load = [&](double t) { return wl::inelastic_load(plant, sig, t); };
        const auto loop = wl::build_loop(sig, g_load, 257, wl::BranchKind::InelasticLoad);
        io::add_loop_curves(curves, loop, colors[k], labels[k]);
    }
    {
        io::SvgCurve c;
        c.color = "#000000";
        c.label = "-Fs";
        c.dashed = true;
        const auto prof = wl::ElasticityProfile::duffing(alpha, beta);
        for (int i = 0; i < 201; ++i) {
            const double x = -xhat + 2.0 * xhat * i / 200;
            c.x.push_back(x);
            c.y.push_back(-prof.eval(x));
        }
        curves.push_back(std::move(c));
    }
    write_outputs(cfg, csv, io::render_svg(curves));
    return 0;
}

// simulate: forward-integration deviation report for a family member.
int cmd_simulate(const json& cfg) {
    const json& d = cfg.at("duffing");
    const double delta = num(d, "delta"), omega = num(d, "omega"), xhat = num(d, "xhat");
    const double beta_star = num_or(d, "beta_star", 0.0);
    const int periods = static_cast<int>(num_or(cfg, "periods", 3));

    const auto design = wl::optimal_family(delta, omega, xhat, beta_star);
    const auto signal = wl::PeriodicSignal::simple_harmonic(xhat, omega);
    const double dev = wl::forward_verify(design, signal, periods);

    io::Report rep;
    rep.add("beta_star", beta_star);
    rep.add("alpha", design.alpha());
    rep.add("beta", design.beta());
    rep.add("periods", static_cast<double>(periods));
    rep.add("max_deviation", dev);
    std::cout << rep.text();
    write_outputs(cfg, "", "");
    return 0;
}

json* navigate(json& root, const std::string& dotted) {
    json* cur = &root;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot - pos);
        if (key.empty()) return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos) return cur;
        pos = dot + 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << kUsage;
        return kExitConfig;
    }
    const std::string command = argv[1];
    const std::string config_path = argv[2];

    json cfg;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: io: cannot read config: " << config_path << "\n";
            return kExitIo;
        }
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            std::cerr << "error: config: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    // --dotted.key value overrides, applied on top of the file
    for (int i = 3; i + 1 < argc; i += 2) {
        std::string key = argv[i];
        if (key.rfind("--", 0) != 0) {
            std::cerr << "error: config: expected --key value, got: " << key << "\n";
            return kExitConfig;
        }
        key = key.substr(2);
        json* slot = navigate(cfg, key);
        if (!slot) {
            std::cerr << "error: config: bad override key: " << key << "\n";
            return kExitConfig;
        }
        const std::string val = argv[i + 1];
        try {
            *slot = json::parse(val);
        } catch (const json::exception&) {
            *slot = val;  // plain string value
        }
    }
    if (argc >= 4 && (argc - 3) % 2 != 0) {
        std::cerr << "error: config: dangling override: " << argv[argc - 1] << "\n";
        return kExitConfig;
    }

    try {
        if (command == "analyze") return cmd_analyze(cfg);
        if (command == "duffing-opt") return cmd_duffing_opt(cfg);
        if (command == "one-way") return cmd_one_way(cfg);
        if (command == "freq-band") return cmd_freq_band(cfg);
        if (command == "simulate") return cmd_simulate(cfg);
        std::cerr << kUsage;
        return kExitConfig;
    } catch (const io::ConfigInvalid& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const io::IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wl::Error& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return kExitNumerical;
    }
}
