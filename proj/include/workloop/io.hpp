// CSV / report / SVG emission and config-record parsing for the CLI.
// All numeric text is locale-free; identical inputs give byte-identical
// output files.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "workloop/errors.hpp"
#include "workloop/loop.hpp"
#include "workloop/plants.hpp"
#include "workloop/signals.hpp"

namespace wl::io {

struct IoError : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

using json = nlohmann::json;

/// 15 significant digits, '.' decimal separator.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

// ---- CSV ----

inline std::string loop_csv(const WorkLoop& loop) {
    std::string s = "x,f_upper,f_lower\n";
    for (std::size_t i = 0; i < loop.x_grid.size(); ++i)
        s += fmt(loop.x_grid[i]) + "," + fmt(loop.upper[i]) + "," + fmt(loop.lower[i]) + "\n";
    return s;
}

inline std::string time_series_csv(const WorkLoop& loop) {
    std::string s = "t,x,load\n";
    for (const auto& p : loop.source)
        s += fmt(p.t) + "," + fmt(p.x) + "," + fmt(p.load) + "\n";
    return s;
}

/// Parse `x,f_upper,f_lower` CSV text into branch tables.
inline void parse_loop_csv(const std::string& text, std::vector<double>& x,
                           std::vector<double>& fu, std::vector<double>& fl) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,f_upper,f_lower", 0) != 0)
        throw ConfigInvalid("loop CSV: missing x,f_upper,f_lower header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b, c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw ConfigInvalid("loop CSV: bad row: " + line);
        x.push_back(a);
        fu.push_back(b);
        fl.push_back(c);
    }
}

// ---- config records ----

inline double require_num(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigInvalid("missing numeric field: " + key);
    return j[key].get<double>();
}

inline PeriodicSignal parse_signal(const json& j) {
    if (!j.is_object()) throw ConfigInvalid("signal: expected an object");
    const double omega = require_num(j, "omega");
    auto vec = [&](const char* key) {
        std::vector<double> v;
        if (j.contains(key)) {
            if (!j[key].is_array()) throw ConfigInvalid(std::string("signal.") + key + ": expected array");
            for (const auto& e : j[key]) v.push_back(e.get<double>());
        }
        return v;
    };
    try {
        return PeriodicSignal(omega, vec("cos"), vec("sin"));
    } catch (const Error& e) {
        throw ConfigInvalid(std::string("signal: ") + e.what());
    }
}

inline json signal_record(const PeriodicSignal& s) {
    return {{"omega", s.omega()}, {"cos", s.cos_coeffs()}, {"sin", s.sin_coeffs()}};
}

inline PlantModel parse_plant(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigInvalid("plant: expected an object with 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "linear")
            return PlantModel(LinearPlant{require_num(j, "zeta"), require_num(j, "omega0")});
        if (kind == "duffing")
            return PlantModel(DuffingInelasticPlant{require_num(j, "delta")});
        if (kind == "tabulated") return PlantModel(TabulatedPlant{});
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const Error& e) {
        throw ConfigInvalid(std::string("plant: ") + e.what());
    }
    throw ConfigInvalid("plant.kind: unknown kind '" + kind + "'");
}

inline ElasticityProfile parse_elasticity(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigInvalid("elasticity: expected an object with 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "polynomial") {
            std::vector<double> c;
            for (const auto& e : j.at("coeffs")) c.push_back(e.get<double>());
            return ElasticityProfile::polynomial(std::move(c));
        }
        if (kind == "tabulated") {
            std::vector<double> x, fs;
            for (const auto& e : j.at("table").at("x")) x.push_back(e.get<double>());
            for (const auto& e : j.at("table").at("fs")) fs.push_back(e.get<double>());
            return ElasticityProfile::tabulated(std::move(x), std::move(fs));
        }
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("elasticity: ") + e.what());
    } catch (const Error& e) {
        throw ConfigInvalid(std::string("elasticity: ") + e.what());
    }
    throw ConfigInvalid("elasticity.kind: unknown kind '" + kind + "'");
}

// ---- flat key-value report ----

class Report {
  public:
    void add(const std::string& key, double v) { lines_ += key + " = " + fmt(v) + "\n"; }
    void add(const std::string& key, bool v) { lines_ += key + " = " + (v ? "true" : "false") + "\n"; }
    void add(const std::string& key, const std::string& v) { lines_ += key + " = " + v + "\n"; }
    const std::string& text() const { return lines_; }

  private:
    std::string lines_;
};

// ---- SVG ----

struct SvgCurve {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#000000";
    std::string label;
    bool dashed = false;
};

/// Hand-emitted standalone SVG: fixed 800x600 viewport, linear axes
/// autoscaled to the data with 5% margins, polyline per curve, legend.
inline std::string render_svg(const std::vector<SvgCurve>& curves) {
    if (curves.empty()) throw Error("render_svg: no curves");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            xmin = std::min(xmin, c.x[i]); xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, c.y[i]); ymax = std::max(ymax, c.y[i]);
        }
    if (xmax <= xmin) { xmax = xmin + 1.0; }
    if (ymax <= ymin) { ymax = ymin + 1.0; }
    const double mx = 0.05 * (xmax - xmin), my = 0.05 * (ymax - ymin);
    xmin -= mx; xmax += mx; ymin -= my; ymax += my;

    const double W = 800, H = 600, pad = 60;
    auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
    auto py = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };
    auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.6g", v);
        return std::string(b);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
    s += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    // axes
    s += "<line x1=\"" + num(pad) + "\" y1=\"" + num(H - pad) + "\" x2=\"" + num(W - pad) +
         "\" y2=\"" + num(H - pad) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + num(pad) + "\" y1=\"" + num(pad) + "\" x2=\"" + num(pad) +
         "\" y2=\"" + num(H - pad) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    // zero lines when in range
    if (ymin < 0.0 && ymax > 0.0)
        s += "<line x1=\"" + num(pad) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(W - pad) +
             "\" y2=\"" + num(py(0)) + "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    if (xmin < 0.0 && xmax > 0.0)
        s += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(pad) + "\" x2=\"" + num(px(0)) +
             "\" y2=\"" + num(H - pad) + "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    // axis range labels
    s += "<text x=\"" + num(pad) + "\" y=\"" + num(H - pad + 18) +
         "\" font-size=\"11\" fill=\"#333333\">x = " + num(xmin) + "</text>\n";
    s += "<text x=\"" + num(W - pad - 80) + "\" y=\"" + num(H - pad + 18) +
         "\" font-size=\"11\" fill=\"#333333\">x = " + num(xmax) + "</text>\n";
    s += "<text x=\"" + num(6) + "\" y=\"" + num(H - pad) +
         "\" font-size=\"11\" fill=\"#333333\">" + num(ymin) + "</text>\n";
    s += "<text x=\"" + num(6) + "\" y=\"" + num(pad) +
         "\" font-size=\"11\" fill=\"#333333\">" + num(ymax) + "</text>\n";

    for (const auto& c : curves) {
        s += "<polyline fill=\"none\" stroke=\"" + c.color + "\" stroke-width=\"1.5\"";
        if (c.dashed) s += " stroke-dasharray=\"6 4\"";
        s += " points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (i) s += " ";
            s += num(px(c.x[i])) + "," + num(py(c.y[i]));
        }
        s += "\"/>\n";
    }
    // legend
    double ly = pad + 8;
    for (const auto& c : curves) {
        if (c.label.empty()) continue;
        s += "<line x1=\"" + num(W - pad - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" +
             num(W - pad - 120) + "\" y2=\"" + num(ly) + "\" stroke=\"" + c.color +
             "\" stroke-width=\"2\"" + (c.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        s += "<text x=\"" + num(W - pad - 112) + "\" y=\"" + num(ly + 4) +
             "\" font-size=\"12\" fill=\"#333333\">" + c.label + "</text>\n";
        ly += 18;
    }
    s += "</svg>\n";
    return s;
}

/// Convenience: a work loop as two curves sharing a color (lower dashed).
inline void add_loop_curves(std::vector<SvgCurve>& curves, const WorkLoop& loop,
                            const std::string& color, const std::string& label) {
    curves.push_back({loop.x_grid, loop.upper, color, label, false});
    curves.push_back({loop.x_grid, loop.lower, color, "", true});
}

}  // namespace wl::io
