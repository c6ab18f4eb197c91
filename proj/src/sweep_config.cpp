#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "etsim/polariton.hpp"
#include "etsim/sweep.hpp"

namespace etsim {

namespace {

const std::vector<std::string> kNumericParams = {
    "Delta", "delta", "Omega", "gamma", "gamma_prime", "gamma_phi", "gamma_nr", "gamma_bar",
    "g", "g_D", "g_A", "kappa", "Gamma", "eta", "omega_L", "d", "orientation", "collective",
    "delta_auto",
};

const std::vector<std::string> kOutputs = {
    "J", "J_D", "J_A", "J_r", "p_D", "p_A", "n", "C", "hopfield_MD", "hopfield_MC", "hopfield_MA",
};

bool known_param(const std::string& name) {
    return std::find(kNumericParams.begin(), kNumericParams.end(), name) != kNumericParams.end();
}

double default_of(const std::string& name) {
    if (name == "gamma") return 1.0;
    if (name == "collective") return 1.0;
    if (name == "orientation") return -1.0;
    if (name == "d") return std::nan("");
    return 0.0;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, int line) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError(line, "malformed number '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError(line, "malformed number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<double> parse_axis_values(const std::string& value, int line) {
    if (value.find(';') != std::string::npos) {
        std::vector<double> vals;
        for (const auto& tok : split(value, ';')) vals.push_back(parse_number(tok, line));
        if (vals.size() < 2) throw ParseError(line, "axis needs at least 2 points");
        return vals;
    }
    const auto parts = split(value, ',');
    if (parts.size() != 4) throw ParseError(line, "axis must be min,max,count,lin|log or v1;v2;...");
    const double lo = parse_number(parts[0], line);
    const double hi = parse_number(parts[1], line);
    const double cnt = parse_number(parts[2], line);
    const int n = static_cast<int>(cnt);
    if (n < 2 || cnt != n) throw ParseError(line, "axis point count must be an integer >= 2");
    const bool log = parts[3] == "log";
    if (!log && parts[3] != "lin") throw ParseError(line, "axis scale must be lin or log");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw ParseError(line, "axis range must be finite");
    if (log && (lo <= 0 || hi <= 0)) throw ParseError(line, "log axis needs positive endpoints");
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        vals[i] = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return vals;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

double SweepConfig::param(const std::string& name, const std::map<std::string, double>& point) const {
    if (auto it = point.find(name); it != point.end()) return it->second;
    if (auto it = fixed.find(name); it != fixed.end()) return it->second;
    return default_of(name);
}

void SweepConfig::validate() const {
    for (const auto& [k, v] : fixed) {
        if (!known_param(k)) throw ConfigError("unknown parameter '" + k + "'");
        if (!std::isfinite(v) && k != "d") throw ConfigError("parameter '" + k + "' must be finite");
    }
    for (const auto& ax : axes) {
        if (!known_param(ax.param)) throw ConfigError("unknown sweep parameter '" + ax.param + "'");
        if (ax.values.size() < 2) throw ConfigError("axis '" + ax.param + "' needs at least 2 points");
        for (double v : ax.values)
            if (!std::isfinite(v)) throw ConfigError("axis '" + ax.param + "' has a non-finite value");
    }
    if (outputs.empty()) throw ConfigError("at least one output is required");
    for (const auto& o : outputs)
        if (std::find(kOutputs.begin(), kOutputs.end(), o) == kOutputs.end())
            throw ConfigError("unknown output '" + o + "'");

    auto has_axis = [&](const std::string& p) {
        return std::any_of(axes.begin(), axes.end(), [&](const AxisSpec& a) { return a.param == p; });
    };
    const bool has_d = has_axis("d") || fixed.count("d");
    const bool oriented = param("orientation", {}) >= 0 || has_axis("orientation");
    if (oriented && !has_d) throw ConfigError("a geometry orientation needs d");
    const bool omega_given = fixed.count("Omega") || has_axis("Omega");
    if (oriented && omega_given) throw ConfigError("Omega is computed from geometry; do not set both");
    if (has_d && !oriented) throw ConfigError("d given without an orientation");

    if (solver == SolverKind::Moments && std::find(outputs.begin(), outputs.end(), "C") != outputs.end())
        throw ConfigError("concurrence needs the master-equation solver");
    if (solver == SolverKind::Moments && pump == PumpMode::Coherent)
        throw ConfigError("the moment solver covers incoherent pumping only");
    if (solver == SolverKind::Analytic || solver == SolverKind::MasterPlusAnalytic) {
        if (outputs.size() != 1 || (outputs[0] != "J" && outputs[0] != "J_A"))
            throw ConfigError("analytic solving supports a single output, J or J_A");
    }
    if (n_cav < 1) throw ConfigError("n_cav must be >= 1");
}

SweepConfig parse_config(const std::string& text) {
    SweepConfig cfg;
    cfg.outputs.clear();
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool outputs_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(line, "expected key = value");

        if (key.rfind("sweep.", 0) == 0) {
            const std::string p = key.substr(6);
            if (!known_param(p)) throw ParseError(line, "unknown sweep parameter '" + p + "'");
            cfg.axes.push_back(AxisSpec{p, parse_axis_values(value, line)});
        } else if (key == "preset") {
            cfg.preset = value;
        } else if (key == "solver") {
            if (value == "master") cfg.solver = SolverKind::Master;
            else if (value == "moments") cfg.solver = SolverKind::Moments;
            else if (value == "analytic") cfg.solver = SolverKind::Analytic;
            else if (value == "master+analytic") cfg.solver = SolverKind::MasterPlusAnalytic;
            else throw ParseError(line, "unknown solver '" + value + "'");
        } else if (key == "pump") {
            if (value == "none") cfg.pump = PumpMode::None;
            else if (value == "incoherent") cfg.pump = PumpMode::Incoherent;
            else if (value == "coherent") cfg.pump = PumpMode::Coherent;
            else throw ParseError(line, "unknown pump mode '" + value + "'");
        } else if (key == "outputs") {
            cfg.outputs = split(value, ',');
            outputs_seen = true;
        } else if (key == "out") {
            cfg.output_path = value;
        } else if (key == "normalization") {
            if (value == "per_pump") cfg.per_pump = true;
            else if (value == "raw") cfg.per_pump = false;
            else throw ParseError(line, "normalization must be per_pump or raw");
        } else if (key == "n_cav") {
            cfg.n_cav = static_cast<int>(parse_number(value, line));
        } else if (key == "auto_ncav") {
            if (value == "on" || value == "1") cfg.auto_ncav = true;
            else if (value == "off" || value == "0") cfg.auto_ncav = false;
            else throw ParseError(line, "auto_ncav must be on or off");
        } else if (key == "wavelength_nm") {
            cfg.wavelength_nm = parse_number(value, line);
        } else if (key == "d_unit") {
            if (value == "nm") cfg.d_in_nm = true;
            else if (value == "lambda") cfg.d_in_nm = false;
            else throw ParseError(line, "d_unit must be lambda or nm");
        } else if (key == "delta") {
            if (value == "opt") cfg.fixed["delta_auto"] = 1.0;
            else cfg.fixed["delta"] = parse_number(value, line);
        } else if (key == "orientation") {
            if (value == "parallel") cfg.fixed["orientation"] = 0.0;
            else if (value == "perpendicular") cfg.fixed["orientation"] = 1.0;
            else if (value == "none") cfg.fixed["orientation"] = -1.0;
            else cfg.fixed["orientation"] = parse_number(value, line);
        } else if (known_param(key)) {
            cfg.fixed[key] = parse_number(value, line);
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
    }
    if (!outputs_seen) cfg.outputs = {"J"};
    cfg.validate();
    return cfg;
}

std::string to_config_text(const SweepConfig& cfg) {
    std::ostringstream out;
    if (!cfg.preset.empty()) out << "preset = " << cfg.preset << "\n";
    out << "solver = ";
    switch (cfg.solver) {
        case SolverKind::Master: out << "master"; break;
        case SolverKind::Moments: out << "moments"; break;
        case SolverKind::Analytic: out << "analytic"; break;
        case SolverKind::MasterPlusAnalytic: out << "master+analytic"; break;
    }
    out << "\n";
    out << "pump = " << (cfg.pump == PumpMode::None ? "none" : cfg.pump == PumpMode::Incoherent ? "incoherent" : "coherent")
        << "\n";
    out << "normalization = " << (cfg.per_pump ? "per_pump" : "raw") << "\n";
    out << "n_cav = " << cfg.n_cav << "\n";
    out << "auto_ncav = " << (cfg.auto_ncav ? "on" : "off") << "\n";
    out << "wavelength_nm = " << fmt(cfg.wavelength_nm) << "\n";
    out << "d_unit = " << (cfg.d_in_nm ? "nm" : "lambda") << "\n";
    for (const auto& [k, v] : cfg.fixed) {
        if (k == "delta_auto") {
            if (v != 0.0) out << "delta = opt\n";
            continue;
        }
        out << k << " = " << fmt(v) << "\n";
    }
    for (const auto& ax : cfg.axes) {
        out << "sweep." << ax.param << " = ";
        for (size_t i = 0; i < ax.values.size(); ++i) out << (i ? ";" : "") << fmt(ax.values[i]);
        out << "\n";
    }
    out << "outputs = ";
    for (size_t i = 0; i < cfg.outputs.size(); ++i) out << (i ? "," : "") << cfg.outputs[i];
    out << "\n";
    out << "out = " << cfg.output_path << "\n";
    return out.str();
}

SystemSpec resolve_point(const SweepConfig& cfg, const std::map<std::string, double>& point) {
    auto p = [&](const std::string& name) { return cfg.param(name, point); };

    SystemSpec spec;
    spec.Delta = p("Delta");
    spec.rates.gamma_D = spec.rates.gamma_A = p("gamma");
    spec.rates.gamma_prime = p("gamma_prime");
    spec.rates.gamma_phi = p("gamma_phi");
    spec.rates.gamma_nr = p("gamma_nr");
    const double g = p("g");
    spec.g_D = cfg.fixed.count("g_D") || point.count("g_D") ? p("g_D") : g;
    spec.g_A = cfg.fixed.count("g_A") || point.count("g_A") ? p("g_A") : g;
    spec.kappa = p("kappa");
    spec.n_cav = cfg.n_cav;

    spec.delta = p("delta_auto") != 0.0 ? optimal_cavity_detuning(spec.Delta, spec.g_D, spec.g_A) : p("delta");

    const double orientation = p("orientation");
    if (orientation >= 0) {
        const double d_raw = p("d");
        if (std::isnan(d_raw)) throw ConfigError("d is required with a geometry orientation");
        const double d_lambda = cfg.d_in_nm ? d_raw / cfg.wavelength_nm : d_raw;
        const GeometrySpec geom = orientation < 0.5 ? GeometrySpec::parallel(d_lambda, 1.0)
                                                    : GeometrySpec::perpendicular(d_lambda, 1.0);
        spec.Omega = dipole_shift(geom, spec.rates);
        spec.gamma_bar = p("collective") != 0.0 ? mutual_decay(geom, spec.rates) : 0.0;
    } else {
        spec.Omega = p("Omega");
        spec.gamma_bar = p("collective") != 0.0 ? p("gamma_bar") : 0.0;
    }

    switch (cfg.pump) {
        case PumpMode::None: spec.pump = PumpSpec::none(); break;
        case PumpMode::Incoherent: spec.pump = PumpSpec::incoherent(p("Gamma")); break;
        case PumpMode::Coherent: spec.pump = PumpSpec::coherent(p("eta"), p("omega_L")); break;
    }
    spec.validate();
    return spec;
}

}  // namespace etsim
