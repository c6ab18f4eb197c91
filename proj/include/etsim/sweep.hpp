#pragma once

#include <map>
#include <string>
#include <vector>

#include "etsim/observables.hpp"
#include "etsim/system.hpp"

namespace etsim {

enum class SolverKind { Master, Moments, Analytic, MasterPlusAnalytic };

/// One swept axis: an explicit value list (parsed from a min,max,count,lin|log
/// range or a v1;v2;... list). Row order is row-major, last axis fastest.
struct AxisSpec {
    std::string param;
    std::vector<double> values;

    bool operator==(const AxisSpec&) const = default;
};

/// A fully resolved sweep: fixed parameters, axes, solver and outputs.
/// All physical quantities are in units of gamma except d (lambda units or nm
/// per d_unit). orientation: -1 none, 0 parallel, 1 perpendicular;
/// collective: 0 forces gamma_bar = 0.
struct SweepConfig {
    std::string preset;
    SolverKind solver = SolverKind::Master;
    PumpMode pump = PumpMode::Incoherent;
    std::vector<AxisSpec> axes;
    std::map<std::string, double> fixed;  // resolved numeric parameters
    std::vector<std::string> outputs{"J"};
    std::string output_path = "sweep.csv";
    bool per_pump = true;  // normalize flows by Gamma or eta
    int n_cav = 1;
    bool auto_ncav = false;  // double n_cav (cap 16) until outputs move < 1e-6
    double wavelength_nm = 500.0;
    bool d_in_nm = false;

    bool operator==(const SweepConfig&) const = default;

    /// Parameter value at a grid point (axes override fixed, fixed override defaults).
    double param(const std::string& name, const std::map<std::string, double>& point) const;
    void validate() const;  // throws ConfigError
};

/// Parses the flat key = value format (# comments). Unknown keys are errors
/// with line numbers.
SweepConfig parse_config(const std::string& text);

/// Shipped figure presets; throws ConfigError for unknown names.
SweepConfig builtin_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Round-trips a config through the key = value format.
std::string to_config_text(const SweepConfig& config);

struct SweepResult {
    std::vector<std::string> columns;        // axis names, then outputs, then status
    std::vector<std::vector<double>> rows;   // numeric part
    std::vector<std::string> status;         // "ok" or a short error tag per row
    std::vector<std::string> meta;           // resolved config echo for the CSV header
};

/// Evaluates the grid with `threads` workers. Per-point solver errors land in
/// the status column; config errors throw before any computation.
SweepResult run_sweep(const SweepConfig& config, int threads = 1);

std::string to_csv(const SweepResult& result);

/// Resolves one grid point into a SystemSpec (geometry folded into Omega and
/// gamma_bar, delta = opt expanded). Exposed for tests and the check suite.
SystemSpec resolve_point(const SweepConfig& config, const std::map<std::string, double>& point);

}  // namespace etsim
