// Command-line front end: parameter sweeps, single-point formula evaluation,
// and the analytic-vs-numeric cross-validation suite.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "etsim/formulas.hpp"
#include "etsim/sweep.hpp"
#include "etsim/validation.hpp"
#include "etsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitTolerance = 3;

std::map<std::string, double> parse_kv(const std::string& s) {
    std::map<std::string, double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw etsim::ConfigError("expected k=v in --params: " + tok);
        out[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etsim: donor-acceptor energy-flow simulator"};
    app.set_version_flag("--version", std::string(etsim::kVersion));
    app.require_subcommand(1);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and write a CSV table");
    std::string config_file, preset, out_override;
    int threads = 1, ncav_override = 0;
    sweep_cmd->add_option("config", config_file, "sweep config file (key = value lines)");
    sweep_cmd->add_option("--preset", preset, "built-in preset name");
    sweep_cmd->add_option("--out", out_override, "output CSV path");
    sweep_cmd->add_option("--threads", threads, "worker threads (grid points are independent)");
    sweep_cmd->add_option("--ncav", ncav_override, "override the cavity truncation");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "evaluate one analytic formula");
    std::string formula_id, params_str;
    oracle_cmd->add_option("formula", formula_id, "formula id")->required();
    oracle_cmd->add_option("--params", params_str, "comma-separated k=v list");

    // check
    auto* check_cmd = app.add_subcommand("check", "run the full cross-validation suite");
    std::vector<int> only;
    int check_threads = 1;
    check_cmd->add_option("--only", only, "criterion ids to run (default: all)");
    check_cmd->add_option("--threads", check_threads, "worker threads for the preset runs");

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "list presets or write them as config files");
    std::string presets_dir;
    presets_cmd->add_option("--write-dir", presets_dir, "directory to write <name>.cfg files into");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd) {
            etsim::SweepConfig cfg;
            try {
                if (!preset.empty()) {
                    cfg = etsim::builtin_preset(preset);
                } else if (!config_file.empty()) {
                    std::ifstream in(config_file);
                    if (!in) throw etsim::ConfigError("cannot open " + config_file);
                    std::stringstream buf;
                    buf << in.rdbuf();
                    cfg = etsim::parse_config(buf.str());
                    if (!cfg.preset.empty() && cfg.axes.empty()) cfg = etsim::builtin_preset(cfg.preset);
                } else {
                    throw etsim::ConfigError("either a config file or --preset is required");
                }
                if (!out_override.empty()) cfg.output_path = out_override;
                if (ncav_override > 0) cfg.n_cav = ncav_override;
                cfg.validate();
            } catch (const etsim::Error& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitConfig;
            }
            const etsim::SweepResult result = etsim::run_sweep(cfg, threads);
            std::ofstream out(cfg.output_path);
            if (!out) {
                std::cerr << "cannot write " << cfg.output_path << "\n";
                return kExitSolver;
            }
            out << etsim::to_csv(result);
            size_t failed = 0;
            for (const auto& s : result.status)
                if (s != "ok") ++failed;
            std::cout << cfg.output_path << ": " << result.rows.size() << " rows";
            if (failed) std::cout << " (" << failed << " flagged in the status column)";
            std::cout << "\n";
            return kExitOk;
        }

        if (*oracle_cmd) {
            try {
                const etsim::FlowResult r = etsim::evaluate_formula(formula_id, parse_kv(params_str));
                std::printf("%s = %.17g\n", etsim::formula_name(r.formula_id).c_str(), r.value);
            } catch (const etsim::Error& e) {
                std::cerr << "oracle error: " << e.what() << "\n";
                return kExitConfig;
            }
            return kExitOk;
        }

        if (*check_cmd) {
            const auto results = etsim::run_acceptance(only, check_threads);
            std::cout << etsim::format_results(results);
            return etsim::all_passed(results) ? kExitOk : kExitTolerance;
        }

        if (*presets_cmd) {
            for (const auto& name : etsim::preset_names()) {
                if (presets_dir.empty()) {
                    std::cout << name << "\n";
                } else {
                    const std::string path = presets_dir + "/" + name + ".cfg";
                    std::ofstream out(path);
                    if (!out) {
                        std::cerr << "cannot write " << path << "\n";
                        return kExitConfig;
                    }
                    out << etsim::to_config_text(etsim::builtin_preset(name));
                    std::cout << path << "\n";
                }
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
