#include <cmath>

#include "etsim/sweep.hpp"

namespace etsim {

namespace {

std::vector<double> log_axis(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

std::vector<double> lin_axis(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

SweepConfig fig2a(bool parallel) {
    SweepConfig c;
    c.preset = parallel ? "fig2a_parallel" : "fig2a_perp";
    c.solver = SolverKind::Analytic;
    c.pump = PumpMode::Incoherent;
    c.fixed["Gamma"] = 1e-3;
    c.fixed["Delta"] = 200.0;
    c.fixed["orientation"] = parallel ? 0.0 : 1.0;
    c.axes.push_back({"d", log_axis(0.01, 0.6, 121)});
    c.axes.push_back({"gamma_prime", {0.0, 0.1, 1.0, 10.0}});
    c.axes.push_back({"collective", {0.0, 1.0}});
    c.outputs = {"J"};
    c.n_cav = 1;
    c.output_path = c.preset + ".csv";
    return c;
}

SweepConfig fig3(bool parallel) {
    SweepConfig c;
    c.preset = parallel ? "fig3_parallel" : "fig3_perp";
    c.solver = SolverKind::MasterPlusAnalytic;
    c.pump = PumpMode::Incoherent;
    c.fixed["Gamma"] = 1e-3;
    c.fixed["Delta"] = 200.0;
    c.fixed["delta"] = 100.0;  // symmetric Purcell shifts, gamma_D_eff = gamma_A_eff
    c.fixed["kappa"] = 2000.0;
    c.fixed["orientation"] = parallel ? 0.0 : 1.0;
    c.axes.push_back({"d", log_axis(0.05, 0.5, 61)});
    c.axes.push_back({"g", {20.0, 70.0}});
    c.outputs = {"J"};
    c.n_cav = 2;
    c.output_path = c.preset + ".csv";
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2a_parallel", "fig2a_perp", "fig2bc_grid", "fig2d", "fig2e",
            "fig3_parallel", "fig3_perp", "fig4bc", "fig4d", "fig4ef"};
}

SweepConfig builtin_preset(const std::string& name) {
    if (name == "fig2a_parallel") return fig2a(true);
    if (name == "fig2a_perp") return fig2a(false);

    if (name == "fig2bc_grid") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Incoherent;
        c.fixed["Gamma"] = 1e-2;
        c.fixed["collective"] = 0.0;
        c.fixed["kappa"] = 1.0;  // empty decoupled mode still needs damping
        c.axes.push_back({"Delta", lin_axis(0.0, 10.0, 41)});
        c.axes.push_back({"Omega", lin_axis(0.1, 5.0, 41)});
        c.outputs = {"J", "C"};
        c.n_cav = 1;
        c.output_path = name + ".csv";
        return c;
    }
    if (name == "fig2d") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Coherent;
        c.fixed["eta"] = 0.1;
        c.fixed["omega_L"] = 200.0;  // laser on the bare donor
        c.fixed["Delta"] = 200.0;
        c.fixed["kappa"] = 1.0;
        c.axes.push_back({"d", log_axis(0.02, 0.5, 81)});
        c.axes.push_back({"orientation", {0.0, 1.0}});
        c.outputs = {"J"};
        c.n_cav = 1;
        c.output_path = name + ".csv";
        return c;
    }
    if (name == "fig2e") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Coherent;
        c.fixed["eta"] = 0.1;
        c.fixed["Delta"] = 4.0;
        c.fixed["collective"] = 0.0;
        c.fixed["kappa"] = 1.0;
        c.axes.push_back({"omega_L", lin_axis(-12.0, 16.0, 57)});
        c.axes.push_back({"Omega", lin_axis(0.05, 8.0, 40)});
        c.outputs = {"J"};
        c.n_cav = 1;
        c.output_path = name + ".csv";
        return c;
    }
    if (name == "fig3_parallel") return fig3(true);
    if (name == "fig3_perp") return fig3(false);

    if (name == "fig4bc") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Incoherent;
        c.fixed["Gamma"] = 1e-4;
        c.fixed["delta_auto"] = 1.0;  // cavity parked at the Hopfield crossing
        c.axes.push_back({"Delta", log_axis(4.0, 400.0, 13)});
        c.axes.push_back({"kappa", log_axis(0.5, 2000.0, 11)});
        c.axes.push_back({"g", {10.0, 50.0, 100.0, 500.0}});
        c.outputs = {"J_A"};
        c.n_cav = 2;
        c.output_path = name + ".csv";
        return c;
    }
    if (name == "fig4d") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Incoherent;
        c.fixed["Gamma"] = 1e-5;
        c.fixed["g_A"] = 50.0;
        c.fixed["g_D"] = 10.0;
        c.fixed["kappa"] = 10.0;
        c.fixed["Delta"] = 40.0;
        c.axes.push_back({"delta", lin_axis(-80.0, 40.0, 121)});
        c.outputs = {"J_A", "C", "hopfield_MD", "hopfield_MC", "hopfield_MA"};
        c.n_cav = 2;
        c.output_path = name + ".csv";
        return c;
    }
    if (name == "fig4ef") {
        SweepConfig c;
        c.preset = name;
        c.solver = SolverKind::Master;
        c.pump = PumpMode::Coherent;
        c.fixed["eta"] = 0.005;
        c.fixed["g"] = 50.0;
        c.fixed["kappa"] = 10.0;
        c.fixed["Delta"] = 40.0;
        c.axes.push_back({"delta", lin_axis(-90.0, 130.0, 23)});
        c.axes.push_back({"omega_L", lin_axis(-90.0, 130.0, 23)});
        c.outputs = {"J_A", "C"};
        c.n_cav = 2;
        c.output_path = name + ".csv";
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace etsim
