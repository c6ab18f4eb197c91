#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "etsim/formulas.hpp"
#include "etsim/moments.hpp"
#include "etsim/polariton.hpp"
#include "etsim/sweep.hpp"
#include "etsim/version.hpp"

namespace etsim {

namespace {

std::string error_tag(const Error& e) {
    if (dynamic_cast<const NonUniqueSteadyState*>(&e)) return "non_unique_steady_state";
    if (dynamic_cast<const Unstable*>(&e)) return "unstable";
    if (dynamic_cast<const Singular*>(&e)) return "singular";
    if (dynamic_cast<const SingularResonance*>(&e)) return "singular_resonance";
    if (dynamic_cast<const UnphysicalMutualDecay*>(&e)) return "unphysical_mutual_decay";
    if (dynamic_cast<const ZeroSeparation*>(&e)) return "zero_separation";
    if (dynamic_cast<const NonPhysicalState*>(&e)) return "non_physical_state";
    if (dynamic_cast<const NoConvergence*>(&e)) return "no_convergence";
    return "solver_error";
}

double pump_strength(const SystemSpec& spec) {
    if (spec.pump.mode == PumpMode::Incoherent) return spec.pump.Gamma;
    if (spec.pump.mode == PumpMode::Coherent) return spec.pump.eta;
    return 1.0;
}

/// Analytic closed form matching the point's pump mode and coupling layout;
/// returns the flow named in config.outputs[0], already per-pump when asked.
double analytic_value(const SweepConfig& cfg, const SystemSpec& spec) {
    const bool cavity = spec.g_D != 0.0 || spec.g_A != 0.0;
    const double pump = pump_strength(spec);
    if (cfg.pump == PumpMode::Coherent) {
        double j;
        if (cavity) {
            if (spec.Omega != 0.0) throw ConfigError("the coherent cavity formula needs Omega = 0");
            j = j_a_coherent_cavity(spec.Delta, spec.delta, spec.g_D, spec.g_A, spec.rates.gamma_D,
                                    spec.pump.eta, spec.pump.omega_L);
        } else {
            j = j_coherent_free(spec.Delta, spec.Omega, spec.rates.gamma_D, spec.pump.eta, spec.pump.omega_L);
        }
        return cfg.per_pump ? j / pump : j;
    }
    double j_over_gamma;
    if (cavity) {
        const EffectiveRates er = adiabatic_cavity_rates(spec);
        const double purcell =
            0.5 * ((er.gamma_D_eff - spec.rates.gamma_D) + (er.gamma_A_eff - spec.rates.gamma_A));
        const double gamma_eff = 0.5 * (spec.rates.gamma_tot_D() + spec.rates.gamma_tot_A()) + purcell;
        j_over_gamma = j_cavity_cooperativity(spec.Delta, spec.Omega, gamma_eff,
                                              spec.gamma_bar + er.gamma_AD_eff);
    } else {
        j_over_gamma = j_free_space_full(spec.Delta, spec.Omega, spec.rates.gamma_D, spec.rates.gamma_prime,
                                         spec.rates.gamma_phi, spec.gamma_bar);
    }
    return cfg.per_pump ? j_over_gamma : j_over_gamma * pump;
}

double report_field(const FlowReport& f, const std::string& name) {
    if (name == "J") return f.J;
    if (name == "J_D") return f.J_D;
    if (name == "J_A") return f.J_A;
    if (name == "J_r") return f.J_r;
    if (name == "p_D") return f.p_D;
    if (name == "p_A") return f.p_A;
    if (name == "n") return f.n;
    throw ConfigError("unknown report field " + name);
}

}  // namespace

namespace {
SweepResult run_grid(const SweepConfig& cfg, int threads);
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
    cfg.validate();
    if (!cfg.auto_ncav) return run_grid(cfg, threads);

    SweepConfig cur = cfg;
    SweepResult prev = run_grid(cur, threads);
    while (cur.n_cav < 16) {
        SweepConfig finer = cur;
        finer.n_cav = std::min(2 * cur.n_cav, 16);
        SweepResult next = run_grid(finer, threads);
        bool converged = true;
        for (size_t r = 0; r < prev.rows.size() && converged; ++r)
            for (size_t c = cfg.axes.size(); c < prev.rows[r].size(); ++c) {
                const double a = prev.rows[r][c], b = next.rows[r][c];
                if (std::isnan(a) && std::isnan(b)) continue;
                if (std::abs(a - b) > std::max(1e-6 * std::abs(b), 2e-15)) {
                    converged = false;
                    break;
                }
            }
        if (converged) return next;
        cur = finer;
        prev = std::move(next);
    }
    return prev;
}

namespace {
SweepResult run_grid(const SweepConfig& cfg, int threads) {

    size_t total = 1;
    for (const auto& ax : cfg.axes) total *= ax.values.size();

    SweepResult res;
    for (const auto& ax : cfg.axes) res.columns.push_back(ax.param);
    const bool dual = cfg.solver == SolverKind::MasterPlusAnalytic;
    if (dual) {
        res.columns.push_back(cfg.outputs[0] + "_num");
        res.columns.push_back(cfg.outputs[0] + "_ana");
        res.columns.push_back("rel_gap");
    } else {
        for (const auto& o : cfg.outputs) res.columns.push_back(o);
    }
    res.columns.push_back("status");

    {
        std::istringstream meta(to_config_text(cfg));
        res.meta.push_back(std::string("etsim ") + kVersion);
        std::string line;
        while (std::getline(meta, line)) res.meta.push_back(line);
    }

    res.rows.assign(total, {});
    res.status.assign(total, "ok");

    auto point_of = [&](size_t idx) {
        std::map<std::string, double> point;
        size_t rem = idx;
        for (int a = static_cast<int>(cfg.axes.size()) - 1; a >= 0; --a) {
            const auto& ax = cfg.axes[a];
            point[ax.param] = ax.values[rem % ax.values.size()];
            rem /= ax.values.size();
        }
        return point;
    };

    auto evaluate = [&](size_t idx) {
        const auto point = point_of(idx);
        auto& row = res.rows[idx];
        for (const auto& ax : cfg.axes) row.push_back(point.at(ax.param));
        const size_t value_cols = res.columns.size() - row.size() - 1;
        try {
            const SystemSpec spec = resolve_point(cfg, point);
            if (dual || cfg.solver == SolverKind::Analytic) {
                const double ana = analytic_value(cfg, spec);
                if (dual) {
                    const OperatorSet ops = build_operators(spec);
                    const auto rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{false});
                    FlowReport f = energy_flows(rho, spec, ops);
                    if (cfg.per_pump) f = normalize_per_pump(f, spec);
                    const double num = report_field(f, cfg.outputs[0]);
                    row.push_back(num);
                    row.push_back(ana);
                    row.push_back(std::abs(num - ana) / std::max({std::abs(num), std::abs(ana), 1e-300}));
                } else {
                    row.push_back(ana);
                }
            } else if (cfg.solver == SolverKind::Moments) {
                const MomentState m = moment_steady_state(spec);
                const MomentFlows mf = moment_flows(m, spec);
                FlowReport f;
                f.J = mf.J;
                f.J_D = mf.J_D;
                f.J_A = mf.J_A;
                f.J_r = mf.J_r;
                f.p_D = m.p_D;
                f.p_A = m.p_A;
                f.n = m.n;
                if (cfg.per_pump) f = normalize_per_pump(f, spec);
                for (const auto& o : cfg.outputs) row.push_back(report_field(f, o));
            } else {
                const OperatorSet ops = build_operators(spec);
                const auto rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{false});
                FlowReport f = energy_flows(rho, spec, ops);
                if (cfg.per_pump) f = normalize_per_pump(f, spec);
                for (const auto& o : cfg.outputs) {
                    if (o == "C") {
                        row.push_back(concurrence(rho, spec.layout()));
                    } else if (o.rfind("hopfield_M", 0) == 0) {
                        const PolaritonSet pol = polariton_modes(spec.Delta, spec.delta, spec.g_D, spec.g_A);
                        const int comp = o == "hopfield_MD" ? 0 : o == "hopfield_MC" ? 1 : 2;
                        row.push_back(pol.hopfield[1][comp]);
                    } else {
                        row.push_back(report_field(f, o));
                    }
                }
            }
        } catch (const Error& e) {
            res.status[idx] = error_tag(e);
            while (row.size() < res.columns.size() - 1) row.push_back(std::nan(""));
        }
        (void)value_cols;
    };

    const int nw = std::max(1, threads);
    if (nw == 1) {
        for (size_t i = 0; i < total; ++i) evaluate(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) evaluate(i);
            });
        for (auto& t : pool) t.join();
    }
    return res;
}
}  // namespace

std::string to_csv(const SweepResult& res) {
    std::ostringstream out;
    for (const auto& m : res.meta) out << "# " << m << "\n";
    for (size_t c = 0; c < res.columns.size(); ++c) out << (c ? "," : "") << res.columns[c];
    out << "\n";
    char buf[40];
    for (size_t r = 0; r < res.rows.size(); ++r) {
        for (size_t c = 0; c < res.rows[r].size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.16e", res.rows[r][c]);
            out << (c ? "," : "") << buf;
        }
        out << "," << res.status[r] << "\n";
    }
    return out.str();
}

}  // namespace etsim
