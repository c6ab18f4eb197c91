#include "etsim/formulas.hpp"

#include <cmath>

namespace etsim {

bool FlowResult::finite() const { return std::isfinite(value); }

double j_free_space_full(double Delta, double Omega, double gamma, double gamma_prime, double gamma_phi,
                         double gamma_bar) {
    const double b = gamma + gamma_prime;            // gamma_tot
    const double a = gamma + gamma_prime + 2 * gamma_phi;
    const double num = 2 * Omega * Omega * (a / b - gamma_bar * gamma_bar / (b * b)) +
                       gamma_bar * Delta * Omega / b;
    const double den = Delta * Delta + 4 * Omega * Omega * a / b + a * a -
                       gamma_bar * gamma_bar * (4 * Omega * Omega / (b * b) + a / b);
    return num / den;
}

double j_free_space_simple(double Delta, double Omega, double gamma_tot) {
    return 2 * Omega * Omega / (Delta * Delta + 4 * Omega * Omega + gamma_tot * gamma_tot);
}

double j_distinct_emitters(double Delta, double Omega, double gamma_D, double gamma_A) {
    const double s = gamma_A + gamma_D;
    const double num = 4 * gamma_A * s * Omega * Omega;
    const double den = gamma_A * gamma_D * (4 * Delta * Delta + s * s) + 4 * s * s * Omega * Omega;
    return num / den;
}

double j_coherent_free(double Delta, double Omega, double gamma, double eta, double omega_L) {
    const double g2 = gamma * gamma;
    const double num = 16 * gamma * eta * eta * Omega * Omega;
    const double den = (g2 + 4 * omega_L * omega_L) *
                           (g2 + 4 * ((Delta - omega_L) * (Delta - omega_L) + 2 * eta * eta)) +
                       8 * Omega * Omega * (g2 + 4 * omega_L * (Delta - omega_L)) +
                       16 * Omega * Omega * Omega * Omega;
    return num / den;
}

double j_cavity_cooperativity(double Delta, double Omega, double gamma_eff, double gamma_AD_eff) {
    const double g2 = gamma_eff * gamma_eff;
    const double gad2 = gamma_AD_eff * gamma_AD_eff;
    const double num = Omega * (2 * g2 * Omega - 2 * gad2 * Omega + gamma_eff * gamma_AD_eff * Delta);
    const double den = g2 * g2 - 4 * gad2 * Omega * Omega +
                       g2 * (Delta * Delta + 4 * Omega * Omega - gad2);
    return num / den;
}

double j_a_coherent_cavity(double Delta, double delta, double g_D, double g_A, double gamma, double eta,
                           double omega_L) {
    const double t1 = g_A * g_A * (Delta - omega_L);
    const double t2 = -omega_L * g_D * g_D;
    const double t3 = omega_L * (delta - omega_L) * (Delta - omega_L);
    const double bracket = t1 + t2 + t3;
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    if (std::abs(bracket) <= 1e-14 * scale || scale == 0)
        throw SingularResonance("weak-drive pole: the resonance denominator vanishes");
    return g_A * g_A * g_D * g_D * gamma * eta * eta / (bracket * bracket);
}

IntermediateLevelResult j_intermediate_level(double Omega, double gamma_D, double gamma_nr) {
    if (!(gamma_nr > 0)) throw Error("gamma_nr must be positive");
    const double o2 = 4 * Omega * Omega;
    return IntermediateLevelResult{o2 / (gamma_D * gamma_nr + o2), o2 / gamma_nr};
}

EffectivePump effective_pump_rate(double eta, double gamma_ie, double gamma_ig, double gamma_eg) {
    EffectivePump p;
    const double s = gamma_ie + gamma_ig;
    p.Gamma_eff = 4 * eta * eta * gamma_ie / (4 * eta * eta + s * s);
    p.Gamma_eff_limit = 4 * eta * eta / gamma_ie;
    p.pump_dephasing = 2 * eta * eta / (gamma_ie + gamma_ig + gamma_eg);
    p.adiabatic_ok = gamma_ie >= 10.0 * std::max({gamma_eg, gamma_ig, eta});
    return p;
}

namespace {

double need(const std::map<std::string, double>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw ConfigError("missing formula parameter: " + key);
    return it->second;
}

double opt(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

std::string formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::FreeSpaceFull: return "free_space_full";
        case FormulaId::FreeSpaceSimple: return "free_space_simple";
        case FormulaId::DistinctEmitters: return "distinct_emitters";
        case FormulaId::CoherentFree: return "coherent_free";
        case FormulaId::CavityCooperativity: return "cavity_cooperativity";
        case FormulaId::CoherentCavity: return "coherent_cavity";
        case FormulaId::IntermediateLevel: return "intermediate_level";
    }
    return "?";
}

FlowResult evaluate_formula(const std::string& id, const std::map<std::string, double>& params) {
    FlowResult r;
    if (id == "free_space_full") {
        r.formula_id = FormulaId::FreeSpaceFull;
        r.value = j_free_space_full(need(params, "Delta"), need(params, "Omega"), opt(params, "gamma", 1.0),
                                    opt(params, "gamma_prime", 0.0), opt(params, "gamma_phi", 0.0),
                                    opt(params, "gamma_bar", 0.0));
    } else if (id == "free_space_simple") {
        r.formula_id = FormulaId::FreeSpaceSimple;
        r.value = j_free_space_simple(need(params, "Delta"), need(params, "Omega"), opt(params, "gamma_tot", 1.0));
    } else if (id == "distinct_emitters") {
        r.formula_id = FormulaId::DistinctEmitters;
        r.value = j_distinct_emitters(need(params, "Delta"), need(params, "Omega"), need(params, "gamma_D"),
                                      need(params, "gamma_A"));
    } else if (id == "coherent_free") {
        r.formula_id = FormulaId::CoherentFree;
        r.value = j_coherent_free(need(params, "Delta"), need(params, "Omega"), opt(params, "gamma", 1.0),
                                  need(params, "eta"), need(params, "omega_L"));
    } else if (id == "cavity_cooperativity") {
        r.formula_id = FormulaId::CavityCooperativity;
        r.value = j_cavity_cooperativity(need(params, "Delta"), need(params, "Omega"), need(params, "gamma_eff"),
                                         need(params, "gamma_AD_eff"));
    } else if (id == "coherent_cavity") {
        r.formula_id = FormulaId::CoherentCavity;
        r.value = j_a_coherent_cavity(need(params, "Delta"), need(params, "delta"), need(params, "g_D"),
                                      need(params, "g_A"), opt(params, "gamma", 1.0), need(params, "eta"),
                                      need(params, "omega_L"));
    } else if (id == "intermediate_level") {
        r.formula_id = FormulaId::IntermediateLevel;
        r.value = j_intermediate_level(need(params, "Omega"), opt(params, "gamma_D", 1.0),
                                       need(params, "gamma_nr")).j_over_gamma;
    } else {
        throw ConfigError("unknown formula id: " + id);
    }
    return r;
}

}  // namespace etsim
