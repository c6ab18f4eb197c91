#pragma once

#include <map>
#include <string>

#include "etsim/errors.hpp"

namespace etsim {

enum class FormulaId {
    FreeSpaceFull,
    FreeSpaceSimple,
    DistinctEmitters,
    CoherentFree,
    CavityCooperativity,
    CoherentCavity,
    IntermediateLevel,
};

/// Scalar flow value with the equation it came from. `value` may be non-finite
/// on the singular surface of FreeSpaceFull (deep subradiant limit) -- callers
/// check finite() instead of receiving a clamped number.
struct FlowResult {
    double value = 0;
    FormulaId formula_id = FormulaId::FreeSpaceFull;

    bool finite() const;
};

// Every closed form is transcribed term by term; algebraic reductions between
// them are asserted in tests, never used as code paths.

/// Normalized flow J/Gamma with collective decay and dephasing.
double j_free_space_full(double Delta, double Omega, double gamma, double gamma_prime, double gamma_phi,
                         double gamma_bar);

/// J/Gamma for gamma_phi = gamma_bar = 0.
double j_free_space_simple(double Delta, double Omega, double gamma_tot);

/// J/Gamma for distinct emitter linewidths, no extra channels.
double j_distinct_emitters(double Delta, double Omega, double gamma_D, double gamma_A);

/// Coherently driven free-space flow J(eta, omega_L); valid for
/// gamma_bar = gamma' = gamma_phi = 0.
double j_coherent_free(double Delta, double Omega, double gamma, double eta, double omega_L);

/// J/Gamma with cavity-dressed rates (strong cooperativity), assuming
/// gamma_D_eff = gamma_A_eff = gamma_eff.
double j_cavity_cooperativity(double Delta, double Omega, double gamma_eff, double gamma_AD_eff);

/// Cavity-mediated coherent-drive flow J_A for distant emitters (Omega = 0).
/// Throws SingularResonance on the pole of the weak-drive expression.
double j_a_coherent_cavity(double Delta, double delta, double g_D, double g_A, double gamma, double eta,
                           double omega_L);

struct IntermediateLevelResult {
    double j_over_gamma;  // J_i / Gamma
    double k_fs;          // free-space transfer rate
};

/// Resonant transfer through the acceptor's intermediate vibrational level.
IntermediateLevelResult j_intermediate_level(double Omega, double gamma_D, double gamma_nr);

struct EffectivePump {
    double Gamma_eff;        // full form 4 eta^2 gamma_ie / (4 eta^2 + (gamma_ie+gamma_ig)^2)
    double Gamma_eff_limit;  // 4 eta^2 / gamma_ie
    double pump_dephasing;   // 2 eta^2 / (gamma_ie + gamma_ig + gamma_eg)
    bool adiabatic_ok;       // gamma_ie >= 10 max(gamma_eg, gamma_ig, eta)
};

/// Two-level reduction of the driven three-level pumping scheme.
EffectivePump effective_pump_rate(double eta, double gamma_ie, double gamma_ig, double gamma_eg);

/// Formula dispatch for the oracle CLI; throws ConfigError on unknown ids or
/// missing parameters.
FlowResult evaluate_formula(const std::string& id, const std::map<std::string, double>& params);

std::string formula_name(FormulaId id);

}  // namespace etsim
