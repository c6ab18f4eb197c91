#pragma once

#include <array>

#include "etsim/matrix.hpp"
#include "etsim/system.hpp"

namespace etsim {

/// The six second-order correlators of the linearized theory.
struct MomentState {
    double p_D = 0;  // <sigma_D^dag sigma_D>
    double p_A = 0;  // <sigma_A^dag sigma_A>
    double n = 0;    // <a^dag a>
    cxd c_DA;        // <sigma_D^dag sigma_A>
    cxd c_aD;        // <a^dag sigma_D>
    cxd c_aA;        // <a^dag sigma_A>

    /// Populations in [0,1], n >= 0, |c_DA| within the Cauchy-Schwarz bound.
    bool physical(double slack = 1e-9) const;
};

/// Real drift over x = (p_D, p_A, n, Re c_DA, Im c_DA, Re c_aD, Im c_aD,
/// Re c_aA, Im c_aA); the pump enters through the source vector only.
struct MomentSystem {
    ComplexMatrix drift;            // 9x9, entries real
    std::array<double, 9> source{}; // Gamma in the p_D row
};

/// Linearized equations of motion with every population-coherence product
/// dropped. Coherent drive is out of scope for this closure (UnsupportedPump).
MomentSystem build_moment_system(const SystemSpec& spec);

/// Solves drift x = -source after verifying the drift is Hurwitz; a
/// non-negative drift eigenvalue real part raises Unstable (pump too strong
/// against gamma_tot - gamma_bar).
MomentState moment_steady_state(const SystemSpec& spec);

/// 2x2 drift of (<sigma_D>, <sigma_A>): collective decay splits its spectrum
/// into -(gamma_tot +- gamma_bar)/2 - Gamma/2 at Delta = 0.
ComplexMatrix single_emitter_drift(const SystemSpec& spec);

/// Cavity-modified decay rates from adiabatic elimination of the field.
struct EffectiveRates {
    double gamma_D_eff = 0;
    double gamma_A_eff = 0;
    double gamma_AD_eff = 0;
    bool adiabatic_ok = true;  // false when kappa < 10 max(g_D, g_A)
};

EffectiveRates adiabatic_cavity_rates(const SystemSpec& spec);

/// Flows carried by a moment state (same definitions as the density-matrix path).
struct MomentFlows {
    double J, J_D, J_A, J_r;
};
MomentFlows moment_flows(const MomentState& m, const SystemSpec& spec);

}  // namespace etsim
