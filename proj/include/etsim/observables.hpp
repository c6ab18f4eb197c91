#pragma once

#include "etsim/master.hpp"
#include "etsim/system.hpp"

namespace etsim {

enum class Normalization { Raw, PerGamma, PerEta };

/// Steady-state energy flows and populations extracted from a density matrix.
struct FlowReport {
    double J = 0;    // 2 Omega Im<sigma_D sigma_A^dag>
    double J_D = 0;  // 2 g_D  Im<sigma_D a^dag>
    double J_A = 0;  // 2 g_A  Im<a sigma_A^dag>
    double J_r = 0;  // 2 Omega Re<sigma_D sigma_A^dag>
    double p_D = 0;
    double p_A = 0;
    double n = 0;
    Normalization normalization = Normalization::Raw;
};

FlowReport energy_flows(const DensityMatrix& rho, const SystemSpec& spec, const OperatorSet& ops);

/// Divides the flows by the pump strength (Gamma or eta per pump mode);
/// Raw input required.
FlowReport normalize_per_pump(FlowReport report, const SystemSpec& spec);

/// Wootters concurrence of the donor-acceptor pair after tracing out the
/// cavity. Uses the eigenvalues of rho rho~ (no matrix square roots).
double concurrence(const DensityMatrix& rho, const HilbertLayout& layout);

}  // namespace etsim
