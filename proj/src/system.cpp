#include "etsim/system.hpp"

#include <cmath>

namespace etsim {

PumpSpec PumpSpec::incoherent(double Gamma) {
    PumpSpec p;
    p.mode = PumpMode::Incoherent;
    p.Gamma = Gamma;
    return p;
}

PumpSpec PumpSpec::coherent(double eta, double omega_L) {
    PumpSpec p;
    p.mode = PumpMode::Coherent;
    p.eta = eta;
    p.omega_L = omega_L;
    return p;
}

void SystemSpec::validate() const {
    rates.validate();
    if (n_cav < 1) throw Error("n_cav must be at least 1");
    if (kappa < 0) throw Error("kappa must be non-negative");
    if (std::abs(gamma_bar) > std::sqrt(rates.gamma_D * rates.gamma_A) * (1.0 + 1e-12))
        throw UnphysicalMutualDecay("|gamma_bar| exceeds sqrt(gamma_D gamma_A)");
    if (pump.mode == PumpMode::Incoherent && pump.Gamma < 0) throw Error("Gamma must be non-negative");
}

namespace {

// qubit basis (g, e): lowering |g><e|
ComplexMatrix qubit_lowering() {
    ComplexMatrix s(2, 2);
    s(0, 1) = 1.0;
    return s;
}

ComplexMatrix annihilation(int dim) {
    ComplexMatrix a(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

}  // namespace

OperatorSet build_operators(const SystemSpec& spec) {
    spec.validate();
    const int nc = spec.n_cav + 1;
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix ic = ComplexMatrix::identity(nc);
    const ComplexMatrix low = qubit_lowering();
    OperatorSet ops;
    ops.sigma_D = kron(kron(low, i2), ic);
    ops.sigma_A = kron(kron(i2, low), ic);
    ops.a = kron(kron(i2, i2), annihilation(nc));
    ops.layout = spec.layout();
    return ops;
}

ComplexMatrix build_hamiltonian(const SystemSpec& spec, const OperatorSet& ops) {
    spec.validate();
    const ComplexMatrix nD = ops.sigma_D.adjoint() * ops.sigma_D;
    const ComplexMatrix nA = ops.sigma_A.adjoint() * ops.sigma_A;
    const ComplexMatrix nC = ops.a.adjoint() * ops.a;

    double eD = spec.Delta, eA = 0.0, eC = spec.delta;
    if (spec.pump.mode == PumpMode::Coherent) {
        eD -= spec.pump.omega_L;
        eA -= spec.pump.omega_L;
        eC -= spec.pump.omega_L;
    }

    ComplexMatrix h = eD * nD + eA * nA + eC * nC;
    h += spec.Omega * (ops.sigma_D.adjoint() * ops.sigma_A + ops.sigma_A.adjoint() * ops.sigma_D);
    h += spec.g_D * (ops.sigma_D.adjoint() * ops.a + ops.a.adjoint() * ops.sigma_D);
    h += spec.g_A * (ops.sigma_A.adjoint() * ops.a + ops.a.adjoint() * ops.sigma_A);
    if (spec.pump.mode == PumpMode::Coherent) h += spec.pump.eta * (ops.sigma_D + ops.sigma_D.adjoint());
    return h;
}

ComplexMatrix build_hamiltonian(const SystemSpec& spec) { return build_hamiltonian(spec, build_operators(spec)); }

ComplexMatrix sigma_z_of(const ComplexMatrix& lowering) {
    return lowering.adjoint() * lowering - lowering * lowering.adjoint();
}

DissipatorList build_dissipators(const SystemSpec& spec, const OperatorSet& ops) {
    spec.validate();
    DissipatorList d;
    d.entries.push_back({spec.rates.gamma_tot_D(), ops.sigma_D, "decay_D"});
    d.entries.push_back({spec.rates.gamma_tot_A(), ops.sigma_A, "decay_A"});
    if (spec.rates.gamma_phi > 0) {
        // rate gamma_phi/2 with collapse sigma^z: single-emitter coherences damp
        // at gamma_phi, the donor-acceptor coherence at 2 gamma_phi.
        d.entries.push_back({spec.rates.gamma_phi / 2.0, sigma_z_of(ops.sigma_D), "dephase_D"});
        d.entries.push_back({spec.rates.gamma_phi / 2.0, sigma_z_of(ops.sigma_A), "dephase_A"});
    }
    d.entries.push_back({spec.kappa, ops.a, "cavity"});
    if (spec.pump.mode == PumpMode::Incoherent && spec.pump.Gamma > 0) {
        d.entries.push_back({spec.pump.Gamma, ops.sigma_D.adjoint(), "pump_D"});
        d.entries.push_back({spec.pump.Gamma, ops.sigma_A, "drain_A"});
    }
    if (spec.gamma_bar != 0.0)
        d.collective = DissipatorList::Collective{spec.gamma_bar, ops.sigma_D, ops.sigma_A};
    return d;
}

}  // namespace etsim
