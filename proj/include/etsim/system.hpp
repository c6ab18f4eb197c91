#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etsim/dipole.hpp"
#include "etsim/matrix.hpp"

namespace etsim {

enum class PumpMode { None, Incoherent, Coherent };

/// Pump/drive configuration. Incoherent mode uses Gamma (pump on the donor,
/// drain on the acceptor, same rate); Coherent mode uses (eta, omega_L).
struct PumpSpec {
    PumpMode mode = PumpMode::None;
    double Gamma = 0.0;    // incoherent pump/drain rate
    double eta = 0.0;      // coherent drive amplitude
    double omega_L = 0.0;  // laser detuning from the acceptor

    static PumpSpec none() { return {}; }
    static PumpSpec incoherent(double Gamma);
    static PumpSpec coherent(double eta, double omega_L);
};

/// Full parameter set of one simulation run; all rates in units of the
/// zero-phonon rate gamma. Basis ordering is donor (x) acceptor (x) cavity.
struct SystemSpec {
    double Delta = 0.0;      // omega_D - omega_A
    double delta = 0.0;      // omega_cav - omega_A
    double Omega = 0.0;      // dipole-dipole shift
    double gamma_bar = 0.0;  // mutual decay rate
    EmitterRates rates;
    double g_D = 0.0;
    double g_A = 0.0;
    double kappa = 0.0;
    PumpSpec pump;
    int n_cav = 1;  // photon-number cutoff; cavity dimension = n_cav + 1

    HilbertLayout layout() const { return HilbertLayout{{2, 2, n_cav + 1}}; }
    void validate() const;  // throws UnphysicalMutualDecay / Error
};

/// Lowering and annihilation operators embedded in the composite space.
struct OperatorSet {
    ComplexMatrix sigma_D;
    ComplexMatrix sigma_A;
    ComplexMatrix a;
    HilbertLayout layout;

    int dim() const { return sigma_D.rows(); }
};

/// (rate, collapse operator) entries plus the non-standard collective term,
/// which needs both lowering operators and is built separately.
struct DissipatorList {
    struct Entry {
        double rate;
        ComplexMatrix op;
        std::string label;
    };
    struct Collective {
        double gamma_bar;
        ComplexMatrix sigma_D;
        ComplexMatrix sigma_A;
    };
    std::vector<Entry> entries;
    std::optional<Collective> collective;
};

OperatorSet build_operators(const SystemSpec& spec);

/// Hamiltonian in the acceptor frame (None/Incoherent) or the laser frame
/// (Coherent: all detunings shifted by -omega_L, drive term eta(sigma_D + h.c.)).
ComplexMatrix build_hamiltonian(const SystemSpec& spec, const OperatorSet& ops);

ComplexMatrix build_hamiltonian(const SystemSpec& spec);

/// Dissipator list: emitter decay at gamma_X + gamma', dephasing via sigma^z
/// at rate gamma_phi/2 per emitter (coherences then damp at the 2 gamma_phi of
/// the correlation equations), cavity decay, pump/drain in Incoherent mode,
/// collective (gamma_bar, sigma_D, sigma_A) when gamma_bar != 0.
DissipatorList build_dissipators(const SystemSpec& spec, const OperatorSet& ops);

/// sigma^z = [sigma^dag, sigma] for a lowering operator on the composite space.
ComplexMatrix sigma_z_of(const ComplexMatrix& lowering);

}  // namespace etsim
