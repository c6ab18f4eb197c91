#include "etsim/moments.hpp"

#include <cmath>

namespace etsim {

bool MomentState::physical(double slack) const {
    if (p_D < -slack || p_D > 1 + slack || p_A < -slack || p_A > 1 + slack) return false;
    if (n < -slack) return false;
    return std::abs(c_DA) <= std::sqrt(std::max(p_D, 0.0) * std::max(p_A, 0.0)) + slack;
}

MomentSystem build_moment_system(const SystemSpec& spec) {
    spec.validate();
    if (spec.pump.mode == PumpMode::Coherent)
        throw UnsupportedPump("the moment closure covers incoherent pumping only");

    const double Gamma = spec.pump.mode == PumpMode::Incoherent ? spec.pump.Gamma : 0.0;
    const double gtot = 0.5 * (spec.rates.gamma_tot_D() + spec.rates.gamma_tot_A());
    const double gphi = spec.rates.gamma_phi;
    const double gb = spec.gamma_bar;
    const double Om = spec.Omega, gD = spec.g_D, gA = spec.g_A;
    const double Delta = spec.Delta, delta = spec.delta, kappa = spec.kappa;

    const double damp_c = Gamma + gtot + 2 * gphi;              // donor-acceptor coherence
    const double damp_ca = 0.5 * (Gamma + gtot + 2 * gphi + kappa);  // field-emitter coherences
    const double th = delta - Delta;

    MomentSystem sys;
    sys.drift = ComplexMatrix(9, 9);
    auto& m = sys.drift;
    enum { pD, pA, n, Rc, Ic, RD, ID, RA, IA };

    // populations and photon number; J = -2 Om Ic, J_D = 2 gD ID, J_A = -2 gA IA
    m(pD, pD) = -(Gamma + gtot);
    m(pD, Ic) = 2 * Om;
    m(pD, ID) = -2 * gD;
    m(pD, Rc) = -gb;
    m(pA, pA) = -(Gamma + gtot);
    m(pA, Ic) = -2 * Om;
    m(pA, IA) = -2 * gA;
    m(pA, Rc) = -gb;
    m(n, n) = -kappa;
    m(n, ID) = 2 * gD;
    m(n, IA) = 2 * gA;

    // d<sD^dag sA>/dt = i Om (pA - pD) - (damp_c - i Delta) c
    //                   + i gD c_aA - i gA conj(c_aD) - gb/2 (pA + pD)
    m(Rc, Rc) = -damp_c;
    m(Rc, Ic) = -Delta;
    m(Rc, pD) = -gb / 2;
    m(Rc, pA) = -gb / 2;
    m(Rc, IA) = -gD;
    m(Rc, ID) = -gA;
    m(Ic, Rc) = Delta;
    m(Ic, Ic) = -damp_c;
    m(Ic, pD) = -Om;
    m(Ic, pA) = Om;
    m(Ic, RA) = gD;
    m(Ic, RD) = -gA;

    // d<a^dag sD>/dt = i gD (pD - n) - (damp_ca - i th) c_aD
    //                  - (i Om + gb/2) c_aA + i gA conj(c_DA)
    m(RD, RD) = -damp_ca;
    m(RD, ID) = -th;
    m(RD, RA) = -gb / 2;
    m(RD, IA) = Om;
    m(RD, Ic) = gA;
    m(ID, pD) = gD;
    m(ID, n) = -gD;
    m(ID, RD) = th;
    m(ID, ID) = -damp_ca;
    m(ID, RA) = -Om;
    m(ID, IA) = -gb / 2;
    m(ID, Rc) = gA;

    // d<a^dag sA>/dt = i gA (pA - n) - (damp_ca - i delta) c_aA
    //                  - (i Om + gb/2) c_aD + i gD c_DA
    m(RA, RA) = -damp_ca;
    m(RA, IA) = -delta;
    m(RA, RD) = -gb / 2;
    m(RA, ID) = Om;
    m(RA, Ic) = -gD;
    m(IA, pA) = gA;
    m(IA, n) = -gA;
    m(IA, RA) = delta;
    m(IA, IA) = -damp_ca;
    m(IA, RD) = -Om;
    m(IA, ID) = -gb / 2;
    m(IA, Rc) = gD;

    sys.source[pD] = Gamma;
    return sys;
}

MomentState moment_steady_state(const SystemSpec& spec) {
    const MomentSystem sys = build_moment_system(spec);

    const auto spectrum = eig_general(sys.drift);
    const double scale = std::max(1.0, sys.drift.max_abs());
    for (const auto& z : spectrum)
        if (z.real() >= -1e-12 * scale)
            throw Unstable("moment drift is not Hurwitz; no steady state in this regime");

    std::vector<cxd> rhs(9);
    for (int i = 0; i < 9; ++i) rhs[i] = -sys.source[i];
    const auto x = solve_linear(sys.drift, rhs);

    MomentState m;
    m.p_D = x[0].real();
    m.p_A = x[1].real();
    m.n = x[2].real();
    m.c_DA = cxd(x[3].real(), x[4].real());
    m.c_aD = cxd(x[5].real(), x[6].real());
    m.c_aA = cxd(x[7].real(), x[8].real());
    return m;
}

ComplexMatrix single_emitter_drift(const SystemSpec& spec) {
    spec.validate();
    const double Gamma = spec.pump.mode == PumpMode::Incoherent ? spec.pump.Gamma : 0.0;
    const double gtot = 0.5 * (spec.rates.gamma_tot_D() + spec.rates.gamma_tot_A());
    const double diag = 0.5 * (gtot + Gamma) + spec.rates.gamma_phi;
    ComplexMatrix m(2, 2);
    m(0, 0) = cxd(-diag, -spec.Delta);
    m(1, 1) = cxd(-diag, 0.0);
    m(0, 1) = m(1, 0) = cxd(-spec.gamma_bar / 2.0, -spec.Omega);
    return m;
}

EffectiveRates adiabatic_cavity_rates(const SystemSpec& spec) {
    spec.validate();
    const double half = spec.kappa / 2.0;
    EffectiveRates r;
    r.gamma_A_eff = spec.rates.gamma_A +
                    spec.g_A * spec.g_A * spec.kappa / (half * half + spec.delta * spec.delta);
    const double dd = spec.delta - spec.Delta;
    r.gamma_D_eff = spec.rates.gamma_D + spec.g_D * spec.g_D * spec.kappa / (half * half + dd * dd);
    r.gamma_AD_eff = half > 0 ? spec.g_D * spec.g_A * spec.kappa / (half * half) : 0.0;
    r.adiabatic_ok = spec.kappa >= 10.0 * std::max(spec.g_D, spec.g_A);
    return r;
}

MomentFlows moment_flows(const MomentState& m, const SystemSpec& spec) {
    // J = 2 Om Im<sD sA^dag> with <sD sA^dag> = conj(c_DA); likewise for the links
    MomentFlows f;
    f.J = -2.0 * spec.Omega * m.c_DA.imag();
    f.J_r = 2.0 * spec.Omega * m.c_DA.real();
    f.J_D = 2.0 * spec.g_D * m.c_aD.imag();
    f.J_A = -2.0 * spec.g_A * m.c_aA.imag();
    return f;
}

}  // namespace etsim
