#include "etsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "etsim/formulas.hpp"
#include "etsim/master.hpp"
#include "etsim/moments.hpp"
#include "etsim/observables.hpp"
#include "etsim/polariton.hpp"
#include "etsim/sweep.hpp"

namespace etsim {

namespace {

// Flow-reversal window of j_free_space_full on the fig2a parallel preset
// (Delta = 200, gamma' = 0.1, full gamma_bar(d)), frozen from a scripted
// bisection of the analytic formula.
constexpr double kReversalLo = 0.0289592916926726;   // d / lambda
constexpr double kReversalHi = 0.445376971865889;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

SystemSpec free_space_spec(double Delta, double Omega, double gamma_bar, double gamma_prime, double gamma_phi,
                           double Gamma) {
    SystemSpec s;
    s.Delta = Delta;
    s.Omega = Omega;
    s.gamma_bar = gamma_bar;
    s.rates.gamma_prime = gamma_prime;
    s.rates.gamma_phi = gamma_phi;
    s.kappa = 1.0;  // empty decoupled mode
    s.pump = PumpSpec::incoherent(Gamma);
    s.n_cav = 1;
    return s;
}

FlowReport master_flows(const SystemSpec& spec, bool spectral_checks = false) {
    const OperatorSet ops = build_operators(spec);
    const DensityMatrix rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{spectral_checks});
    return energy_flows(rho, spec, ops);
}

struct MasterMoments {
    double p_D, p_A, n;
    cxd c_DA, c_aD, c_aA;
};

MasterMoments master_moments(const SystemSpec& spec) {
    const OperatorSet ops = build_operators(spec);
    const DensityMatrix rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{false});
    MasterMoments m;
    m.p_D = expectation(ops.sigma_D.adjoint() * ops.sigma_D, rho.matrix).real();
    m.p_A = expectation(ops.sigma_A.adjoint() * ops.sigma_A, rho.matrix).real();
    m.n = expectation(ops.a.adjoint() * ops.a, rho.matrix).real();
    m.c_DA = expectation(ops.sigma_D.adjoint() * ops.sigma_A, rho.matrix);
    m.c_aD = expectation(ops.a.adjoint() * ops.sigma_D, rho.matrix);
    m.c_aA = expectation(ops.a.adjoint() * ops.sigma_A, rho.matrix);
    return m;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// ---------------------------------------------------------------- criterion 1
CriterionResult criterion_free_space_agreement() {
    const double Gamma = 1e-3, gp = 0.1;
    double worst = 0;
    std::string at;
    for (double Delta : linspace(0, 400, 5))
        for (double Omega : logspace(0.1, 50, 5))
            for (double gbar : {0.0, 0.5, 0.95})
                for (double gphi : {0.0, 1.0, 10.0}) {
                    const SystemSpec spec = free_space_spec(Delta, Omega, gbar, gp, gphi, Gamma);
                    const double j = master_flows(spec, true).J / Gamma;
                    const double ref = j_free_space_full(Delta, Omega, 1.0, gp, gphi, gbar);
                    const double err = std::abs(j - ref) / std::max(std::abs(ref), 1e-6 / 0.01);
                    // err uses the 1e-6 absolute floor folded into the denominator
                    if (err > worst) {
                        worst = err;
                        at = "Delta=" + fmt(Delta) + " Omega=" + fmt(Omega) + " gbar=" + fmt(gbar) +
                             " gphi=" + fmt(gphi);
                    }
                }
    return {1, "free-space analytic agreement", worst < 0.01,
            "worst rel err " + fmt(worst) + " at " + at + " (tol 1%)"};
}

// ---------------------------------------------------------------- criterion 2
CriterionResult criterion_flow_maximum() {
    const double Gamma = 1e-3;
    const SystemSpec spec = free_space_spec(0, 100, 0, 0, 0, Gamma);
    const double j = master_flows(spec, true).J / Gamma;
    const bool pass = std::abs(j - 0.5) <= 0.005 * 0.5;
    return {2, "flow maximum 1/2", pass, "J/Gamma = " + fmt(j) + " (target 0.5 within 0.5%)"};
}

// ---------------------------------------------------------------- criterion 3
CriterionResult criterion_d6_scaling() {
    const double Gamma = 1e-3;
    std::vector<double> lx, ly;
    for (double d : logspace(0.05, 0.2, 33)) {
        const GeometrySpec geom = GeometrySpec::perpendicular(d, 1.0);
        EmitterRates rates;
        rates.gamma_prime = 0.1;
        const double Omega = dipole_shift(geom, rates);
        const SystemSpec spec = free_space_spec(200, Omega, 0, 0.1, 0, Gamma);  // gamma_bar forced 0
        const double j = master_flows(spec).J / Gamma;
        lx.push_back(std::log(d));
        ly.push_back(std::log(std::abs(j)));
    }
    const double slope = ls_slope(lx, ly);
    return {3, "d^-6 scaling", std::abs(slope + 6.0) <= 0.1,
            "log-log LS slope " + fmt(slope) + " (target -6 +- 0.1)"};
}

// ---------------------------------------------------------------- criterion 4
CriterionResult criterion_flow_reversal() {
    EmitterRates rates;
    rates.gamma_prime = 0.1;
    auto j_par = [&](double d, bool with_gbar) {
        const GeometrySpec geom = GeometrySpec::parallel(d, 1.0);
        const double Om = dipole_shift(geom, rates);
        const double gb = with_gbar ? mutual_decay(geom, rates) : 0.0;
        return j_free_space_full(200, Om, 1.0, 0.1, 0.0, gb);
    };

    // bisect the analytic sign changes bracketing the frozen window
    auto bisect = [&](double lo, double hi) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((j_par(lo, true) < 0) == (j_par(mid, true) < 0)) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double lo = bisect(0.02, 0.05);
    const double hi = bisect(0.4, 0.5);
    const bool golden_ok = std::abs(lo - kReversalLo) < 1e-6 * kReversalLo &&
                           std::abs(hi - kReversalHi) < 1e-6 * kReversalHi;

    // master equation sees the reversal inside the window and none without gbar
    const double Gamma = 1e-3;
    bool master_neg = true, master_pos_all = true;
    for (double d : logspace(0.032, 0.42, 7)) {
        const GeometrySpec geom = GeometrySpec::parallel(d, 1.0);
        const double Om = dipole_shift(geom, rates);
        const double gb = mutual_decay(geom, rates);
        const SystemSpec with = free_space_spec(200, Om, gb, 0.1, 0, Gamma);
        if (master_flows(with).J >= 0) master_neg = false;
    }
    for (double d : logspace(0.01, 0.6, 25)) {
        const GeometrySpec geom = GeometrySpec::parallel(d, 1.0);
        const double Om = dipole_shift(geom, rates);
        const SystemSpec without = free_space_spec(200, Om, 0, 0.1, 0, Gamma);
        if (master_flows(without).J <= 0) master_pos_all = false;
    }
    // analytic sign outside the window
    const bool outside_pos = j_par(0.02, true) > 0 && j_par(0.48, true) > 0;

    const bool pass = golden_ok && master_neg && master_pos_all && outside_pos;
    return {4, "flow reversal window", pass,
            "analytic window d/lambda = [" + fmt(lo) + ", " + fmt(hi) + "] vs golden [" + fmt(kReversalLo) +
                ", " + fmt(kReversalHi) + "]; master J<0 inside: " + (master_neg ? "yes" : "no") +
                "; J>0 with gbar=0: " + (master_pos_all ? "yes" : "no")};
}

// ---------------------------------------------------------------- criterion 5
CriterionResult criterion_strong_cooperativity() {
    const double Gamma = 1e-3, Delta = 200, kappa = 2000, delta = 100;  // delta = Delta/2
    double worst = 0;
    for (double g : {20.0, 70.0}) {
        for (double d : logspace(0.05, 0.5, 25)) {
            const GeometrySpec geom = GeometrySpec::perpendicular(d, 1.0);
            EmitterRates rates;
            const double Om = dipole_shift(geom, rates);
            const double gb = mutual_decay(geom, rates);
            SystemSpec spec = free_space_spec(Delta, Om, gb, 0, 0, Gamma);
            spec.delta = delta;
            spec.g_D = spec.g_A = g;
            spec.kappa = kappa;
            spec.n_cav = 2;
            const double j = master_flows(spec).J / Gamma;

            const EffectiveRates er = adiabatic_cavity_rates(spec);
            const double gamma_eff = 1.0 + 0.5 * ((er.gamma_D_eff - 1.0) + (er.gamma_A_eff - 1.0));
            const double ref = j_cavity_cooperativity(Delta, Om, gamma_eff, gb + er.gamma_AD_eff);
            worst = std::max(worst, std::abs(j - ref) / std::abs(ref));
        }
    }
    return {5, "strong-cooperativity formula", worst < 0.05,
            "worst rel deviation " + fmt(worst) + " (tol 5%)"};
}

// ---------------------------------------------------------------- criterion 6
CriterionResult criterion_optimal_detuning() {
    const double gA = 50, gD = 10, kappa = 10, Delta = 40, Gamma = 1e-3;
    const double d_opt = optimal_cavity_detuning(Delta, gD, gA);

    auto jA_at = [&](double delta) {
        SystemSpec spec;
        spec.Delta = Delta;
        spec.delta = delta;
        spec.g_D = gD;
        spec.g_A = gA;
        spec.kappa = kappa;
        spec.pump = PumpSpec::incoherent(Gamma);
        spec.n_cav = 2;
        return master_flows(spec).J_A;
    };

    const auto deltas = linspace(-34, -16, 37);
    std::vector<double> ja;
    for (double d : deltas) ja.push_back(jA_at(d));
    size_t imax = std::max_element(ja.begin(), ja.end()) - ja.begin();
    double d_star = deltas[imax];
    if (imax > 0 && imax + 1 < ja.size()) {
        const double h = deltas[1] - deltas[0];
        d_star += 0.5 * h * (ja[imax - 1] - ja[imax + 1]) /
                  (ja[imax - 1] - 2 * ja[imax] + ja[imax + 1]);
    }
    const bool argmax_ok = std::abs(d_star - d_opt) <= 0.05 * std::abs(d_opt);

    // root-find the middle-polariton Hopfield crossing
    auto crossing = [&](double delta) {
        const PolaritonSet p = polariton_modes(Delta, delta, gD, gA);
        return p.hopfield[1][0] - p.hopfield[1][2];
    };
    double lo = -30, hi = -20;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((crossing(lo) < 0) == (crossing(mid) < 0)) lo = mid;
        else hi = mid;
    }
    const double d_cross = 0.5 * (lo + hi);
    const bool crossing_ok = std::abs(d_cross - d_opt) <= 1e-6;

    const double ratio = jA_at(d_opt) / ja[imax];
    return {6, "optimal cavity detuning", argmax_ok && crossing_ok,
            "argmax delta = " + fmt(d_star) + " vs delta_opt = " + fmt(d_opt) + " (budget " +
                fmt(0.05 * std::abs(d_opt)) + "); Hopfield crossing root-find gap " +
                fmt(std::abs(d_cross - d_opt)) + "; J_A(delta_opt)/max J_A = " + fmt(ratio)};
}

// ---------------------------------------------------------------- criterion 7
CriterionResult criterion_coherent_formulas() {
    std::mt19937 rng(20240811);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    const double eta = 0.01;

    double worst_free = 0;
    for (int i = 0; i < 40; ++i) {
        const double Delta = uni(1, 50), Omega = uni(0.5, 10), wL = uni(-20, 60);
        SystemSpec spec = free_space_spec(Delta, Omega, 0, 0, 0, 0);
        spec.pump = PumpSpec::coherent(eta, wL);
        const double j = master_flows(spec).J;
        const double ref = j_coherent_free(Delta, Omega, 1.0, eta, wL);
        worst_free = std::max(worst_free, std::abs(j - ref) / std::abs(ref));
    }

    // the cavity formula idealizes gamma, kappa -> 0 in the resonance
    // denominator: detunings are drawn far above gamma and points closer than
    // 1e-2 max(rate)^3 to the pole are rejected
    double worst_cav = 0;
    int kept = 0;
    while (kept < 40) {
        const double Delta = uni(100, 600), delta = uni(-400, 400), wL = uni(-600, 800), g = uni(50, 400);
        const double br = g * g * (Delta - wL) + wL * (-g * g + (delta - wL) * (Delta - wL));
        const double scale = std::pow(std::max({g, std::abs(Delta - wL), std::abs(wL), std::abs(delta - wL)}), 3);
        if (std::abs(br) <= 1e-2 * scale) continue;
        ++kept;
        SystemSpec spec;
        spec.Delta = Delta;
        spec.delta = delta;
        spec.g_D = spec.g_A = g;
        spec.kappa = 0.1;
        spec.pump = PumpSpec::coherent(eta, wL);
        spec.n_cav = 2;
        const double jA = master_flows(spec).J_A;
        const double ref = j_a_coherent_cavity(Delta, delta, g, g, 1.0, eta, wL);
        worst_cav = std::max(worst_cav, std::abs(jA - ref) / std::abs(ref));
    }
    const bool pass = worst_free < 0.03 && worst_cav < 0.03;
    return {7, "coherent-drive formulas", pass,
            "worst rel dev: free " + fmt(worst_free) + ", cavity " + fmt(worst_cav) + " (tol 3%)"};
}

// ---------------------------------------------------------------- criterion 8
CriterionResult criterion_moment_closure() {
    std::mt19937 rng(777);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    const double Gamma = 1e-3;
    double worst = 0, worst_balance = 0;
    for (int i = 0; i < 50; ++i) {
        SystemSpec spec;
        spec.Delta = uni(0.5, 50);
        spec.delta = uni(-20, 20);
        spec.Omega = uni(0.1, 5);
        spec.rates.gamma_prime = uni(0, 1);
        spec.rates.gamma_phi = uni(0, 2);
        spec.g_D = spec.g_A = uni(0.2, 5);
        spec.kappa = uni(2, 50);
        spec.gamma_bar = uni(0, 0.5);
        spec.pump = PumpSpec::incoherent(Gamma);
        spec.n_cav = 2;

        const MomentState lin = moment_steady_state(spec);
        const MasterMoments full = master_moments(spec);

        const double mscale = std::max({full.p_D, full.p_A, full.n, std::abs(full.c_DA),
                                        std::abs(full.c_aD), std::abs(full.c_aA)});
        const double floor = 1e-6 * mscale;
        auto rel = [&](cxd a, cxd b) { return std::abs(a - b) / std::max(std::abs(b), floor); };
        worst = std::max({worst, rel(lin.p_D, full.p_D), rel(lin.p_A, full.p_A), rel(lin.n, full.n),
                          rel(lin.c_DA, full.c_DA), rel(lin.c_aD, full.c_aD), rel(lin.c_aA, full.c_aA)});

        // balance identities on the moment solution (flow balance at gamma_bar = 0)
        SystemSpec nb = spec;
        nb.gamma_bar = 0;
        const MomentState m0 = moment_steady_state(nb);
        const MomentFlows f0 = moment_flows(m0, nb);
        const double gtot = nb.rates.gamma_tot_D();
        const double r1 = Gamma - (Gamma + gtot) * m0.p_D - f0.J - f0.J_D;
        const double r2 = -(Gamma + gtot) * m0.p_A + f0.J + f0.J_A;
        const MomentFlows f = moment_flows(lin, spec);
        const double r3 = spec.kappa * lin.n - (f.J_D - f.J_A);
        worst_balance = std::max({worst_balance, std::abs(r1), std::abs(r2), std::abs(r3)});
    }
    const bool pass = worst < 1e-3 && worst_balance < 1e-10;
    return {8, "moment-closure fidelity", pass,
            "worst moment rel dev " + fmt(worst) + " (tol 1e-3); worst balance residual " +
                fmt(worst_balance) + " (tol 1e-10)"};
}

// ---------------------------------------------------------------- criterion 9
CriterionResult criterion_subradiance_spectrum() {
    double worst = 0;
    for (double gbar : linspace(0, 1, 101)) {
        for (double Gamma : {0.0, 0.2}) {
            SystemSpec spec;
            spec.Omega = 0.7;
            spec.gamma_bar = gbar;
            spec.pump = Gamma > 0 ? PumpSpec::incoherent(Gamma) : PumpSpec::none();
            auto ev = eig_general(single_emitter_drift(spec));
            std::vector<double> re{ev[0].real(), ev[1].real()};
            std::sort(re.begin(), re.end());
            const double lo = -(1.0 + gbar) / 2 - Gamma / 2;
            const double hi = -(1.0 - gbar) / 2 - Gamma / 2;
            worst = std::max({worst, std::abs(re[0] - lo), std::abs(re[1] - hi)});
        }
    }

    bool degenerate_flagged = false;
    std::string dicke = "no error raised";
    try {
        SystemSpec spec;
        spec.Omega = 1.0;
        spec.gamma_bar = 1.0;  // Dicke limit, gamma' = Gamma = 0
        spec.kappa = 1.0;
        const auto rho = steady_state(liouvillian(spec), SteadyStateOptions{true});
        (void)rho;
    } catch (const NonUniqueSteadyState&) {
        degenerate_flagged = true;
        dicke = "NonUniqueSteadyState raised";
    }
    const bool pass = worst < 1e-10 && degenerate_flagged;
    return {9, "subradiance spectral check", pass,
            "worst drift eigenvalue error " + fmt(worst) + " (tol 1e-10); Dicke limit: " + dicke};
}

// --------------------------------------------------------------- criterion 10
CriterionResult criterion_concurrence_suite() {
    const HilbertLayout two_qubits{{2, 2}};

    // Bell (x) vacuum
    ComplexMatrix bell_vec(4, 1);
    bell_vec(0, 0) = 1.0 / std::sqrt(2.0);
    bell_vec(3, 0) = 1.0 / std::sqrt(2.0);
    ComplexMatrix bell(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bell(i, j) = bell_vec(i, 0) * std::conj(bell_vec(j, 0));
    ComplexMatrix vac(2, 2);
    vac(0, 0) = 1.0;
    const HilbertLayout dac{{2, 2, 2}};
    const DensityMatrix bell_cav{kron(bell, vac), dac};
    const double c_bell = concurrence(bell_cav, dac);

    // product state
    std::mt19937 rng(4242);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    auto random_qubit = [&]() {
        ComplexMatrix r(2, 2);
        const double p = uni(0, 1);
        r(0, 0) = p;
        r(1, 1) = 1 - p;
        const cxd off = cxd(uni(-0.3, 0.3), uni(-0.3, 0.3));
        r(0, 1) = off;
        r(1, 0) = std::conj(off);
        return r;
    };
    const DensityMatrix product{kron(random_qubit(), random_qubit()), two_qubits};
    const double c_prod = concurrence(product, two_qubits);

    // Werner state at p = 1/2
    ComplexMatrix phi_plus(4, 4);
    phi_plus(0, 0) = phi_plus(0, 3) = phi_plus(3, 0) = phi_plus(3, 3) = 0.5;
    ComplexMatrix werner = 0.5 * phi_plus + 0.125 * ComplexMatrix::identity(4);
    const double c_werner = concurrence(DensityMatrix{werner, two_qubits}, two_qubits);

    // local-unitary invariance
    auto random_unitary = [&]() {
        ComplexMatrix h(2, 2);
        h(0, 0) = uni(-1, 1);
        h(1, 1) = uni(-1, 1);
        const cxd off = cxd(uni(-1, 1), uni(-1, 1));
        h(0, 1) = off;
        h(1, 0) = std::conj(off);
        return eig_hermitian(h).eigenvectors;
    };
    double worst_lu = 0;
    for (int trial = 0; trial < 20; ++trial) {
        // full-rank random mixed states: rank-deficient inputs put exact zeros
        // into the spectrum of rho rho~, whose square roots amplify solver
        // roundoff to ~1e-8 for any eigenvalue-based route
        ComplexMatrix m(4, 4), psi(4, 1);
        for (int i = 0; i < 4; ++i) {
            psi(i, 0) = cxd(uni(-1, 1), uni(-1, 1));
            for (int j = 0; j < 4; ++j) m(i, j) = cxd(uni(-1, 1), uni(-1, 1));
        }
        ComplexMatrix w = m * m.adjoint();
        w *= cxd(0.25 / w.trace().real());
        ComplexMatrix pure(4, 4);
        double nrm = 0;
        for (int i = 0; i < 4; ++i) nrm += std::norm(psi(i, 0));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) pure(i, j) = 0.75 * psi(i, 0) * std::conj(psi(j, 0)) / nrm;
        const ComplexMatrix rho4 = pure + w;
        const double c0 = concurrence(DensityMatrix{rho4, two_qubits}, two_qubits);
        const ComplexMatrix u = kron(random_unitary(), random_unitary());
        const ComplexMatrix rot = u * rho4 * u.adjoint();
        const double c1 = concurrence(DensityMatrix{rot, two_qubits}, two_qubits);
        worst_lu = std::max(worst_lu, std::abs(c1 - c0));
    }

    // fig 2b/c argmax separation on a 41x41 grid
    const double Gamma = 1e-2;
    double best_j = -1, best_c = -1;
    std::pair<int, int> arg_j{-1, -1}, arg_c{-1, -1};
    const auto deltas = linspace(0, 10, 41);
    const auto omegas = linspace(0.1, 5, 41);
    for (int i = 0; i < 41; ++i)
        for (int k = 0; k < 41; ++k) {
            const SystemSpec spec = free_space_spec(deltas[i], omegas[k], 0, 0, 0, Gamma);
            const OperatorSet ops = build_operators(spec);
            const DensityMatrix rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{false});
            const double j = energy_flows(rho, spec, ops).J;
            const double c = concurrence(rho, spec.layout());
            if (j > best_j) {
                best_j = j;
                arg_j = {i, k};
            }
            if (c > best_c) {
                best_c = c;
                arg_c = {i, k};
            }
        }

    const bool pass = std::abs(c_bell - 1) < 1e-9 && c_prod < 1e-9 && std::abs(c_werner - 0.25) < 1e-9 &&
                      worst_lu < 1e-9 && arg_j != arg_c;
    return {10, "concurrence suite", pass,
            "Bell " + fmt(c_bell) + ", product " + fmt(c_prod) + ", Werner(0.5) " + fmt(c_werner) +
                ", LU-invariance " + fmt(worst_lu) + ", argmax J cell (" + fmt(arg_j.first) + "," +
                fmt(arg_j.second) + ") vs C cell (" + fmt(arg_c.first) + "," + fmt(arg_c.second) + ")"};
}

// --------------------------------------------------------------- criterion 11
CriterionResult criterion_incoherent_pump_reduction() {
    const double eta = 1.0, gamma_ie = 100.0, gamma_ig = 0.0, gamma_e = 1.0;

    // three-level donor: basis (g, e, i)
    ComplexMatrix h(3, 3);
    h(2, 0) = h(0, 2) = eta;
    ComplexMatrix ei(3, 3), ge(3, 3);
    ei(1, 2) = 1.0;  // |e><i|
    ge(0, 1) = 1.0;  // |g><e|
    DissipatorList diss;
    diss.entries.push_back({gamma_ie, ei, "relax_ie"});
    diss.entries.push_back({gamma_e, ge, "decay_e"});
    const HilbertLayout l3{{3}};
    const DensityMatrix rho = steady_state(liouvillian(h, diss, l3));
    const double pe3 = rho.matrix(1, 1).real();

    const EffectivePump pump = effective_pump_rate(eta, gamma_ie, gamma_ig, gamma_e);
    const double pe2 = pump.Gamma_eff / (pump.Gamma_eff + gamma_e);

    const double dev = std::abs(pe3 - pe2) / pe3;
    return {11, "incoherent-pump reduction", dev < 0.05,
            "three-level p_e " + fmt(pe3) + " vs two-level " + fmt(pe2) + ", rel dev " + fmt(dev) +
                " (tol 5%)"};
}

// --------------------------------------------------------------- criterion 12
CriterionResult criterion_determinism_convergence(int threads) {
    std::string detail;
    bool pass = true;
    for (const auto& name : preset_names()) {
        SweepConfig cfg = builtin_preset(name);
        const SweepResult r1 = run_sweep(cfg, 1);
        const SweepResult r2 = run_sweep(cfg, 1);
        const SweepResult r3 = run_sweep(cfg, std::max(2, threads));
        const std::string c1 = to_csv(r1), c2 = to_csv(r2), c3 = to_csv(r3);
        const bool stable = c1 == c2 && c1 == c3;
        bool all_ok = true;
        for (const auto& st : r1.status) all_ok &= st == "ok";

        SweepConfig doubled = cfg;
        doubled.n_cav *= 2;
        const SweepResult r4 = run_sweep(doubled, std::max(2, threads));
        // |a - b| < max(1e-6 |b|, 2e-15): changes below ~10 eps absolute are
        // indistinguishable from no change in double precision
        double worst = 0;
        const size_t naxes = cfg.axes.size();
        for (size_t r = 0; r < r1.rows.size(); ++r)
            for (size_t c = naxes; c < r1.rows[r].size(); ++c) {
                const double a = r1.rows[r][c], b = r4.rows[r][c];
                if (std::isnan(a) && std::isnan(b)) continue;
                worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 2e-9));
            }
        const bool converged = worst < 1e-6;
        if (!stable || !converged || !all_ok) {
            pass = false;
            detail += name + (stable ? "" : " NOT byte-stable") + (converged ? "" : " truncation dev " + fmt(worst)) +
                      (all_ok ? "" : " has flagged points") + "; ";
        } else {
            detail += name + " ok (ncav dev " + fmt(worst) + "); ";
        }
    }
    return {12, "determinism and truncation convergence", pass, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only, int threads) {
    using Fn = std::function<CriterionResult()>;
    const std::vector<Fn> table = {
        criterion_free_space_agreement,
        criterion_flow_maximum,
        criterion_d6_scaling,
        criterion_flow_reversal,
        criterion_strong_cooperativity,
        criterion_optimal_detuning,
        criterion_coherent_formulas,
        criterion_moment_closure,
        criterion_subradiance_spectrum,
        criterion_concurrence_suite,
        criterion_incoherent_pump_reduction,
        [threads] { return criterion_determinism_convergence(threads); },
    };
    std::vector<CriterionResult> out;
    for (int i = 0; i < static_cast<int>(table.size()); ++i) {
        const int id = i + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        out.push_back(table[i]());
    }
    return out;
}

std::string format_results(const std::vector<CriterionResult>& results) {
    std::ostringstream s;
    for (const auto& r : results)
        s << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.detail << "\n";
    return s.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace etsim
