#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "etsim/formulas.hpp"
#include "etsim/master.hpp"
#include "etsim/observables.hpp"
#include "etsim/polariton.hpp"

using namespace etsim;

namespace {

std::mt19937 rng(2718);
double uni(double lo, double hi) { return lo + (hi - lo) * std::generate_canonical<double, 53>(rng); }

ComplexMatrix qubit_lowering() {
    ComplexMatrix s(2, 2);
    s(0, 1) = 1.0;
    return s;
}

SystemSpec pumped_spec() {
    SystemSpec s;
    s.Delta = uni(0, 20);
    s.delta = uni(-10, 10);
    s.Omega = uni(0, 3);
    s.rates.gamma_prime = uni(0, 0.5);
    s.rates.gamma_phi = uni(0, 0.5);
    s.gamma_bar = uni(0, 0.8);
    s.g_D = uni(0, 2);
    s.g_A = uni(0, 2);
    s.kappa = uni(1, 10);
    s.pump = PumpSpec::incoherent(uni(1e-3, 5e-2));
    s.n_cav = 2;
    return s;
}

}  // namespace

TEST_CASE("qubit decay Liouvillian spectrum {0, -g, -g/2 x2}") {
    const double gamma = 0.8;
    DissipatorList diss;
    diss.entries.push_back({gamma, qubit_lowering(), "decay"});
    const Liouvillian liou = liouvillian(ComplexMatrix(2, 2), diss, HilbertLayout{{2}});

    auto ev = eig_general(liou.matrix);
    std::sort(ev.begin(), ev.end(), [](cxd a, cxd b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] - cxd(-gamma)) < 1e-12);
    CHECK(std::abs(ev[1] - cxd(-gamma / 2)) < 1e-12);
    CHECK(std::abs(ev[2] - cxd(-gamma / 2)) < 1e-12);
    CHECK(std::abs(ev[3]) < 1e-12);
}

TEST_CASE("trace functional annihilates random Liouvillians") {
    for (int trial = 0; trial < 20; ++trial) {
        const SystemSpec spec = pumped_spec();
        const Liouvillian liou = liouvillian(spec);
        const double scale = std::max(1.0, liou.matrix.max_abs());
        CHECK(liou.trace_defect() < 1e-10 * scale);
    }
}

TEST_CASE("asymmetric Bell state is dark under the collective radiative part") {
    // gamma_bar = gamma: the pure radiative dissipator annihilates |psi-><psi-|
    const HilbertLayout two{{2, 2}};
    const ComplexMatrix low = qubit_lowering();
    const ComplexMatrix sd = kron(low, ComplexMatrix::identity(2));
    const ComplexMatrix sa = kron(ComplexMatrix::identity(2), low);
    DissipatorList diss;
    diss.entries.push_back({1.0, sd, "decay_D"});
    diss.entries.push_back({1.0, sa, "decay_A"});
    diss.collective = DissipatorList::Collective{1.0, sd, sa};
    const Liouvillian liou = liouvillian(ComplexMatrix(4, 4), diss, two);

    ComplexMatrix psi_minus(4, 4);
    psi_minus(1, 1) = psi_minus(2, 2) = 0.5;
    psi_minus(1, 2) = psi_minus(2, 1) = -0.5;
    const auto v = vectorize(psi_minus);
    double worst = 0;
    for (int i = 0; i < 16; ++i) {
        cxd out = 0;
        for (int j = 0; j < 16; ++j) out += liou.matrix(i, j) * v[j];
        worst = std::max(worst, std::abs(out));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("steady state: dark equilibrium and pumped qubit balance") {
    SystemSpec decay_only;
    decay_only.kappa = 1.0;
    decay_only.n_cav = 1;
    const DensityMatrix rho = steady_state(liouvillian(decay_only));
    CHECK(rho.matrix(0, 0).real() == doctest::Approx(1.0));  // ground (x) vacuum

    // single pumped qubit: p_e = Gamma / (Gamma + gamma)
    const double Gamma = 0.3, gamma = 1.0;
    DissipatorList diss;
    diss.entries.push_back({gamma, qubit_lowering(), "decay"});
    diss.entries.push_back({Gamma, qubit_lowering().adjoint(), "pump"});
    const DensityMatrix q = steady_state(liouvillian(ComplexMatrix(2, 2), diss, HilbertLayout{{2}}));
    CHECK(q.matrix(1, 1).real() == doctest::Approx(Gamma / (Gamma + gamma)).epsilon(1e-12));
}

TEST_CASE("free-space steady flow matches the analytic formula at weak pump") {
    const double Gamma = 1e-3;
    SystemSpec spec;
    spec.Delta = 35.0;
    spec.Omega = 4.0;
    spec.gamma_bar = 0.6;
    spec.rates.gamma_prime = 0.1;
    spec.rates.gamma_phi = 0.5;
    spec.kappa = 1.0;
    spec.pump = PumpSpec::incoherent(Gamma);
    spec.n_cav = 1;
    const OperatorSet ops = build_operators(spec);
    const DensityMatrix rho = steady_state(liouvillian(spec, ops));
    const double j = energy_flows(rho, spec, ops).J / Gamma;
    const double ref = j_free_space_full(spec.Delta, spec.Omega, 1.0, 0.1, 0.5, 0.6);
    CHECK(j == doctest::Approx(ref).epsilon(0.01));
}

TEST_CASE("steady-state invariants over a randomized suite") {
    for (int trial = 0; trial < 100; ++trial) {
        const SystemSpec spec = pumped_spec();
        const DensityMatrix rho = steady_state(liouvillian(spec), SteadyStateOptions{false});
        CHECK(rho.matrix.hermiticity_defect() < 1e-10);
        CHECK(std::abs(rho.matrix.trace() - cxd(1)) < 1e-10);
        CHECK(rho.min_eigenvalue() > -1e-8);
    }
}

TEST_CASE("uncoupled steady state factorizes") {
    SystemSpec spec;
    spec.Delta = 5.0;
    spec.kappa = 2.0;
    spec.pump = PumpSpec::incoherent(0.2);
    spec.n_cav = 2;  // Omega = g = gamma_bar = 0
    const DensityMatrix rho = steady_state(liouvillian(spec));
    const ComplexMatrix rd = partial_trace(rho.matrix, rho.layout, {0});
    const ComplexMatrix ra = partial_trace(rho.matrix, rho.layout, {1});
    const ComplexMatrix rc = partial_trace(rho.matrix, rho.layout, {2});
    const ComplexMatrix product = kron(kron(rd, ra), rc);
    CHECK((product - rho.matrix).max_abs() < 1e-10);
}

TEST_CASE("steady state reports an unstable generator") {
    DissipatorList diss;
    diss.entries.push_back({-0.2, qubit_lowering(), "negative rate"});
    const Liouvillian liou = liouvillian(ComplexMatrix(2, 2), diss, HilbertLayout{{2}});
    CHECK_THROWS_AS(steady_state(liou), Unstable);
}

TEST_CASE("Dicke-limit kernel degeneracy is reported") {
    SystemSpec spec;
    spec.Omega = 1.0;
    spec.gamma_bar = 1.0;
    spec.kappa = 1.0;
    spec.n_cav = 1;
    CHECK_THROWS_AS(steady_state(liouvillian(spec)), NonUniqueSteadyState);
}

TEST_CASE("evolve: frozen dynamics, exponential decay, fixed-point agreement") {
    const HilbertLayout qubit{{2}};
    ComplexMatrix rho0(2, 2);
    rho0(1, 1) = 1.0;

    SUBCASE("zero generator keeps the state") {
        const Liouvillian liou = liouvillian(ComplexMatrix(2, 2), DissipatorList{}, qubit);
        const auto traj = evolve(DensityMatrix{rho0, qubit}, liou, 1.0, 0.1);
        CHECK((traj.back().matrix - rho0).max_abs() < 1e-12);
    }

    SUBCASE("excited population decays exponentially") {
        DissipatorList diss;
        diss.entries.push_back({1.0, qubit_lowering(), "decay"});
        const Liouvillian liou = liouvillian(ComplexMatrix(2, 2), diss, qubit);
        const auto traj = evolve(DensityMatrix{rho0, qubit}, liou, 1.0, 1e-3);
        CHECK(traj.back().matrix(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    }

    SUBCASE("long-time limit agrees with the steady-state solve") {
        SystemSpec spec;
        spec.Delta = 2.0;
        spec.Omega = 0.8;
        spec.kappa = 3.0;
        spec.g_D = 0.5;
        spec.pump = PumpSpec::incoherent(0.05);
        spec.n_cav = 1;
        const Liouvillian liou = liouvillian(spec);
        const DensityMatrix target = steady_state(liou);
        ComplexMatrix vac(8, 8);
        vac(0, 0) = 1.0;
        const auto traj = evolve(DensityMatrix{vac, spec.layout()}, liou, 40.0, 5e-3);
        CHECK((traj.back().matrix - target.matrix).max_abs() < 1e-6);
    }
}

TEST_CASE("coherent cavity transfer peaks when driving the middle polariton") {
    // distant emitters, strong coupling: scanning (delta, omega_L) the global
    // J_A maximum sits on the middle polariton branch
    const double g = 50, kappa = 10, Delta = 40, eta = 0.01;
    double best = -1, best_delta = 0, best_wl = 0;
    for (int i = 0; i < 17; ++i) {
        const double delta = -30 + 100.0 * i / 16;
        for (int k = 0; k < 17; ++k) {
            const double wl = -30 + 100.0 * k / 16;
            SystemSpec spec;
            spec.Delta = Delta;
            spec.delta = delta;
            spec.g_D = spec.g_A = g;
            spec.kappa = kappa;
            spec.pump = PumpSpec::coherent(eta, wl);
            spec.n_cav = 2;
            const OperatorSet ops = build_operators(spec);
            const auto rho = steady_state(liouvillian(spec, ops), SteadyStateOptions{false});
            const double ja = energy_flows(rho, spec, ops).J_A;
            if (ja > best) {
                best = ja;
                best_delta = delta;
                best_wl = wl;
            }
        }
    }
    const PolaritonSet pol = polariton_modes(Delta, best_delta, g, g);
    const double to_mid = std::abs(best_wl - pol.energies[1]);
    CHECK(to_mid < 6.25);  // within one grid step of the middle branch
    CHECK(to_mid < std::abs(best_wl - pol.energies[0]));
    CHECK(to_mid < std::abs(best_wl - pol.energies[2]));
}

TEST_CASE("evolve flags an unstable step size") {
    const HilbertLayout qubit{{2}};
    ComplexMatrix rho0(2, 2);
    rho0(1, 1) = 1.0;
    DissipatorList diss;
    diss.entries.push_back({1.0, qubit_lowering(), "decay"});
    const Liouvillian liou = liouvillian(ComplexMatrix(2, 2), diss, qubit);
    CHECK_THROWS_AS(evolve(DensityMatrix{rho0, qubit}, liou, 40.0, 4.0), StepUnstable);
    CHECK_THROWS_AS(evolve(DensityMatrix{rho0, qubit}, liou, 1.0, -0.1), Error);
}

TEST_CASE("stability margin") {
    DissipatorList diss;
    diss.entries.push_back({1.0, qubit_lowering(), "decay"});
    const Liouvillian qubit = liouvillian(ComplexMatrix(2, 2), diss, HilbertLayout{{2}});
    CHECK(stability_margin(qubit) == doctest::Approx(0.5).epsilon(1e-12));

    // subradiant channel closes the gap as gamma_bar -> gamma
    auto margin_at = [](double gbar) {
        SystemSpec spec;
        spec.Omega = 1.0;
        spec.gamma_bar = gbar;
        spec.kappa = 1.0;
        spec.n_cav = 1;
        return stability_margin(liouvillian(spec));
    };
    CHECK(margin_at(0.9) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(margin_at(0.99) == doctest::Approx(0.005).epsilon(1e-9));

    // pumping damps the subradiant coherences: the gap reopens with Gamma
    SystemSpec tight;
    tight.Omega = 1.0;
    tight.gamma_bar = 0.9;
    tight.kappa = 1.0;
    tight.n_cav = 1;
    tight.pump = PumpSpec::incoherent(0.5);
    CHECK(stability_margin(liouvillian(tight)) == doctest::Approx(0.5).epsilon(1e-9));
}
