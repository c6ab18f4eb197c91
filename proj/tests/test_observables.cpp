#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "etsim/master.hpp"
#include "etsim/observables.hpp"

using namespace etsim;

namespace {

std::mt19937 rng(97);
double uni(double lo, double hi) { return lo + (hi - lo) * std::generate_canonical<double, 53>(rng); }

const HilbertLayout kTwoQubits{{2, 2}};

ComplexMatrix pure_state(const std::vector<cxd>& amps) {
    double nrm = 0;
    for (const auto& a : amps) nrm += std::norm(a);
    ComplexMatrix rho(static_cast<int>(amps.size()), static_cast<int>(amps.size()));
    for (size_t i = 0; i < amps.size(); ++i)
        for (size_t j = 0; j < amps.size(); ++j)
            rho(static_cast<int>(i), static_cast<int>(j)) = amps[i] * std::conj(amps[j]) / nrm;
    return rho;
}

// Independent route: decreasing square roots of the eigenvalues of rho rho~
// from the general (non-Hermitian) solver. Cross-checks the implementation's
// Hermitian-square-root path through the equivalent product spectrum.
double concurrence_oracle(const ComplexMatrix& rho) {
    ComplexMatrix sy(2, 2);
    sy(0, 1) = cxd(0, -1);
    sy(1, 0) = cxd(0, 1);
    const ComplexMatrix yy = kron(sy, sy);
    const ComplexMatrix rt = yy * rho.conjugate() * yy;
    auto lams = eig_general(rho * rt);
    std::vector<double> lam;
    for (const auto& z : lams) lam.push_back(std::sqrt(std::max(z.real(), 0.0)));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

ComplexMatrix random_two_qubit_state() {
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cxd(uni(-1, 1), uni(-1, 1));
    ComplexMatrix rho = m * m.adjoint();
    rho *= cxd(1.0 / rho.trace().real());
    return rho;
}

}  // namespace

TEST_CASE("flows vanish without coupling or excitation") {
    SystemSpec spec;
    spec.n_cav = 1;  // Omega = 0
    const OperatorSet ops = build_operators(spec);
    ComplexMatrix ground(8, 8);
    ground(0, 0) = 1.0;
    const FlowReport f = energy_flows(DensityMatrix{ground, spec.layout()}, spec, ops);
    CHECK(f.J == 0.0);
    CHECK(f.J_D == 0.0);
    CHECK(f.J_A == 0.0);
    CHECK(f.p_D == 0.0);
    CHECK(f.p_A == 0.0);
    CHECK(f.n == 0.0);

    // Omega = 0 kills J regardless of the state
    SystemSpec coupled = spec;
    coupled.g_D = 1.0;
    ComplexMatrix mixed(8, 8);
    for (int i = 0; i < 8; ++i) mixed(i, i) = 1.0 / 8;
    CHECK(energy_flows(DensityMatrix{mixed, spec.layout()}, coupled, ops).J == 0.0);
}

TEST_CASE("per-pump normalization divides the flows") {
    SystemSpec spec;
    spec.Omega = 1.0;
    spec.pump = PumpSpec::incoherent(0.5);
    FlowReport f;
    f.J = 1.0;
    f.J_A = 0.25;
    const FlowReport norm = normalize_per_pump(f, spec);
    CHECK(norm.J == doctest::Approx(2.0));
    CHECK(norm.J_A == doctest::Approx(0.5));
    CHECK(norm.normalization == Normalization::PerGamma);
    CHECK_THROWS_AS(normalize_per_pump(norm, spec), Error);
}

TEST_CASE("concurrence of Bell, product and Werner states") {
    const ComplexMatrix bell = pure_state({1, 0, 0, 1});
    CHECK(concurrence(DensityMatrix{bell, kTwoQubits}, kTwoQubits) == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexMatrix prod = pure_state({cxd(0.8, 0.1), cxd(0.2, -0.4), 0, 0});
    CHECK(concurrence(DensityMatrix{prod, kTwoQubits}, kTwoQubits) < 1e-9);

    const ComplexMatrix werner = 0.5 * pure_state({1, 0, 0, 1}) + 0.125 * ComplexMatrix::identity(4);
    const double c = concurrence(DensityMatrix{werner, kTwoQubits}, kTwoQubits);
    CHECK(c == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(c == doctest::Approx(concurrence_oracle(werner)).epsilon(1e-9));
}

TEST_CASE("implementation agrees with the square-root oracle on random states") {
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix rho = random_two_qubit_state();
        const double a = concurrence(DensityMatrix{rho, kTwoQubits}, kTwoQubits);
        const double b = concurrence_oracle(rho);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("concurrence traces out the cavity") {
    const HilbertLayout dac{{2, 2, 3}};
    const ComplexMatrix bell = pure_state({1, 0, 0, 1});
    ComplexMatrix cav(3, 3);
    cav(0, 0) = 0.6;
    cav(1, 1) = 0.4;
    const ComplexMatrix full = kron(bell, cav);
    CHECK(concurrence(DensityMatrix{full, dac}, dac) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("local unitaries leave the concurrence invariant") {
    auto random_unitary = [&] {
        ComplexMatrix h(2, 2);
        h(0, 0) = uni(-1, 1);
        h(1, 1) = uni(-1, 1);
        const cxd off(uni(-1, 1), uni(-1, 1));
        h(0, 1) = off;
        h(1, 0) = std::conj(off);
        return eig_hermitian(h).eigenvectors;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const ComplexMatrix rho = random_two_qubit_state();
        const ComplexMatrix u = kron(random_unitary(), random_unitary());
        const double before = concurrence(DensityMatrix{rho, kTwoQubits}, kTwoQubits);
        const double after = concurrence(DensityMatrix{u * rho * u.adjoint(), kTwoQubits}, kTwoQubits);
        CHECK(std::abs(before - after) < 1e-9);
    }
}

TEST_CASE("identical second-order moments, different entanglement, same flows") {
    // rho_b: diagonal mixture; rho_c: same populations with a two-excitation
    // coherence. All six correlators of the flow layer coincide, so the flow
    // reports are identical, while only rho_c is entangled.
    SystemSpec spec;
    spec.Omega = 1.3;
    spec.g_D = spec.g_A = 0.7;
    spec.n_cav = 1;
    const OperatorSet ops = build_operators(spec);
    const HilbertLayout dac = spec.layout();

    ComplexMatrix b4(4, 4), c4(4, 4);
    b4(0, 0) = 0.8;
    b4(1, 1) = 0.05;  // |ga>
    b4(2, 2) = 0.05;  // |eg>... basis (d, a): index 2 = |e g>
    b4(3, 3) = 0.1;
    c4(0, 0) = 0.7 + 0.1;
    c4(1, 1) = 0.05;
    c4(2, 2) = 0.05;
    c4(3, 3) = 0.1;
    c4(0, 3) = c4(3, 0) = 0.1;  // Phi+ two-excitation coherence
    ComplexMatrix vac(2, 2);
    vac(0, 0) = 1.0;
    const DensityMatrix rho_b{kron(b4, vac), dac};
    const DensityMatrix rho_c{kron(c4, vac), dac};

    const FlowReport fb = energy_flows(rho_b, spec, ops);
    const FlowReport fc = energy_flows(rho_c, spec, ops);
    CHECK(fb.J == doctest::Approx(fc.J).epsilon(1e-14));
    CHECK(fb.J_r == doctest::Approx(fc.J_r).epsilon(1e-14));
    CHECK(fb.J_D == doctest::Approx(fc.J_D).epsilon(1e-14));
    CHECK(fb.J_A == doctest::Approx(fc.J_A).epsilon(1e-14));
    CHECK(fb.p_D == doctest::Approx(fc.p_D).epsilon(1e-14));
    CHECK(fb.p_A == doctest::Approx(fc.p_A).epsilon(1e-14));

    const double cb = concurrence(rho_b, dac);
    const double cc = concurrence(rho_c, dac);
    CHECK(cb < 1e-12);
    CHECK(cc > 0.05);
}

TEST_CASE("non-physical reduced states are rejected") {
    ComplexMatrix bad(4, 4);
    bad(0, 0) = 1.2;
    bad(1, 1) = -0.2;
    CHECK_THROWS_AS(concurrence(DensityMatrix{bad, kTwoQubits}, kTwoQubits), NonPhysicalState);
}
