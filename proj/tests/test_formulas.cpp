#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "etsim/dipole.hpp"
#include "etsim/formulas.hpp"
#include "etsim/polariton.hpp"

using namespace etsim;

namespace {

std::mt19937 rng(555);
double uni(double lo, double hi) { return lo + (hi - lo) * std::generate_canonical<double, 53>(rng); }

}  // namespace

TEST_CASE("reduction chain: full -> simple -> distinct emitters") {
    for (int i = 0; i < 1000; ++i) {
        const double Delta = uni(-100, 100), Omega = uni(-20, 20), gtot = uni(0.1, 5);
        const double a = j_free_space_full(Delta, Omega, gtot, 0, 0, 0);
        const double b = j_free_space_simple(Delta, Omega, gtot);
        const double c = j_distinct_emitters(Delta, Omega, gtot, gtot);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
        CHECK(std::abs(c - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("free-space full formula limits") {
    CHECK(j_free_space_full(5, 0, 1, 0.2, 0.3, 0.1) == 0.0);
    // reversal inside the fig2a window, none without collective decay
    EmitterRates rates;
    rates.gamma_prime = 0.1;
    const GeometrySpec mid = GeometrySpec::parallel(0.1, 1.0);
    const double j_rev = j_free_space_full(200, dipole_shift(mid, rates), 1, 0.1, 0, mutual_decay(mid, rates));
    CHECK(j_rev < 0);
    CHECK(j_free_space_full(200, dipole_shift(mid, rates), 1, 0.1, 0, 0) > 0);
}

TEST_CASE("free-space full formula is bounded away from the singular surface") {
    for (int i = 0; i < 2000; ++i) {
        const double gp = uni(0, 2), gbar = uni(-1, 1) * (1 + gp);
        const double Delta = uni(-50, 50), Omega = uni(-10, 10), gphi = uni(0, 3);
        if (std::abs(gbar) > 1.0) continue;  // |gbar| <= gamma
        // exclude the neighborhood of gamma_tot = gbar with Delta = Omega = 0
        if (1 + gp - std::abs(gbar) < 1e-3 && std::abs(Delta) < 1e-3 && std::abs(Omega) < 1e-3) continue;
        const double j = j_free_space_full(Delta, Omega, 1, gp, gphi, gbar);
        CHECK(std::abs(j) <= 1e3);
    }
}

TEST_CASE("simple formula: saturation and direct values") {
    CHECK(j_free_space_simple(0, 1000, 1) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(j_free_space_simple(0, 1, 1) == doctest::Approx(0.4));
    // d^-6 through the dipole shift in the far-detuned regime
    EmitterRates rates;
    const double o1 = dipole_shift(GeometrySpec::perpendicular(0.10, 1.0), rates);
    const double o2 = dipole_shift(GeometrySpec::perpendicular(0.20, 1.0), rates);
    const double ratio = j_free_space_simple(2e4, o1, 1) / j_free_space_simple(2e4, o2, 1);
    CHECK(ratio == doctest::Approx(std::pow(o1 / o2, 2)).epsilon(1e-6));
}

TEST_CASE("distinct emitters: fast acceptor absorbs everything") {
    CHECK(j_distinct_emitters(0, 10, 0.01, 100) > 0.95);
    CHECK(j_distinct_emitters(3, 0, 1, 2) == 0.0);
}

TEST_CASE("coherent free-space drive") {
    CHECK(j_coherent_free(5, 0, 1, 0.1, 2) == 0.0);

    // omega_L -> -omega_L symmetry at Delta = 0
    for (int i = 0; i < 200; ++i) {
        const double Om = uni(0.1, 10), eta = uni(0.001, 0.5), wL = uni(0, 30);
        const double a = j_coherent_free(0, Om, 1, eta, wL);
        const double b = j_coherent_free(0, Om, 1, eta, -wL);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }

    // monochromatic pumping at the bare donor goes off resonance once the
    // near-field shift exceeds the linewidth: flow dies at small separations
    const double j_far = j_coherent_free(200, 5, 1, 0.1, 200);
    const double j_near = j_coherent_free(200, 300, 1, 0.1, 200);
    CHECK(j_near < 0.01 * j_far);

    // resonances track the hybridized branches at Delta = 4
    const double Delta = 4, Om = 10, eta = 0.1;
    const double split = std::sqrt(Om * Om + Delta * Delta / 4);
    for (double branch : {Delta / 2 + split, Delta / 2 - split}) {
        double best_w = 0, best_j = -1;
        for (double w = branch - 3; w <= branch + 3; w += 0.002) {
            const double j = j_coherent_free(Delta, Om, 1, eta, w);
            if (j > best_j) {
                best_j = j;
                best_w = w;
            }
        }
        CHECK(std::abs(best_w - branch) < 0.1);
    }
}

TEST_CASE("cavity cooperativity formula") {
    CHECK(j_cavity_cooperativity(3, 0, 1.5, 0.5) == 0.0);
    for (int i = 0; i < 500; ++i) {
        const double Delta = uni(-50, 50), Om = uni(-5, 5), geff = uni(0.5, 5);
        const double a = j_cavity_cooperativity(Delta, Om, geff, 0);
        const double b = j_free_space_simple(Delta, Om, geff);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("coherent cavity flow: broken chain, pole, and polariton locus") {
    CHECK(j_a_coherent_cavity(10, 3, 0, 5, 1, 0.1, 2) == 0.0);
    CHECK(j_a_coherent_cavity(10, 3, 5, 0, 1, 0.1, 2) == 0.0);
    // bracket vanishes exactly: gA^2(Delta-wL) = 1, wL(-gD^2 + (delta-wL)(Delta-wL)) = -1
    CHECK_THROWS_AS(j_a_coherent_cavity(2, 4, 2, 1, 1, 0.1, 1), SingularResonance);

    // the pole locus is the polariton condition det(H3 - omega_L) = 0
    const double Delta = 17, delta = -4, gD = 6, gA = 11;
    const PolaritonSet pol = polariton_modes(Delta, delta, gD, gA);
    for (double e : pol.energies) {
        const double t1 = gA * gA * (Delta - e);
        const double t2 = -e * gD * gD;
        const double t3 = e * (delta - e) * (Delta - e);
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        CHECK(std::abs(t1 + t2 + t3) < 1e-9 * scale);
    }
}

TEST_CASE("intermediate-level transfer") {
    const auto zero = j_intermediate_level(0, 1, 100);
    CHECK(zero.j_over_gamma == 0.0);
    CHECK(zero.k_fs == 0.0);

    const auto half = j_intermediate_level(std::sqrt(1.0 * 100.0) / 2, 1, 100);  // 4 Om^2 = gD gnr
    CHECK(half.j_over_gamma == doctest::Approx(0.5));

    CHECK(j_intermediate_level(1, 1, 100).k_fs == doctest::Approx(0.04));
}

TEST_CASE("effective pump rate") {
    CHECK(effective_pump_rate(0, 100, 0, 1).Gamma_eff == 0.0);
    const EffectivePump p = effective_pump_rate(0.5, 100, 0, 1);
    CHECK(p.Gamma_eff == doctest::Approx(p.Gamma_eff_limit).epsilon(1e-4));  // 4 eta^2 << gamma_ie^2
    CHECK(p.Gamma_eff_limit == doctest::Approx(4 * 0.25 / 100));
    CHECK(p.pump_dephasing == doctest::Approx(2 * 0.25 / 101.0));
    CHECK(p.adiabatic_ok);
    CHECK_FALSE(effective_pump_rate(20, 100, 0, 1).adiabatic_ok);
}

TEST_CASE("formula dispatch for the oracle CLI") {
    const FlowResult r = evaluate_formula("free_space_simple", {{"Delta", 0.0}, {"Omega", 1.0}, {"gamma_tot", 1.0}});
    CHECK(r.value == doctest::Approx(0.4));
    CHECK(r.formula_id == FormulaId::FreeSpaceSimple);
    CHECK_THROWS_AS(evaluate_formula("nope", {}), ConfigError);
    CHECK_THROWS_AS(evaluate_formula("free_space_simple", {{"Delta", 0.0}}), ConfigError);
}
