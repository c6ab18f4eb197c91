#include "etsim/dipole.hpp"

#include <cmath>

namespace etsim {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

constexpr double kUnitTol = 1e-12;

}  // namespace

double GeometrySpec::kd() const { return 2.0 * M_PI * separation / wavelength; }

void GeometrySpec::validate() const {
    if (std::abs(norm(mu_D) - 1.0) > kUnitTol || std::abs(norm(mu_A) - 1.0) > kUnitTol ||
        std::abs(norm(d_hat) - 1.0) > kUnitTol)
        throw Error("geometry orientation vectors must be unit vectors");
    if (!(wavelength > 0)) throw Error("wavelength must be positive");
    if (separation < 0) throw Error("separation must be non-negative");
}

GeometrySpec GeometrySpec::parallel(double separation, double wavelength) {
    GeometrySpec g;
    g.separation = separation;
    g.wavelength = wavelength;
    g.mu_D = g.mu_A = g.d_hat = Vec3{1, 0, 0};
    return g;
}

GeometrySpec GeometrySpec::perpendicular(double separation, double wavelength) {
    GeometrySpec g;
    g.separation = separation;
    g.wavelength = wavelength;
    g.mu_D = g.mu_A = Vec3{0, 0, 1};
    g.d_hat = Vec3{1, 0, 0};
    return g;
}

void EmitterRates::validate() const {
    if (gamma_D < 0 || gamma_A < 0 || gamma_prime < 0 || gamma_phi < 0 || gamma_nr < 0)
        throw Error("emitter rates must be non-negative");
}

double dipole_shift(const GeometrySpec& geom, const EmitterRates& rates) {
    geom.validate();
    rates.validate();
    if (geom.separation == 0) throw ZeroSeparation("dipole shift diverges at d = 0");
    const double x = geom.kd();
    const double p = dot(geom.mu_D, geom.mu_A) - dot(geom.mu_D, geom.d_hat) * dot(geom.mu_A, geom.d_hat);
    const double q = dot(geom.mu_D, geom.mu_A) - 3.0 * dot(geom.mu_D, geom.d_hat) * dot(geom.mu_A, geom.d_hat);
    const double pre = 1.5 * std::sqrt(rates.gamma_D * rates.gamma_A);
    return pre * (-p * std::cos(x) / x + q * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
}

double mutual_decay(const GeometrySpec& geom, const EmitterRates& rates) {
    geom.validate();
    rates.validate();
    if (geom.separation == 0) return std::sqrt(rates.gamma_D * rates.gamma_A);  // Dicke limit
    const double x = geom.kd();
    const double p = dot(geom.mu_D, geom.mu_A) - dot(geom.mu_D, geom.d_hat) * dot(geom.mu_A, geom.d_hat);
    const double q = dot(geom.mu_D, geom.mu_A) - 3.0 * dot(geom.mu_D, geom.d_hat) * dot(geom.mu_A, geom.d_hat);
    const double pre = 1.5 * std::sqrt(rates.gamma_D * rates.gamma_A);
    return pre * (p * std::sin(x) / x + q * (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)));
}

CollectiveRates collective_rates(double gamma, double gamma_bar) {
    if (std::abs(gamma_bar) > gamma)
        throw UnphysicalMutualDecay("|gamma_bar| exceeds gamma; dissipator would not be positive");
    return CollectiveRates{gamma + gamma_bar, gamma - gamma_bar};
}

}  // namespace etsim
