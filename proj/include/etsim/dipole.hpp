#pragma once

#include <array>

#include "etsim/errors.hpp"

namespace etsim {

using Vec3 = std::array<double, 3>;

/// Emitter separation and dipole orientations. Lengths share the wavelength's
/// unit; all orientation vectors must be unit vectors.
struct GeometrySpec {
    double separation = 0.1;   // d
    double wavelength = 1.0;   // lambda, k = 2 pi / lambda
    Vec3 mu_D{0, 0, 1};
    Vec3 mu_A{0, 0, 1};
    Vec3 d_hat{1, 0, 0};

    double kd() const;
    void validate() const;  // unit vectors, d > 0 handled per operation

    /// mu_D = mu_A parallel to the interparticle axis (fig. 2 "parallel" curves).
    static GeometrySpec parallel(double separation, double wavelength);
    /// mu_D = mu_A perpendicular to the interparticle axis.
    static GeometrySpec perpendicular(double separation, double wavelength);
};

/// Radiative and non-radiative rates of the two emitters, in units of the
/// zero-phonon rate unless stated otherwise.
struct EmitterRates {
    double gamma_D = 1.0;      // zero-phonon radiative rate, donor
    double gamma_A = 1.0;      // zero-phonon radiative rate, acceptor
    double gamma_prime = 0.0;  // extra radiative decay gamma'
    double gamma_phi = 0.0;    // dephasing
    double gamma_nr = 0.0;     // non-radiative ground-manifold relaxation

    double gamma_tot_D() const { return gamma_D + gamma_prime; }
    double gamma_tot_A() const { return gamma_A + gamma_prime; }
    void validate() const;  // all rates >= 0
};

/// Coherent dipole-dipole shift Omega(d). Diverges at d = 0 (ZeroSeparation);
/// the Dicke limit has to be handled by the caller.
double dipole_shift(const GeometrySpec& geom, const EmitterRates& rates);

/// Mutual decay rate gbar(d); the d = 0 branch returns the analytic limit
/// sqrt(gamma_D gamma_A).
double mutual_decay(const GeometrySpec& geom, const EmitterRates& rates);

struct CollectiveRates {
    double superradiant;  // gamma + gbar
    double subradiant;    // gamma - gbar
};

/// Splits a decay rate into the symmetric/antisymmetric channel rates.
/// |gbar| <= gamma required (dissipator positivity).
CollectiveRates collective_rates(double gamma, double gamma_bar);

}  // namespace etsim
