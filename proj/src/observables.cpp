#include "etsim/observables.hpp"

#include <algorithm>
#include <cmath>

#include "etsim/tolerances.hpp"

namespace etsim {

FlowReport energy_flows(const DensityMatrix& rho, const SystemSpec& spec, const OperatorSet& ops) {
    if (rho.matrix.rows() != ops.dim()) throw DimensionMismatch("state and operators live on different spaces");
    FlowReport f;
    const cxd c_DdAd = expectation(ops.sigma_D * ops.sigma_A.adjoint(), rho.matrix);  // <sigma_D sigma_A^dag>
    f.J = 2.0 * spec.Omega * c_DdAd.imag();
    f.J_r = 2.0 * spec.Omega * c_DdAd.real();
    f.J_D = 2.0 * spec.g_D * expectation(ops.sigma_D * ops.a.adjoint(), rho.matrix).imag();
    f.J_A = 2.0 * spec.g_A * expectation(ops.a * ops.sigma_A.adjoint(), rho.matrix).imag();
    f.p_D = expectation(ops.sigma_D.adjoint() * ops.sigma_D, rho.matrix).real();
    f.p_A = expectation(ops.sigma_A.adjoint() * ops.sigma_A, rho.matrix).real();
    f.n = expectation(ops.a.adjoint() * ops.a, rho.matrix).real();
    f.normalization = Normalization::Raw;
    return f;
}

FlowReport normalize_per_pump(FlowReport f, const SystemSpec& spec) {
    if (f.normalization != Normalization::Raw) throw Error("report is already normalized");
    double denom = 1.0;
    if (spec.pump.mode == PumpMode::Incoherent) {
        denom = spec.pump.Gamma;
        f.normalization = Normalization::PerGamma;
    } else if (spec.pump.mode == PumpMode::Coherent) {
        denom = spec.pump.eta;
        f.normalization = Normalization::PerEta;
    }
    if (denom != 0.0) {
        f.J /= denom;
        f.J_D /= denom;
        f.J_A /= denom;
        f.J_r /= denom;
    }
    return f;
}

double concurrence(const DensityMatrix& rho, const HilbertLayout& layout) {
    if (layout.subsystem_dims.size() < 2 || layout.subsystem_dims[0] != 2 || layout.subsystem_dims[1] != 2)
        throw DimensionMismatch("concurrence needs a donor (x) acceptor (x) cavity layout");

    std::vector<int> keep{0, 1};
    ComplexMatrix r = layout.subsystem_dims.size() > 2 ? partial_trace(rho.matrix, layout, keep) : rho.matrix;

    // positivity of the reduced state
    ComplexMatrix h = r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(i, j) = 0.5 * (r(i, j) + std::conj(r(j, i)));
    const auto eig = eig_hermitian(h);
    if (eig.eigenvalues.front() < tol::density_positivity)
        throw NonPhysicalState("reduced donor-acceptor state is not positive");

    // rho~ = (sy x sy) rho* (sy x sy)
    ComplexMatrix sy(2, 2);
    sy(0, 1) = cxd(0, -1);
    sy(1, 0) = cxd(0, 1);
    const ComplexMatrix yy = kron(sy, sy);
    const ComplexMatrix rt = yy * r.conjugate() * yy;

    // Hermitian route sqrt(rho) rho~ sqrt(rho): same spectrum as rho rho~ but
    // the general eigensolver loses ~4 digits to eigenvalue clustering on
    // weakly excited states, which ruins the small-concurrence cancellation.
    std::vector<cxd> sq(4);
    for (int i = 0; i < 4; ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < 0) {
            if (lam < tol::concurrence_clamp) throw NonPhysicalState("state eigenvalue below the clamp window");
            lam = 0;
        }
        sq[i] = std::sqrt(lam);
    }
    const ComplexMatrix s = eig.eigenvectors * ComplexMatrix::diagonal(sq) * eig.eigenvectors.adjoint();
    ComplexMatrix m = s * rt * s;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const cxd avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    const auto inner = eig_hermitian(m);
    std::vector<double> roots(4);
    for (int i = 0; i < 4; ++i) {
        double lam = inner.eigenvalues[i];
        if (lam < 0) {
            if (lam < tol::concurrence_clamp) throw NonPhysicalState("R eigenvalue below the clamp window");
            lam = 0;
        }
        roots[i] = std::sqrt(lam);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

}  // namespace etsim
