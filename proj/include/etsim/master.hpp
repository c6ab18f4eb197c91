#pragma once

#include <vector>

#include "etsim/matrix.hpp"
#include "etsim/system.hpp"

namespace etsim {

/// Hermitian, unit-trace, positive-semidefinite state on `layout`.
struct DensityMatrix {
    ComplexMatrix matrix;
    HilbertLayout layout;

    /// Checks Hermiticity, unit trace and positivity; throws NonPhysicalState.
    void validate() const;
    double min_eigenvalue() const;
};

/// Generator of the master equation acting on row-major vectorized states:
/// vec(A rho B) = (A kron B^T) vec(rho), so L = -i(H kron I - I kron H^T) + dissipators.
struct Liouvillian {
    ComplexMatrix matrix;  // (n^2) x (n^2)
    HilbertLayout layout;

    int hilbert_dim() const { return layout.total_dim(); }
    /// max_j |sum_i t_i L_ij| where t = vec(I): the trace functional must
    /// annihilate the generator.
    double trace_defect() const;
};

Liouvillian liouvillian(const ComplexMatrix& h, const DissipatorList& diss, const HilbertLayout& layout);

/// Convenience overload for the donor-acceptor-cavity system.
Liouvillian liouvillian(const SystemSpec& spec);
Liouvillian liouvillian(const SystemSpec& spec, const OperatorSet& ops);

struct SteadyStateOptions {
    /// Eigendecomposition-based uniqueness and stability checks. O(dim^6);
    /// parameter sweeps switch this off and rely on the LU singularity guard.
    bool spectral_checks = true;
};

/// Unique steady state via trace-row replacement and dense LU.
/// Errors: NonUniqueSteadyState (degenerate kernel), Unstable (Re lambda > 0),
/// Singular (LU breakdown when spectral checks are off).
DensityMatrix steady_state(const Liouvillian& liou, const SteadyStateOptions& opts = {});

/// Fixed-step RK4 trajectory of vec(rho). Snapshots at every step including
/// t = 0; trace renormalized per step, drift beyond tolerance -> StepUnstable.
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Liouvillian& liou, double t_final, double dt);

/// -max{Re lambda : |lambda| above the zero-mode cutoff}; the relaxation gap.
double stability_margin(const Liouvillian& liou);

/// vec/unvec helpers (row-major).
std::vector<cxd> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const std::vector<cxd>& v, int n);

}  // namespace etsim
