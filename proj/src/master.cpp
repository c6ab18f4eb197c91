#include "etsim/master.hpp"

#include <algorithm>
#include <cmath>

#include "etsim/tolerances.hpp"

namespace etsim {

void DensityMatrix::validate() const {
    if (matrix.rows() != layout.total_dim()) throw DimensionMismatch("state dimension does not match layout");
    if (matrix.hermiticity_defect() > tol::density_hermiticity)
        throw NonPhysicalState("density matrix is not Hermitian");
    if (std::abs(matrix.trace() - cxd(1.0)) > tol::density_trace)
        throw NonPhysicalState("density matrix trace differs from 1");
    if (min_eigenvalue() < tol::density_positivity)
        throw NonPhysicalState("density matrix has a negative eigenvalue");
}

double DensityMatrix::min_eigenvalue() const {
    ComplexMatrix h = matrix;
    // symmetrize away roundoff before the Hermitian solver
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) h(i, j) = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));
    return eig_hermitian(h).eigenvalues.front();
}

double Liouvillian::trace_defect() const {
    const int n = hilbert_dim();
    double worst = 0;
    for (int col = 0; col < n * n; ++col) {
        cxd sum = 0;
        for (int i = 0; i < n; ++i) sum += matrix(i * n + i, col);
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

namespace {

// accumulate  w * (A kron B^T)  into L
void add_kron_bt(ComplexMatrix& l, cxd w, const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd aij = w * a(i, j);
            if (aij == cxd(0)) continue;
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) l(i * n + k, j * n + m) += aij * b(m, k);
        }
}

void add_standard_dissipator(ComplexMatrix& l, double rate, const ComplexMatrix& c) {
    if (rate == 0.0) return;
    const int n = c.rows();
    const ComplexMatrix cd = c.adjoint();
    const ComplexMatrix cdc = cd * c;
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    add_kron_bt(l, rate, c, cd);                 // C rho C^dag
    add_kron_bt(l, -0.5 * rate, cdc, eye);       // -1/2 C^dag C rho
    add_kron_bt(l, -0.5 * rate, eye, cdc);       // -1/2 rho C^dag C
}

}  // namespace

Liouvillian liouvillian(const ComplexMatrix& h, const DissipatorList& diss, const HilbertLayout& layout) {
    layout.validate();
    const int n = layout.total_dim();
    if (h.rows() != n || h.cols() != n) throw DimensionMismatch("Hamiltonian does not match layout");

    ComplexMatrix l(n * n, n * n);
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const cxd mi(0, -1);
    add_kron_bt(l, mi, h, eye);
    add_kron_bt(l, -mi, eye, h);

    for (const auto& e : diss.entries) {
        if (e.op.rows() != n) throw DimensionMismatch("collapse operator does not match layout");
        add_standard_dissipator(l, e.rate, e.op);
    }

    if (diss.collective) {
        const auto& c = *diss.collective;
        const ComplexMatrix cross = c.sigma_A.adjoint() * c.sigma_D + c.sigma_D.adjoint() * c.sigma_A;
        add_kron_bt(l, c.gamma_bar, c.sigma_D, c.sigma_A.adjoint());
        add_kron_bt(l, c.gamma_bar, c.sigma_A, c.sigma_D.adjoint());
        add_kron_bt(l, -0.5 * c.gamma_bar, cross, eye);
        add_kron_bt(l, -0.5 * c.gamma_bar, eye, cross);
    }

    return Liouvillian{std::move(l), layout};
}

Liouvillian liouvillian(const SystemSpec& spec, const OperatorSet& ops) {
    return liouvillian(build_hamiltonian(spec, ops), build_dissipators(spec, ops), spec.layout());
}

Liouvillian liouvillian(const SystemSpec& spec) { return liouvillian(spec, build_operators(spec)); }

std::vector<cxd> vectorize(const ComplexMatrix& rho) {
    return std::vector<cxd>(rho.data(), rho.data() + rho.size());
}

ComplexMatrix unvectorize(const std::vector<cxd>& v, int n) {
    ComplexMatrix m(n, n);
    std::copy(v.begin(), v.end(), m.data());
    return m;
}

DensityMatrix steady_state(const Liouvillian& liou, const SteadyStateOptions& opts) {
    const int n = liou.hilbert_dim();
    const int nn = n * n;

    if (opts.spectral_checks) {
        const auto spectrum = eig_general(liou.matrix);
        double scale = 0;
        for (const auto& z : spectrum) scale = std::max(scale, std::abs(z));
        if (scale == 0) throw NonUniqueSteadyState("zero Liouvillian");
        double re_min1 = std::numeric_limits<double>::infinity();
        double re_min2 = std::numeric_limits<double>::infinity();
        double re_max = -std::numeric_limits<double>::infinity();
        for (const auto& z : spectrum) {
            const double a = std::abs(z.real());
            if (a < re_min1) {
                re_min2 = re_min1;
                re_min1 = a;
            } else if (a < re_min2) {
                re_min2 = a;
            }
            re_max = std::max(re_max, z.real());
        }
        if (re_max > tol::kernel_gap * scale)
            throw Unstable("Liouvillian has an eigenvalue with positive real part");
        if (re_min2 <= tol::kernel_gap * scale)
            throw NonUniqueSteadyState("degenerate or marginal kernel; steady state is not unique");
    }

    // replace the rho_00 row with the trace constraint
    ComplexMatrix m = liou.matrix;
    for (int col = 0; col < nn; ++col) m(0, col) = 0.0;
    for (int i = 0; i < n; ++i) m(0, i * n + i) = 1.0;
    std::vector<cxd> b(nn, cxd(0));
    b[0] = 1.0;

    std::vector<cxd> x;
    try {
        x = solve_linear(m, b);
    } catch (const Singular&) {
        throw NonUniqueSteadyState("trace-replaced system is singular; kernel is degenerate");
    }

    ComplexMatrix rho = unvectorize(x, n);
    // enforce exact Hermiticity and unit trace against roundoff
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cxd avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 0)) throw NonUniqueSteadyState("steady-state solve returned zero trace");
    rho *= cxd(1.0 / tr);

    DensityMatrix out{std::move(rho), liou.layout};
    out.validate();
    return out;
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Liouvillian& liou, double t_final, double dt) {
    if (!(dt > 0)) throw Error("dt must be positive");
    const int n = liou.hilbert_dim();
    if (rho0.matrix.rows() != n) throw DimensionMismatch("initial state does not match Liouvillian");

    const ComplexMatrix& l = liou.matrix;
    auto apply = [&](const std::vector<cxd>& v) {
        std::vector<cxd> out(v.size(), cxd(0));
        const int nn = n * n;
        for (int i = 0; i < nn; ++i) {
            cxd s = 0;
            const cxd* row = l.data() + static_cast<size_t>(i) * nn;
            for (int j = 0; j < nn; ++j) s += row[j] * v[j];
            out[i] = s;
        }
        return out;
    };

    std::vector<DensityMatrix> traj;
    std::vector<cxd> y = vectorize(rho0.matrix);
    const int steps = static_cast<int>(std::ceil(t_final / dt - 1e-12));
    traj.push_back(rho0);
    for (int s = 0; s < steps; ++s) {
        const auto k1 = apply(y);
        std::vector<cxd> tmp(y.size());
        for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        const auto k2 = apply(tmp);
        for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        const auto k3 = apply(tmp);
        for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
        const auto k4 = apply(tmp);
        for (size_t i = 0; i < y.size(); ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        ComplexMatrix rho = unvectorize(y, n);
        const double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > tol::evolve_trace_drift)
            throw StepUnstable("trace drifted beyond tolerance; reduce dt");
        if (rho.max_abs() > 10.0)  // state entries are bounded by 1; growth means dt is unstable
            throw StepUnstable("state norm blew up; reduce dt");
        rho *= cxd(1.0 / tr);
        if (rho.hermiticity_defect() > 1e-8) throw StepUnstable("state lost Hermiticity during integration");
        y = vectorize(rho);
        traj.push_back(DensityMatrix{std::move(rho), liou.layout});
    }
    return traj;
}

double stability_margin(const Liouvillian& liou) {
    const auto spectrum = eig_general(liou.matrix);
    double scale = 0;
    for (const auto& z : spectrum) scale = std::max(scale, std::abs(z));
    if (scale == 0) return 0.0;
    double re_max = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& z : spectrum) {
        if (std::abs(z) <= tol::spectrum_floor * scale) continue;
        any = true;
        re_max = std::max(re_max, z.real());
    }
    return any ? -re_max : 0.0;
}

}  // namespace etsim
