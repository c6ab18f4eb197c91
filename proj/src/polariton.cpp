#include "etsim/polariton.hpp"

#include <algorithm>
#include <cmath>

#include "etsim/matrix.hpp"

namespace etsim {

PolaritonSet polariton_modes(double Delta, double delta, double g_D, double g_A) {
    ComplexMatrix h(3, 3);
    h(0, 0) = Delta;
    h(1, 1) = delta;
    h(0, 1) = h(1, 0) = g_D;
    h(1, 2) = h(2, 1) = g_A;
    const HermitianEig eig = eig_hermitian(h);

    struct Row {
        double e;
        std::array<double, 3> w;
    };
    std::array<Row, 3> rows;
    for (int p = 0; p < 3; ++p) {
        rows[p].e = eig.eigenvalues[p];
        for (int c = 0; c < 3; ++c) rows[p].w[c] = std::norm(eig.eigenvectors(c, p));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.e != b.e) return a.e < b.e;
        return a.w < b.w;
    });

    PolaritonSet out;
    for (int p = 0; p < 3; ++p) {
        out.energies[p] = rows[p].e;
        out.hopfield[p] = rows[p].w;
    }
    return out;
}

BarePolaritons bare_polaritons(double Delta, double delta, double g_D, double g_A) {
    const double rd = std::sqrt(4 * g_D * g_D + (Delta - delta) * (Delta - delta));
    // acceptor branch with g_A; the published expression prints g_D here,
    // which reduces to the wrong uncoupled limit
    const double ra = std::sqrt(4 * g_A * g_A + delta * delta);
    return BarePolaritons{0.5 * (Delta + delta - rd), 0.5 * (Delta + delta + rd),
                          0.5 * (delta - ra), 0.5 * (delta + ra)};
}

double optimal_cavity_detuning(double Delta, double g_D, double g_A) {
    if (Delta == 0.0) {
        if (g_D == g_A) return 0.0;  // symmetric limit delta = Delta/2
        throw ZeroDetuning("delta_opt is singular at Delta = 0 for g_D != g_A");
    }
    return (g_D * g_D - g_A * g_A) / Delta + g_A * Delta / (g_A + g_D);
}

}  // namespace etsim
