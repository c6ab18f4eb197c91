#pragma once

#include <array>

#include "etsim/errors.hpp"

namespace etsim {

/// Single-excitation eigenstructure of the donor-cavity-acceptor block.
/// hopfield[p] = (|a_PD|^2, |a_PC|^2, |a_PA|^2) for p = lower, middle, upper.
struct PolaritonSet {
    std::array<double, 3> energies{};                  // ascending
    std::array<std::array<double, 3>, 3> hopfield{};   // rows L, M, U

    double row_sum(int p) const { return hopfield[p][0] + hopfield[p][1] + hopfield[p][2]; }
};

/// Diagonalizes [[Delta, g_D, 0], [g_D, delta, g_A], [0, g_A, 0]].
/// Degeneracies are ordered by energy, then lexicographically by Hopfield row.
PolaritonSet polariton_modes(double Delta, double delta, double g_D, double g_A);

/// Donor- and acceptor-branch polaritons of the two uncoupled two-level
/// problems: (E-_D, E+_D, E-_A, E+_A). The acceptor branch uses g_A.
struct BarePolaritons {
    double minus_D, plus_D, minus_A, plus_A;
};
BarePolaritons bare_polaritons(double Delta, double delta, double g_D, double g_A);

/// Cavity detuning at which the middle polariton carries equal donor and
/// acceptor weight. Delta = 0 is a pole unless g_D = g_A (symmetric limit 0).
double optimal_cavity_detuning(double Delta, double g_D, double g_A);

}  // namespace etsim
