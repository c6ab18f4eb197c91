#pragma once

// Central tolerance table. Every numeric guard in the library reads from here
// so that tests and implementation cannot drift apart.

namespace etsim::tol {

inline constexpr double hermiticity = 1e-12;         // max|A - A^dag| for a matrix flagged Hermitian
inline constexpr double eig_hermitian_pre = 1e-10;   // Hermiticity required by the Hermitian eigensolver
inline constexpr double eig_residual = 1e-9;         // |A v - lambda v| for Hermitian eigenpairs
inline constexpr double solve_residual = 1e-10;      // relative residual of linear solves
inline constexpr double condition_limit = 1e12;      // condition estimate above which solves are rejected
inline constexpr double trace_preservation = 1e-10;  // Tr o L annihilation for Liouvillians
inline constexpr double density_hermiticity = 1e-10;
inline constexpr double density_trace = 1e-10;
inline constexpr double density_positivity = -1e-8;  // smallest admissible eigenvalue of a state
inline constexpr double kernel_gap = 1e-10;          // relative spectral gap for steady-state uniqueness
inline constexpr double spectrum_floor = 1e-12;      // relative cutoff separating the zero mode
inline constexpr double evolve_trace_drift = 1e-6;
inline constexpr double concurrence_clamp = -1e-10;  // eigenvalues of rho rho~ above this are clamped to 0

}  // namespace etsim::tol
