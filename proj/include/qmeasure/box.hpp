#pragma once

#include <Eigen/Dense>

#include "qmeasure/algebra.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/relations.hpp"

namespace qmeasure {

// Normalized wave packet on the interval [-L/2, L/2], expanded over the
// periodic plane waves phi_n(x) = exp(i 2 pi n x / L) / sqrt(L) with
// n = -n_max .. n_max.  Mode n lives at index n + n_max.  The basis
// functions are momentum eigenstates with p_n = 2 pi hbar n / L, so momentum
// moments are plain sums, while position moments use the closed-form matrix
// elements below.
struct BoxState {
  double L = 1.0;
  double hbar = 1.0;
  int n_max = 1;
  Eigen::VectorXcd coeffs;

  BoxState(double length, double hbar_value, int max_mode, Eigen::VectorXcd c,
           const Tolerances& tol = Tolerances());

  int dim() const { return 2 * n_max + 1; }
};

// Largest supported mode cutoff (matrix dimension 2 * 64 + 1 = 129).
inline constexpr int kMaxBoxModes = 64;

// phi_n evaluated at x.
Complex plane_wave(double L, int n, double x);

// The packet evaluated at x.
Complex wavefunction(const BoxState& state, double x);

// Position operator in the plane-wave basis: zero on the diagonal,
// -i L (-1)^k / (2 pi k) off it, with k = column mode - row mode.  x is the
// coordinate on [-L/2, L/2], not a periodic angle, which is what makes the
// wall term below appear.
Matrix position_matrix(double L, int n_max);

// Matrix of x^2 in the same basis: L^2 / 12 on the diagonal and
// L^2 (-1)^k / (2 pi^2 k^2) off it.  This is the exact second moment, not
// the square of the truncated position matrix.
Matrix position_sq_matrix(double L, int n_max);

// Momentum operator: diagonal with entries 2 pi hbar n / L.
Matrix momentum_matrix(double L, double hbar, int n_max);

// Standard deviation of position, from the exact x and x^2 matrices.
double delta_x(const BoxState& state, const Tolerances& tol = Tolerances());

// Standard deviation of momentum.
double delta_p(const BoxState& state, const Tolerances& tol = Tolerances());

// The packet evaluated at the wall, psi(L/2).  The basis is periodic, so
// both walls carry the same value.
Complex boundary_value(const BoxState& state);

// (hbar / 2) |1 - L |psi(L/2)|^2|, the wall-corrected lower bound on the
// variance product.
double boundary_term(const BoxState& state);

// Re(i <[x, p]>) assembled from the truncated matrices.  In coefficient
// algebra [x, p] = i hbar (1 - s s^dag) with s_n = (-1)^n, so this equals
// -hbar (1 - L |psi(L/2)|^2) exactly.
double boundary_commutator_algebra(const BoxState& state);

// The same expression from Simpson quadrature of
// i [ (x psi)^* (p psi) - (p psi)^* (x psi) ] on a uniform grid, with p psi
// evaluated mode by mode.  Independent of the closed-form matrix elements.
double boundary_commutator_quadrature(const BoxState& state, int intervals = 4096);

// Evaluates delta_p * delta_x >= boundary_term.  The right-hand side is
// exactly half the commutator expectation above, so the bound is a
// variance-product instance with the wall weight replacing the usual
// constant.
RelationReport check_boundary_relation(const BoxState& state,
                                       const Tolerances& tol = Tolerances());

// Position moments recomputed by composite Simpson quadrature of |psi(x)|^2
// over [-L/2, L/2].  `norm` integrates |psi|^2 itself and should come out 1;
// the moments cross-check the closed-form matrix elements.
struct QuadratureMoments {
  double norm = 0.0;
  double mean_x = 0.0;
  double mean_x_sq = 0.0;
};

QuadratureMoments quadrature_moments(const BoxState& state, int intervals = 4096);

// Random packet whose mode amplitudes decay geometrically away from n = 0,
// with independent Gaussian real and imaginary parts, normalized.
BoxState random_box_state(int n_max, double L, double hbar, Rng& rng);

}  // namespace qmeasure
