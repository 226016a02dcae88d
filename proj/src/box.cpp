#include "qmeasure/box.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qmeasure {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

void validate_geometry(double L, double hbar, int n_max) {
  if (!std::isfinite(L) || L <= 0.0) {
    throw std::invalid_argument("box: interval length must be positive");
  }
  if (!std::isfinite(hbar) || hbar <= 0.0) {
    throw std::invalid_argument("box: hbar must be positive");
  }
  if (n_max < 1 || n_max > kMaxBoxModes) {
    throw std::invalid_argument("box: mode cutoff must lie in [1, 64]");
  }
}

double real_form(const Matrix& m, const Eigen::VectorXcd& c) {
  return (c.adjoint() * m * c)(0).real();
}

// Derivative-applied packet (p psi)(x), evaluated mode by mode.
Complex momentum_applied(const BoxState& state, double x) {
  Complex value = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    const int n = i - state.n_max;
    value += state.coeffs(i) * (kTwoPi * state.hbar * n / state.L) *
             plane_wave(state.L, n, x);
  }
  return value;
}

}  // namespace

BoxState::BoxState(double length, double hbar_value, int max_mode,
                   Eigen::VectorXcd c, const Tolerances& tol)
    : L(length), hbar(hbar_value), n_max(max_mode), coeffs(std::move(c)) {
  validate_geometry(L, hbar, n_max);
  if (coeffs.size() != dim()) {
    throw std::invalid_argument("box: expected 2 * n_max + 1 coefficients");
  }
  if (std::abs(coeffs.norm() - 1.0) > tol.alg) {
    throw std::invalid_argument("box: coefficients must have unit norm");
  }
}

Complex plane_wave(double L, int n, double x) {
  return std::exp(Complex(0.0, kTwoPi * n * x / L)) / std::sqrt(L);
}

Complex wavefunction(const BoxState& state, double x) {
  Complex value = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    value += state.coeffs(i) * plane_wave(state.L, i - state.n_max, x);
  }
  return value;
}

Matrix position_matrix(double L, int n_max) {
  validate_geometry(L, 1.0, n_max);
  const int d = 2 * n_max + 1;
  Matrix x = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const int k = n - m;
      if (k == 0) continue;
      x(m, n) = Complex(0.0, -L * sign_pow(k) / (kTwoPi * k));
    }
  }
  return x;
}

Matrix position_sq_matrix(double L, int n_max) {
  validate_geometry(L, 1.0, n_max);
  const int d = 2 * n_max + 1;
  Matrix x2(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const int k = n - m;
      x2(m, n) = k == 0 ? L * L / 12.0
                        : L * L * sign_pow(k) /
                              (2.0 * std::numbers::pi * std::numbers::pi * k * k);
    }
  }
  return x2;
}

Matrix momentum_matrix(double L, double hbar, int n_max) {
  validate_geometry(L, hbar, n_max);
  const int d = 2 * n_max + 1;
  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    p(i, i) = kTwoPi * hbar * (i - n_max) / L;
  }
  return p;
}

double delta_x(const BoxState& state, const Tolerances& tol) {
  const double m1 = real_form(position_matrix(state.L, state.n_max), state.coeffs);
  const double m2 =
      real_form(position_sq_matrix(state.L, state.n_max), state.coeffs);
  return clamped_sqrt(m2 - m1 * m1, tol.alg);
}

double delta_p(const BoxState& state, const Tolerances& tol) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    const double w = std::norm(state.coeffs(i));
    const double p = kTwoPi * state.hbar * (i - state.n_max) / state.L;
    m1 += w * p;
    m2 += w * p * p;
  }
  return clamped_sqrt(m2 - m1 * m1, tol.alg);
}

Complex boundary_value(const BoxState& state) {
  Complex value = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    value += state.coeffs(i) * sign_pow(i - state.n_max);
  }
  return value / std::sqrt(state.L);
}

double boundary_term(const BoxState& state) {
  return 0.5 * state.hbar *
         std::abs(1.0 - state.L * std::norm(boundary_value(state)));
}

double boundary_commutator_algebra(const BoxState& state) {
  const Matrix x = position_matrix(state.L, state.n_max);
  const Matrix p = momentum_matrix(state.L, state.hbar, state.n_max);
  const Complex comm =
      (state.coeffs.adjoint() * (x * p - p * x) * state.coeffs)(0);
  return (Complex(0.0, 1.0) * comm).real();
}

double boundary_commutator_quadrature(const BoxState& state, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument(
        "boundary_commutator_quadrature: intervals must be even and >= 2");
  }
  const double h = state.L / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double x = -0.5 * state.L + i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const Complex p_psi = momentum_applied(state, x);
    const Complex x_psi = x * wavefunction(state, x);
    acc += w * (Complex(0.0, 1.0) *
                (std::conj(x_psi) * p_psi - std::conj(p_psi) * x_psi))
                   .real();
  }
  return acc * h / 3.0;
}

RelationReport check_boundary_relation(const BoxState& state,
                                       const Tolerances& tol) {
  const double lhs = delta_p(state, tol) * delta_x(state, tol);
  return make_report(RelationId::r13_box_momentum_position, lhs,
                     boundary_term(state), tol);
}

QuadratureMoments quadrature_moments(const BoxState& state, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument("quadrature_moments: intervals must be even and >= 2");
  }
  const double h = state.L / intervals;
  QuadratureMoments q;
  for (int i = 0; i <= intervals; ++i) {
    const double x = -0.5 * state.L + i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double density = std::norm(wavefunction(state, x));
    q.norm += w * density;
    q.mean_x += w * x * density;
    q.mean_x_sq += w * x * x * density;
  }
  q.norm *= h / 3.0;
  q.mean_x *= h / 3.0;
  q.mean_x_sq *= h / 3.0;
  return q;
}

BoxState random_box_state(int n_max, double L, double hbar, Rng& rng) {
  validate_geometry(L, hbar, n_max);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double decay = 0.7;
  Eigen::VectorXcd c(2 * n_max + 1);
  for (int i = 0; i < c.size(); ++i) {
    const double scale = std::pow(decay, std::abs(static_cast<int>(i) - n_max));
    c(i) = scale * Complex(gauss(rng), gauss(rng));
  }
  if (c.norm() < 1e-12) {
    c.setZero();
    c(n_max) = 1.0;
  }
  c /= c.norm();
  return BoxState(L, hbar, n_max, std::move(c));
}

}  // namespace qmeasure
