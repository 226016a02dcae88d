#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace qmeasure {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Thrown when a computation produces a value that no valid input can produce
// (e.g. a variance radicand far below zero). Signals a bug, not bad input.
struct NumericalFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tol.alg bounds absolute defects of algebraic identities (hermiticity,
// unitarity, normalization, radicand clamping); tol.rel scales inequality
// margins when deciding satisfied/saturated/violated.
struct Tolerances {
  double alg = 1e-10;
  double rel = 1e-8;

  Tolerances() = default;
  Tolerances(double alg_, double rel_);  // requires 0 < alg <= rel < 1
};

class ComplexOperator {
 public:
  explicit ComplexOperator(Matrix entries);

  static ComplexOperator identity(Eigen::Index dim);
  static ComplexOperator zero(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }

  bool is_hermitian(double tol = Tolerances{}.alg) const;
  bool is_unitary(double tol = Tolerances{}.alg) const;

  ComplexOperator adjoint() const { return ComplexOperator(mat_.adjoint()); }
  ComplexOperator operator-() const { return ComplexOperator(-mat_); }

 private:
  Matrix mat_;
};

ComplexOperator operator+(const ComplexOperator& x, const ComplexOperator& y);
ComplexOperator operator-(const ComplexOperator& x, const ComplexOperator& y);
ComplexOperator operator*(const ComplexOperator& x, const ComplexOperator& y);
ComplexOperator operator*(Complex c, const ComplexOperator& x);
ComplexOperator operator*(double c, const ComplexOperator& x);

class PureState {
 public:
  // Requires |norm - 1| <= tol; use normalized() to scale arbitrary vectors.
  explicit PureState(Vector amplitudes, double tol = Tolerances{}.alg);

  static PureState normalized(Vector amplitudes);
  static PureState basis(Eigen::Index dim, Eigen::Index k);

  Eigen::Index dim() const { return vec_.size(); }
  const Vector& vec() const { return vec_; }

 private:
  Vector vec_;
};

// Kronecker products; index convention (i,a) -> i * dim(y) + a, so the left
// factor is the slow index.
ComplexOperator tensor(const ComplexOperator& x, const ComplexOperator& y);
PureState tensor(const PureState& a, const PureState& b);

Complex expectation(const ComplexOperator& x, const PureState& s);

ComplexOperator commutator(const ComplexOperator& x, const ComplexOperator& y);
ComplexOperator anticommutator(const ComplexOperator& x, const ComplexOperator& y);

// sqrt(radicand) with the clamp rule: radicands in [-tol_alg, 0) count as
// rounding noise and clamp to 0; anything below -tol_alg is a NumericalFault.
double clamped_sqrt(double radicand, double tol_alg = Tolerances{}.alg);

// Standard deviation sqrt(<x^2> - <x>^2) of a Hermitian operator.
double dispersion(const ComplexOperator& x, const PureState& s,
                  const Tolerances& tol = {});

struct PolarizationCheck {
  Complex direct;         // <s1| a |s2> computed as a matrix element
  Complex reconstructed;  // the same element rebuilt from four diagonal forms
  double deviation;       // |direct - reconstructed|
};

// Rebuilds the off-diagonal matrix element <s1| a |s2> from expectation
// values in the four superpositions s1 +- s2 and s1 +- i s2. Establishes
// that statements "for all psi: <psi| X |psi> = 0" are operator statements.
PolarizationCheck polarization_check(const ComplexOperator& a,
                                     const PureState& s1, const PureState& s2);

struct EigenProjector {
  double eigenvalue;  // group mean when near-degenerate values are merged
  ComplexOperator projector;
};

// Spectral decomposition of a Hermitian operator, eigenvalues ascending.
// Adjacent eigenvalues closer than group_gap share one projector.
std::vector<EigenProjector> projectors_of(const ComplexOperator& x,
                                          double tol = Tolerances{}.alg,
                                          double group_gap = 1e-9);

std::vector<double> eigenvalues_of(const ComplexOperator& hermitian,
                                   double tol = Tolerances{}.alg);

double operator_norm(const Matrix& m);  // largest singular value

ComplexOperator pauli_x();
ComplexOperator pauli_y();
ComplexOperator pauli_z();

// cos(phi) sx + sin(phi) sy, the spin component along angle phi in the
// equatorial plane.
ComplexOperator pauli_axis(double phi);

}  // namespace qmeasure
