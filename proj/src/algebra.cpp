#include "qmeasure/algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace qmeasure {

namespace {

void require_same_dim(const ComplexOperator& x, const ComplexOperator& y,
                      const char* who) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch " +
                                std::to_string(x.dim()) + " vs " +
                                std::to_string(y.dim()));
  }
}

Complex quadratic_form(const Matrix& a, const Vector& u, const Vector& w) {
  return (u.adjoint() * a * w)(0);
}

}  // namespace

Tolerances::Tolerances(double alg_, double rel_) : alg(alg_), rel(rel_) {
  if (!(alg > 0.0) || !(alg <= rel) || !(rel < 1.0)) {
    throw std::invalid_argument("Tolerances: need 0 < alg <= rel < 1, got alg=" +
                                std::to_string(alg_) + " rel=" +
                                std::to_string(rel_));
  }
}

ComplexOperator::ComplexOperator(Matrix entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("ComplexOperator: matrix must be square, got " +
                                std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()));
  }
  if (mat_.rows() == 0) {
    throw std::invalid_argument("ComplexOperator: dimension must be positive");
  }
}

ComplexOperator ComplexOperator::identity(Eigen::Index dim) {
  return ComplexOperator(Matrix::Identity(dim, dim));
}

ComplexOperator ComplexOperator::zero(Eigen::Index dim) {
  return ComplexOperator(Matrix::Zero(dim, dim));
}

bool ComplexOperator::is_hermitian(double tol) const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool ComplexOperator::is_unitary(double tol) const {
  Matrix defect = mat_.adjoint() * mat_ - Matrix::Identity(dim(), dim());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

ComplexOperator operator+(const ComplexOperator& x, const ComplexOperator& y) {
  require_same_dim(x, y, "operator+");
  return ComplexOperator(x.mat() + y.mat());
}

ComplexOperator operator-(const ComplexOperator& x, const ComplexOperator& y) {
  require_same_dim(x, y, "operator-");
  return ComplexOperator(x.mat() - y.mat());
}

ComplexOperator operator*(const ComplexOperator& x, const ComplexOperator& y) {
  require_same_dim(x, y, "operator*");
  return ComplexOperator(x.mat() * y.mat());
}

ComplexOperator operator*(Complex c, const ComplexOperator& x) {
  return ComplexOperator(c * x.mat());
}

ComplexOperator operator*(double c, const ComplexOperator& x) {
  return ComplexOperator(c * x.mat());
}

PureState::PureState(Vector amplitudes, double tol) : vec_(std::move(amplitudes)) {
  if (vec_.size() == 0) {
    throw std::invalid_argument("PureState: dimension must be positive");
  }
  double norm = vec_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("PureState: vector norm " + std::to_string(norm) +
                                " is not 1 within tolerance");
  }
}

PureState PureState::normalized(Vector amplitudes) {
  double norm = amplitudes.norm();
  if (norm <= 0.0) {
    throw std::invalid_argument("PureState::normalized: zero vector");
  }
  return PureState(amplitudes / norm);
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) {
    throw std::invalid_argument("PureState::basis: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

ComplexOperator tensor(const ComplexOperator& x, const ComplexOperator& y) {
  return ComplexOperator(Eigen::kroneckerProduct(x.mat(), y.mat()).eval());
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v = Eigen::kroneckerProduct(a.vec(), b.vec()).eval();
  return PureState::normalized(std::move(v));
}

Complex expectation(const ComplexOperator& x, const PureState& s) {
  if (x.dim() != s.dim()) {
    throw std::invalid_argument("expectation: operator dim " +
                                std::to_string(x.dim()) + " != state dim " +
                                std::to_string(s.dim()));
  }
  return quadratic_form(x.mat(), s.vec(), s.vec());
}

ComplexOperator commutator(const ComplexOperator& x, const ComplexOperator& y) {
  require_same_dim(x, y, "commutator");
  return ComplexOperator(x.mat() * y.mat() - y.mat() * x.mat());
}

ComplexOperator anticommutator(const ComplexOperator& x, const ComplexOperator& y) {
  require_same_dim(x, y, "anticommutator");
  return ComplexOperator(x.mat() * y.mat() + y.mat() * x.mat());
}

double clamped_sqrt(double radicand, double tol_alg) {
  if (radicand < -tol_alg) {
    throw NumericalFault("clamped_sqrt: radicand " + std::to_string(radicand) +
                         " below -" + std::to_string(tol_alg));
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

double dispersion(const ComplexOperator& x, const PureState& s,
                  const Tolerances& tol) {
  if (!x.is_hermitian(tol.alg)) {
    throw std::invalid_argument("dispersion: operator is not Hermitian");
  }
  if (x.dim() != s.dim()) {
    throw std::invalid_argument("dispersion: operator dim " +
                                std::to_string(x.dim()) + " != state dim " +
                                std::to_string(s.dim()));
  }
  double mean = quadratic_form(x.mat(), s.vec(), s.vec()).real();
  double mean_sq = quadratic_form((x.mat() * x.mat()).eval(), s.vec(), s.vec()).real();
  return clamped_sqrt(mean_sq - mean * mean, tol.alg);
}

PolarizationCheck polarization_check(const ComplexOperator& a,
                                     const PureState& s1, const PureState& s2) {
  if (a.dim() != s1.dim() || a.dim() != s2.dim()) {
    throw std::invalid_argument("polarization_check: dimension mismatch");
  }
  const Vector& u = s1.vec();
  const Vector& w = s2.vec();
  const Complex i(0.0, 1.0);
  // The four superpositions are deliberately left unnormalized; the identity
  // holds for the raw quadratic forms.
  Complex rec = 0.25 * (quadratic_form(a.mat(), u + w, u + w) -
                        quadratic_form(a.mat(), u - w, u - w) -
                        i * quadratic_form(a.mat(), u + i * w, u + i * w) +
                        i * quadratic_form(a.mat(), u - i * w, u - i * w));
  Complex direct = quadratic_form(a.mat(), u, w);
  return {direct, rec, std::abs(direct - rec)};
}

std::vector<EigenProjector> projectors_of(const ComplexOperator& x, double tol,
                                          double group_gap) {
  if (!x.is_hermitian(tol)) {
    throw std::invalid_argument("projectors_of: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.mat());
  if (solver.info() != Eigen::Success) {
    throw NumericalFault("projectors_of: eigensolver failed");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<EigenProjector> result;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    while (end < values.size() && values(end) - values(end - 1) < group_gap) {
      ++end;
    }
    Matrix proj = Matrix::Zero(x.dim(), x.dim());
    double mean = 0.0;
    for (Eigen::Index k = start; k < end; ++k) {
      proj += vectors.col(k) * vectors.col(k).adjoint();
      mean += values(k);
    }
    mean /= static_cast<double>(end - start);
    proj = 0.5 * (proj + proj.adjoint()).eval();
    result.push_back({mean, ComplexOperator(std::move(proj))});
    start = end;
  }
  return result;
}

std::vector<double> eigenvalues_of(const ComplexOperator& hermitian, double tol) {
  if (!hermitian.is_hermitian(tol)) {
    throw std::invalid_argument("eigenvalues_of: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian.mat(),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFault("eigenvalues_of: eigensolver failed");
  }
  const auto& values = solver.eigenvalues();
  return std::vector<double>(values.data(), values.data() + values.size());
}

double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

ComplexOperator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return ComplexOperator(std::move(m));
}

ComplexOperator pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return ComplexOperator(std::move(m));
}

ComplexOperator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return ComplexOperator(std::move(m));
}

ComplexOperator pauli_axis(double phi) {
  return std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
}

}  // namespace qmeasure
