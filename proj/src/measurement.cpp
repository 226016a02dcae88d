#include "qmeasure/measurement.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qmeasure {

namespace {

constexpr Eigen::Index kMaxTotalDim = 64;

// Extends a D x d isometry to a D x D unitary: the columns of v are kept
// verbatim and the orthogonal complement is filled by Gram-Schmidt over the
// standard basis (deterministic).
Matrix complete_isometry(const Matrix& v) {
  const Eigen::Index rows = v.rows();
  const Eigen::Index have = v.cols();
  Matrix basis(rows, rows);
  basis.leftCols(have) = v;
  Eigen::Index count = have;
  for (Eigen::Index k = 0; k < rows && count < rows; ++k) {
    Vector r = Vector::Zero(rows);
    r(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < count; ++c) {
        r -= basis.col(c) * (basis.col(c).adjoint() * r)(0);
      }
    }
    double norm = r.norm();
    if (norm > 1e-8) {
      basis.col(count++) = r / norm;
    }
  }
  if (count != rows) {
    throw NumericalFault("complete_isometry: basis completion fell short");
  }
  return basis;
}

}  // namespace

MeasurementModel::MeasurementModel(Eigen::Index d_sys, PureState xi,
                                   ComplexOperator interaction,
                                   std::map<std::string, ComplexOperator> pointers,
                                   Tolerances tol)
    : d_sys_(d_sys),
      xi_(std::move(xi)),
      interaction_(std::move(interaction)),
      pointers_(std::move(pointers)),
      tol_(tol) {
  if (d_sys_ < 2 || xi_.dim() < 2) {
    throw std::invalid_argument("MeasurementModel: system and apparatus need dimension >= 2");
  }
  if (interaction_.dim() != d_sys_ * xi_.dim()) {
    throw std::invalid_argument("MeasurementModel: interaction dim " +
                                std::to_string(interaction_.dim()) +
                                " != d_sys * d_app = " +
                                std::to_string(d_sys_ * xi_.dim()));
  }
  if (interaction_.dim() > kMaxTotalDim) {
    throw std::invalid_argument("MeasurementModel: total dimension " +
                                std::to_string(interaction_.dim()) +
                                " exceeds the supported maximum of " +
                                std::to_string(kMaxTotalDim));
  }
  if (!interaction_.is_unitary(tol_.alg)) {
    throw std::invalid_argument("MeasurementModel: interaction is not unitary");
  }
  if (pointers_.find("M") == pointers_.end()) {
    throw std::invalid_argument("MeasurementModel: pointer \"M\" is required");
  }
  for (const auto& [label, op] : pointers_) {
    if (op.dim() != xi_.dim()) {
      throw std::invalid_argument("MeasurementModel: pointer \"" + label +
                                  "\" dim != d_app");
    }
    if (!op.is_hermitian(tol_.alg)) {
      throw std::invalid_argument("MeasurementModel: pointer \"" + label +
                                  "\" is not Hermitian");
    }
  }
}

std::vector<std::string> MeasurementModel::pointer_labels() const {
  std::vector<std::string> labels;
  labels.reserve(pointers_.size());
  for (const auto& [label, op] : pointers_) {
    labels.push_back(label);
  }
  return labels;
}

bool MeasurementModel::has_pointer(const std::string& label) const {
  return pointers_.find(label) != pointers_.end();
}

const ComplexOperator& MeasurementModel::pointer(const std::string& label) const {
  auto it = pointers_.find(label);
  if (it == pointers_.end()) {
    throw std::invalid_argument("MeasurementModel: no pointer \"" + label + "\"");
  }
  return it->second;
}

JointState MeasurementModel::joint(const PureState& psi) const {
  if (psi.dim() != d_sys_) {
    throw std::invalid_argument("MeasurementModel::joint: state dim " +
                                std::to_string(psi.dim()) + " != d_sys " +
                                std::to_string(d_sys_));
  }
  return {psi, tensor(psi, xi_)};
}

ComplexOperator MeasurementModel::lift_system(const ComplexOperator& s) const {
  if (s.dim() != d_sys_) {
    throw std::invalid_argument("lift_system: operator dim != d_sys");
  }
  return tensor(s, ComplexOperator::identity(d_app()));
}

ComplexOperator MeasurementModel::lift_apparatus(const ComplexOperator& p) const {
  if (p.dim() != d_app()) {
    throw std::invalid_argument("lift_apparatus: operator dim != d_app");
  }
  return tensor(ComplexOperator::identity(d_sys_), p);
}

ComplexOperator MeasurementModel::heisenberg_out(const ComplexOperator& x_total) const {
  if (x_total.dim() != total_dim()) {
    throw std::invalid_argument("heisenberg_out: operator dim != total dim");
  }
  return interaction_.adjoint() * x_total * interaction_;
}

ComplexOperator MeasurementModel::m_out() const {
  return heisenberg_out(lift_apparatus(pointer("M")));
}

ComplexOperator MeasurementModel::n_out() const {
  return heisenberg_out(lift_apparatus(pointer("N")));
}

ComplexOperator MeasurementModel::b_out(const ComplexOperator& b) const {
  return heisenberg_out(lift_system(b));
}

MeasurementModel build_projective_spin(double phi, Tolerances tol) {
  ComplexOperator axis = pauli_axis(phi);
  ComplexOperator id2 = ComplexOperator::identity(2);
  ComplexOperator p_plus = 0.5 * (id2 + axis);
  ComplexOperator p_minus = 0.5 * (id2 - axis);
  ComplexOperator u = tensor(p_plus, id2) + tensor(p_minus, pauli_x());
  return MeasurementModel(2, PureState::basis(2, 0), std::move(u),
                          {{"M", pauli_z()}}, tol);
}

MeasurementModel build_noisy_unbiased(const ComplexOperator& a,
                                      const ComplexOperator& noise,
                                      const PureState& xi_noise,
                                      Tolerances tol) {
  if (!a.is_hermitian(tol.alg)) {
    throw std::invalid_argument("build_noisy_unbiased: observable is not Hermitian");
  }
  if (!noise.is_hermitian(tol.alg)) {
    throw std::invalid_argument("build_noisy_unbiased: noise is not Hermitian");
  }
  if (noise.dim() != xi_noise.dim()) {
    throw std::invalid_argument("build_noisy_unbiased: noise dim != noise state dim");
  }
  double mean = expectation(noise, xi_noise).real();
  if (std::abs(mean) > tol.alg) {
    throw std::invalid_argument("build_noisy_unbiased: noise mean " +
                                std::to_string(mean) +
                                " is nonzero on the noise state");
  }

  const Eigen::Index ds = a.dim();
  const Eigen::Index dn = noise.dim();
  const Eigen::Index total = ds * ds * dn;

  // U = SWAP(system, copy) ⊗ 1_noise as a permutation: (i, j, n) -> (j, i, n)
  // with the total index i*(ds*dn) + j*dn + n.
  Matrix u = Matrix::Zero(total, total);
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) {
      for (Eigen::Index n = 0; n < dn; ++n) {
        u(j * ds * dn + i * dn + n, i * ds * dn + j * dn + n) = 1.0;
      }
    }
  }

  ComplexOperator pointer_m = tensor(a, ComplexOperator::identity(dn)) +
                              tensor(ComplexOperator::identity(ds), noise);
  PureState xi = tensor(PureState::basis(ds, 0), xi_noise);
  return MeasurementModel(ds, std::move(xi), ComplexOperator(std::move(u)),
                          {{"M", std::move(pointer_m)}}, tol);
}

MeasurementModel build_from_kraus(
    const std::vector<Matrix>& kraus,
    const std::map<std::string, Eigen::VectorXd>& pointer_values,
    Tolerances tol) {
  if (kraus.size() < 2) {
    throw std::invalid_argument("build_from_kraus: need at least 2 Kraus operators");
  }
  const Eigen::Index ds = kraus.front().rows();
  const auto n = static_cast<Eigen::Index>(kraus.size());
  Matrix completeness = Matrix::Zero(ds, ds);
  for (const Matrix& k : kraus) {
    if (k.rows() != ds || k.cols() != ds) {
      throw std::invalid_argument("build_from_kraus: Kraus operators must be square and same-dim");
    }
    completeness += k.adjoint() * k;
  }
  if ((completeness - Matrix::Identity(ds, ds)).cwiseAbs().maxCoeff() > tol.alg) {
    throw std::invalid_argument("build_from_kraus: sum K^dag K != identity");
  }

  // Isometry V: psi -> sum_a (K_a psi) ⊗ |a>, laid out as (i, a) = i*n + a.
  Matrix v(ds * n, ds);
  for (Eigen::Index j = 0; j < ds; ++j) {
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index i = 0; i < ds; ++i) {
        v(i * n + a, j) = kraus[static_cast<size_t>(a)](i, j);
      }
    }
  }
  Matrix basis = complete_isometry(v);

  // Input slot (j, a=0) carries the isometry; the complement columns fill the
  // remaining slots in order.
  Matrix u(ds * n, ds * n);
  Eigen::Index next = ds;
  for (Eigen::Index j = 0; j < ds; ++j) {
    u.col(j * n) = basis.col(j);
    for (Eigen::Index a = 1; a < n; ++a) {
      u.col(j * n + a) = basis.col(next++);
    }
  }

  std::map<std::string, ComplexOperator> pointers;
  for (const auto& [label, values] : pointer_values) {
    if (values.size() != n) {
      throw std::invalid_argument("build_from_kraus: pointer \"" + label +
                                  "\" needs one value per Kraus operator");
    }
    pointers.emplace(label, ComplexOperator(values.cast<Complex>().asDiagonal()));
  }
  return MeasurementModel(ds, PureState::basis(n, 0), ComplexOperator(std::move(u)),
                          std::move(pointers), tol);
}

MeasurementModel build_unsharp_joint_spin(double lambda, double mu, Tolerances tol) {
  if (!(lambda > 0.0) || !(mu > 0.0) || lambda * lambda + mu * mu > 1.0 + tol.alg) {
    throw std::invalid_argument(
        "build_unsharp_joint_spin: need lambda, mu > 0 with lambda^2 + mu^2 <= 1");
  }
  const Matrix sx = pauli_x().mat();
  const Matrix sy = pauli_y().mat();
  const Matrix id = Matrix::Identity(2, 2);

  // Each element is (1 + r . sigma)/4 with |r| = rho <= 1, so its square
  // root is alpha + beta r . sigma / rho in closed form. The generic
  // eigendecomposition sqrt loses half the significant digits near rho = 1,
  // where one eigenvalue hits zero; the closed form stays exact there.
  //
  // The map rho -> sqrt(1 - rho) has an unbounded derivative at the
  // boundary, so even the rounding of lambda = 1/sqrt(2) would shift the
  // disturbance by ~1e-8. Within tol.alg of the boundary the caller meant
  // the boundary, so land on it exactly.
  const double rho = std::sqrt(lambda * lambda + mu * mu);
  const double deficit = std::max(0.0, 1.0 - rho);
  const double hi = std::sqrt((1.0 + rho) / 4.0);
  const double lo = deficit <= tol.alg ? 0.0 : std::sqrt(deficit / 4.0);
  const double alpha = 0.5 * (hi + lo);
  const double beta_over_rho = 0.5 * (hi - lo) / rho;

  std::vector<Matrix> kraus;
  Eigen::VectorXd m_values(4), n_values(4);
  Eigen::Index slot = 0;
  for (int a : {+1, -1}) {
    for (int b : {+1, -1}) {
      kraus.push_back(alpha * id +
                      beta_over_rho * (a * lambda * sx + b * mu * sy));
      m_values(slot) = a / lambda;
      n_values(slot) = b / mu;
      ++slot;
    }
  }
  return build_from_kraus(kraus, {{"M", m_values}, {"N", n_values}}, tol);
}

}  // namespace qmeasure
