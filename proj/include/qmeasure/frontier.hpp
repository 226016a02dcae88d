#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmeasure/measurement.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/relations.hpp"

namespace qmeasure {

// Search space over interaction unitaries: U(theta) = exp(i H(theta)) with
// H expanded over the orthonormal Hermitian basis {E_ii} then
// (E_ij + E_ji)/sqrt(2) then (-i E_ij + i E_ji)/sqrt(2) for i < j, so theta
// has (d_sys * d_app)^2 real coefficients and every theta yields a genuine
// unitary.  The apparatus state and pointer are fixed by the
// parameterization; only U varies.
class ModelParameterization {
 public:
  ModelParameterization(Eigen::Index d_sys, Eigen::Index d_app, PureState xi,
                        ComplexOperator pointer,
                        const Tolerances& tol = Tolerances());

  // Ground-state apparatus and the descending-ladder pointer
  // diag(d_app - 1, d_app - 3, ..., -(d_app - 1)); for a qubit apparatus
  // this is xi = |0> with a sigma_z pointer.
  static ModelParameterization standard(Eigen::Index d_sys, Eigen::Index d_app,
                                        const Tolerances& tol = Tolerances());

  Eigen::Index d_sys() const { return d_sys_; }
  Eigen::Index d_app() const { return d_app_; }
  Eigen::Index total_dim() const { return d_sys_ * d_app_; }
  Eigen::Index theta_size() const { return total_dim() * total_dim(); }
  const PureState& xi() const { return xi_; }
  const ComplexOperator& pointer() const { return pointer_; }
  const Tolerances& tol() const { return tol_; }

  // Hermitian generator for a coefficient vector.
  Matrix generator(const Eigen::VectorXd& theta) const;

  MeasurementModel realize(const Eigen::VectorXd& theta) const;

  // Inverse of realize up to the 2 pi branch: a theta with
  // realize(theta) = u exactly, from the Schur form of u.
  Eigen::VectorXd parameters_for_unitary(const ComplexOperator& u) const;

  // Coefficients of the readout unitary sum_k P_k (x) Shift^k built from the
  // spectral projectors of a (eigenvalue groups in descending order), which
  // records the k-th eigenspace on the k-th pointer level.  Requires at most
  // d_app eigenvalue groups.  For a qubit pair and a = sigma_x this is the
  // detuning-zero projective readout, an exact-measurement warm start.
  Eigen::VectorXd flip_parameters(const ComplexOperator& a) const;

 private:
  Eigen::Index d_sys_;
  Eigen::Index d_app_;
  PureState xi_;
  ComplexOperator pointer_;
  Tolerances tol_;
};

struct FrontierPoint {
  Eigen::VectorXd theta;
  double eps = 0.0;
  double eta = 0.0;
  std::vector<RelationReport> reports;  // always-valid relations at the point
};

struct BiasBlowupRecord {
  double eps_cap = 0.0;
  double achieved_eps = 0.0;
  double min_bias_b = 0.0;
  int evaluations = 0;
};

// Derivative-free tradeoff search: minimizes w * eps + (1 - w) * eta over
// theta for w in {0.1, ..., 0.9} with Nelder-Mead, starting each weight from
// the best of {theta0 (if given), zeros, flip_parameters(a), seeded random
// draws}.  Every tenth evaluation spot-checks the always-valid relations and
// the precision/bias tradeoff and throws UniversalViolation on any breach.
// All evaluated points are pooled; the strictly nondominated ones are
// returned sorted by eps (thinned deterministically to about 200).  budget
// caps the total objective evaluations and must be at least 100.
std::vector<FrontierPoint> trace_frontier(
    const ModelParameterization& par, const ComplexOperator& a,
    const ComplexOperator& b, const PureState& psi, int budget,
    std::uint64_t seed, const Eigen::VectorXd& theta0 = Eigen::VectorXd());

// For each cap, minimizes the disturbance-bias norm of b subject to
// eps(a) <= cap by a penalty method (weights 10, 100, 1000), reporting the
// best feasible point found.  caps must be positive and strictly
// decreasing; budget >= 100 is shared across caps.
std::vector<BiasBlowupRecord> bias_blowup_probe(
    const ModelParameterization& par, const ComplexOperator& a,
    const ComplexOperator& b, const PureState& psi,
    const std::vector<double>& caps, int budget, std::uint64_t seed);

// Frontier points, one row per point:
// eps,eta,r1_status,r5_status,r6_status,r10_status
std::string frontier_csv(const std::vector<FrontierPoint>& points);

// Blow-up records, one row per cap:
// eps_cap,achieved_eps,min_bias_B,evaluations
std::string blowup_csv(const std::vector<BiasBlowupRecord>& records);

}  // namespace qmeasure
