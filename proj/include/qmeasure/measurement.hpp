#pragma once

#include "qmeasure/algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace qmeasure {

struct JointState {
  PureState system;
  PureState full;  // system tensor xi
};

// A system+apparatus measurement scheme: apparatus prepared in xi, one
// interaction unitary U on the product space, and named Hermitian pointer
// observables on the apparatus (by convention "M" reads the first target
// observable, an optional "N" reads a second one).
//
// All output operators live in the Heisenberg picture, X -> U^dag X U, so a
// pointer output and a disturbed system observable always commute: they are
// conjugations of operators on disjoint tensor factors.
class MeasurementModel {
 public:
  MeasurementModel(Eigen::Index d_sys, PureState xi, ComplexOperator interaction,
                   std::map<std::string, ComplexOperator> pointers,
                   Tolerances tol = {});

  Eigen::Index d_sys() const { return d_sys_; }
  Eigen::Index d_app() const { return xi_.dim(); }
  Eigen::Index total_dim() const { return interaction_.dim(); }

  const PureState& xi() const { return xi_; }
  const ComplexOperator& interaction() const { return interaction_; }
  const Tolerances& tol() const { return tol_; }

  std::vector<std::string> pointer_labels() const;
  bool has_pointer(const std::string& label) const;
  const ComplexOperator& pointer(const std::string& label) const;

  JointState joint(const PureState& psi) const;

  ComplexOperator lift_system(const ComplexOperator& s) const;     // S ⊗ 1
  ComplexOperator lift_apparatus(const ComplexOperator& p) const;  // 1 ⊗ P

  // U^dag X U for an operator on the full space.
  ComplexOperator heisenberg_out(const ComplexOperator& x_total) const;

  ComplexOperator m_out() const;  // U^dag (1 ⊗ M) U
  ComplexOperator n_out() const;  // U^dag (1 ⊗ N) U; requires pointer "N"
  ComplexOperator b_out(const ComplexOperator& b) const;  // U^dag (B ⊗ 1) U

 private:
  Eigen::Index d_sys_;
  PureState xi_;
  ComplexOperator interaction_;
  std::map<std::string, ComplexOperator> pointers_;
  Tolerances tol_;
};

// Projective readout of the equatorial spin component along angle phi,
// sigma_phi = cos(phi) sx + sin(phi) sy: a probe qubit starting in |0> is
// flipped exactly on the minus eigenspace, U = P+ ⊗ 1 + P- ⊗ sx, pointer sz.
// Measures sigma_phi precisely on every input state.
MeasurementModel build_projective_spin(double phi, Tolerances tol = {});

// Swap readout with additive pointer noise. The apparatus is a copy of the
// system times a noise register; U swaps the system into the copy and the
// pointer reads A on the copy plus the noise observable. The pointer output
// is exactly A ⊗ 1 + 1 ⊗ noise, unbiased for A on every state.
// Requires <xi_noise| noise |xi_noise> = 0.
MeasurementModel build_noisy_unbiased(const ComplexOperator& a,
                                      const ComplexOperator& noise,
                                      const PureState& xi_noise,
                                      Tolerances tol = {});

// Dilation of a Kraus channel {K_a}: the apparatus holds one outcome slot per
// Kraus operator, xi = |0>, and U extends the isometry
//   psi ⊗ |0>  ->  sum_a (K_a psi) ⊗ |a>.
// Pointers are diagonal in the outcome basis with the supplied values, so any
// number of commuting readouts can share one scheme.
MeasurementModel build_from_kraus(
    const std::vector<Matrix>& kraus,
    const std::map<std::string, Eigen::VectorXd>& pointer_values,
    Tolerances tol = {});

// Joint unsharp readout of sx (pointer "M") and sy (pointer "N") on a qubit:
// the four-outcome POVM G_ab = (1 + a lambda sx + b mu sy)/4 with sharpness
// 0 < lambda, mu and lambda^2 + mu^2 <= 1, dilated via build_from_kraus with
// pointer values a/lambda and b/mu. Both readouts are unbiased; at
// lambda = mu = 1/sqrt(2) the joint-measurement bounds are saturated.
MeasurementModel build_unsharp_joint_spin(double lambda, double mu,
                                          Tolerances tol = {});

}  // namespace qmeasure
