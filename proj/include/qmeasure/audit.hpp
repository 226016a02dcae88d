#pragma once

#include "qmeasure/quantities.hpp"
#include "qmeasure/random.hpp"

#include <string>

namespace qmeasure {

// Partial expectation over the apparatus state: the system operator R with
// <psi'| R |psi> = <psi' ⊗ xi| X |psi ⊗ xi> for all psi, psi'. By the
// polarization identity, R = 0 is equivalent to "<X> vanishes on every
// psi ⊗ xi", which turns statewise unbiasedness claims into one operator norm.
ComplexOperator reduce_to_system(const MeasurementModel& model,
                                 const ComplexOperator& x_total);

struct BiasReport {
  std::string label;
  double reduced_deviation_norm = 0;  // operator norm of the reduction
  bool is_unbiased = false;           // norm <= tol.alg
};

// Bias of the pointer output against A: reduction of M_out - A ⊗ 1.
BiasReport check_unbiased_measurement(const MeasurementModel& model,
                                      const ComplexOperator& a);

// Bias of the disturbed observable against B: reduction of B_out - B ⊗ 1.
BiasReport check_unbiased_disturbance(const MeasurementModel& model,
                                      const ComplexOperator& b);

// For an unbiased measurement the noise operator M_out - A ⊗ 1 is orthogonal
// to every system observable in the state average: <(M_out - A⊗1)(B⊗1)> = 0
// in both operator orders. Checked both as one reduced operator norm and by
// sampling random states. On a biased model the sampling is skipped and only
// the measurement bias is reported.
struct StrongConsequenceCheck {
  bool precondition_ok = false;     // measurement is unbiased for A
  double measurement_bias = 0;      // ||reduce(M_out - A⊗1)||
  double reduced_product_norm = 0;  // ||reduce((M_out - A⊗1)(B⊗1))||
  double max_abs_expectation = 0;   // worst sampled expectation, either order
  int trials = 0;                   // 0 when the precondition failed
};

StrongConsequenceCheck strong_consequence_check(const MeasurementModel& model,
                                                const ComplexOperator& a,
                                                const ComplexOperator& b,
                                                int trials, std::uint64_t seed);

// sigma(M_out)^2 against sigma(M_out - A⊗1)^2 + sigma(A)^2; the two agree
// exactly when the measurement is unbiased.
struct VarianceDecomposition {
  double lhs = 0;
  double rhs = 0;
  double gap = 0;  // lhs - rhs
};

VarianceDecomposition variance_decomposition_check(const MeasurementModel& model,
                                                   const ComplexOperator& a,
                                                   const PureState& psi);

// No scheme can measure A precisely and leave B's statistics unbiased while
// <[A,B]> != 0 on the probe state. The certificate reports where a given
// scenario sits; "fault" marks the impossible triple and signals a bug.
enum class ConsistencyVerdict { consistent, tradeoff, fault };

std::string to_string(ConsistencyVerdict v);

struct InconsistencyCertificate {
  double eps_a = 0;
  double bias_disturbance_b = 0;
  double commutator_expectation = 0;      // |<psi| [A,B] |psi>|
  double out_commutator_expectation = 0;  // |<[M_out, B_out]>|, identically 0
  ConsistencyVerdict verdict = ConsistencyVerdict::consistent;
};

InconsistencyCertificate inconsistency_certificate(const MeasurementModel& model,
                                                   const ComplexOperator& a,
                                                   const ComplexOperator& b,
                                                   const PureState& psi);

}  // namespace qmeasure
