#pragma once

#include "qmeasure/measurement.hpp"

#include <optional>

namespace qmeasure {

// Root-mean-square size of a full-space operator on psi ⊗ xi, sqrt(<X^2>).
// Computed as a vector norm, so it is exact for X that annihilate the state.
double rms_on_joint(const MeasurementModel& model, const ComplexOperator& x_total,
                    const PureState& psi);

// Standard deviation of a full-space operator on psi ⊗ xi.
double sigma_on_joint(const MeasurementModel& model, const ComplexOperator& x_total,
                      const PureState& psi);

// Measurement error for A: rms of (pointer output M_out) - A ⊗ 1 on psi ⊗ xi.
double error_epsilon(const MeasurementModel& model, const ComplexOperator& a,
                     const PureState& psi);

// Disturbance of B: rms of B_out - B ⊗ 1 on psi ⊗ xi.
double disturbance_eta(const MeasurementModel& model, const ComplexOperator& b,
                       const PureState& psi);

// Error for a second observable read through pointer "N".
double error_epsilon_second(const MeasurementModel& model, const ComplexOperator& b,
                            const PureState& psi);

// Every scalar the relation suite consumes, computed on one (model, A, B, psi)
// scenario. sigma_n_out is present only when the model carries pointer "N".
struct QuantitySet {
  double sigma_a = 0;
  double sigma_b = 0;
  double eps_a = 0;
  double eta_b = 0;
  double bar_eps_a = 0;  // eps_a + sigma_a
  double bar_eta_b = 0;  // eta_b + sigma_b
  double sigma_m_out = 0;
  std::optional<double> sigma_n_out;
  double sigma_b_out = 0;
  double bound_half = 0;  // |<psi| [A,B] |psi>| / 2
  double bound_full = 0;  // 2 * bound_half
};

QuantitySet quantity_set(const MeasurementModel& model, const ComplexOperator& a,
                         const ComplexOperator& b, const PureState& psi);

}  // namespace qmeasure
