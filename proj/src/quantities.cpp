#include "qmeasure/quantities.hpp"

namespace qmeasure {

namespace {

void require_hermitian_system(const MeasurementModel& model,
                              const ComplexOperator& x, const char* who) {
  if (x.dim() != model.d_sys()) {
    throw std::invalid_argument(std::string(who) + ": observable dim != d_sys");
  }
  if (!x.is_hermitian(model.tol().alg)) {
    throw std::invalid_argument(std::string(who) + ": observable is not Hermitian");
  }
}

}  // namespace

double rms_on_joint(const MeasurementModel& model, const ComplexOperator& x_total,
                    const PureState& psi) {
  JointState js = model.joint(psi);
  if (x_total.dim() != js.full.dim()) {
    throw std::invalid_argument("rms_on_joint: operator dim != total dim");
  }
  return (x_total.mat() * js.full.vec()).norm();
}

double sigma_on_joint(const MeasurementModel& model, const ComplexOperator& x_total,
                      const PureState& psi) {
  return dispersion(x_total, model.joint(psi).full, model.tol());
}

double error_epsilon(const MeasurementModel& model, const ComplexOperator& a,
                     const PureState& psi) {
  require_hermitian_system(model, a, "error_epsilon");
  return rms_on_joint(model, model.m_out() - model.lift_system(a), psi);
}

double disturbance_eta(const MeasurementModel& model, const ComplexOperator& b,
                       const PureState& psi) {
  require_hermitian_system(model, b, "disturbance_eta");
  return rms_on_joint(model, model.b_out(b) - model.lift_system(b), psi);
}

double error_epsilon_second(const MeasurementModel& model, const ComplexOperator& b,
                            const PureState& psi) {
  require_hermitian_system(model, b, "error_epsilon_second");
  return rms_on_joint(model, model.n_out() - model.lift_system(b), psi);
}

QuantitySet quantity_set(const MeasurementModel& model, const ComplexOperator& a,
                         const ComplexOperator& b, const PureState& psi) {
  require_hermitian_system(model, a, "quantity_set");
  require_hermitian_system(model, b, "quantity_set");

  QuantitySet q;
  q.sigma_a = dispersion(a, psi, model.tol());
  q.sigma_b = dispersion(b, psi, model.tol());
  q.eps_a = error_epsilon(model, a, psi);
  q.eta_b = disturbance_eta(model, b, psi);
  q.bar_eps_a = q.eps_a + q.sigma_a;
  q.bar_eta_b = q.eta_b + q.sigma_b;
  q.sigma_m_out = sigma_on_joint(model, model.m_out(), psi);
  if (model.has_pointer("N")) {
    q.sigma_n_out = sigma_on_joint(model, model.n_out(), psi);
  }
  q.sigma_b_out = sigma_on_joint(model, model.b_out(b), psi);
  q.bound_half = 0.5 * std::abs(expectation(commutator(a, b), psi));
  q.bound_full = 2.0 * q.bound_half;
  return q;
}

}  // namespace qmeasure
