#include "qmeasure/audit.hpp"

#include <cmath>

namespace qmeasure {

ComplexOperator reduce_to_system(const MeasurementModel& model,
                                 const ComplexOperator& x_total) {
  if (x_total.dim() != model.total_dim()) {
    throw std::invalid_argument("reduce_to_system: operator dim != total dim");
  }
  const Eigen::Index ds = model.d_sys();
  const Eigen::Index da = model.d_app();
  const Vector& xi = model.xi().vec();
  Matrix r(ds, ds);
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) {
      r(i, j) = (xi.adjoint() * x_total.mat().block(i * da, j * da, da, da) * xi)(0);
    }
  }
  return ComplexOperator(std::move(r));
}

namespace {

BiasReport bias_report(const MeasurementModel& model, const ComplexOperator& dev,
                       std::string label) {
  double norm = operator_norm(reduce_to_system(model, dev).mat());
  return {std::move(label), norm, norm <= model.tol().alg};
}

}  // namespace

BiasReport check_unbiased_measurement(const MeasurementModel& model,
                                      const ComplexOperator& a) {
  if (!a.is_hermitian(model.tol().alg)) {
    throw std::invalid_argument("check_unbiased_measurement: observable is not Hermitian");
  }
  return bias_report(model, model.m_out() - model.lift_system(a), "measurement");
}

BiasReport check_unbiased_disturbance(const MeasurementModel& model,
                                      const ComplexOperator& b) {
  if (!b.is_hermitian(model.tol().alg)) {
    throw std::invalid_argument("check_unbiased_disturbance: observable is not Hermitian");
  }
  return bias_report(model, model.b_out(b) - model.lift_system(b), "disturbance");
}

StrongConsequenceCheck strong_consequence_check(const MeasurementModel& model,
                                                const ComplexOperator& a,
                                                const ComplexOperator& b,
                                                int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("strong_consequence_check: trials must be >= 1");
  }
  StrongConsequenceCheck out;
  BiasReport bias = check_unbiased_measurement(model, a);
  out.measurement_bias = bias.reduced_deviation_norm;
  out.precondition_ok = bias.is_unbiased;
  if (!out.precondition_ok) {
    return out;
  }

  ComplexOperator noise = model.m_out() - model.lift_system(a);
  ComplexOperator lifted_b = model.lift_system(b);
  ComplexOperator product = noise * lifted_b;
  ComplexOperator reversed = lifted_b * noise;
  out.reduced_product_norm = operator_norm(reduce_to_system(model, product).mat());

  out.trials = trials;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    PureState psi = random_state(model.d_sys(), rng);
    const PureState full = model.joint(psi).full;
    double val = std::max(std::abs(expectation(product, full)),
                          std::abs(expectation(reversed, full)));
    out.max_abs_expectation = std::max(out.max_abs_expectation, val);
  }
  return out;
}

VarianceDecomposition variance_decomposition_check(const MeasurementModel& model,
                                                   const ComplexOperator& a,
                                                   const PureState& psi) {
  double s_out = sigma_on_joint(model, model.m_out(), psi);
  double s_noise =
      sigma_on_joint(model, model.m_out() - model.lift_system(a), psi);
  double s_a = dispersion(a, psi, model.tol());
  VarianceDecomposition v;
  v.lhs = s_out * s_out;
  v.rhs = s_noise * s_noise + s_a * s_a;
  v.gap = v.lhs - v.rhs;
  return v;
}

std::string to_string(ConsistencyVerdict v) {
  switch (v) {
    case ConsistencyVerdict::consistent: return "consistent";
    case ConsistencyVerdict::tradeoff: return "tradeoff";
    case ConsistencyVerdict::fault: return "fault";
  }
  return "unknown";
}

InconsistencyCertificate inconsistency_certificate(const MeasurementModel& model,
                                                   const ComplexOperator& a,
                                                   const ComplexOperator& b,
                                                   const PureState& psi) {
  const Tolerances& tol = model.tol();
  InconsistencyCertificate cert;
  cert.eps_a = error_epsilon(model, a, psi);
  cert.bias_disturbance_b = check_unbiased_disturbance(model, b).reduced_deviation_norm;
  cert.commutator_expectation = std::abs(expectation(commutator(a, b), psi));
  cert.out_commutator_expectation = std::abs(
      expectation(commutator(model.m_out(), model.b_out(b)), model.joint(psi).full));

  if (cert.commutator_expectation <= tol.rel) {
    cert.verdict = ConsistencyVerdict::consistent;
  } else if (cert.eps_a <= tol.alg && cert.bias_disturbance_b <= tol.alg) {
    cert.verdict = ConsistencyVerdict::fault;
  } else {
    cert.verdict = ConsistencyVerdict::tradeoff;
  }
  return cert;
}

}  // namespace qmeasure
