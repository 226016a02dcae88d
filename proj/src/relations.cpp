#include "qmeasure/relations.hpp"

#include <algorithm>
#include <cmath>

namespace qmeasure {

Universality universality_of(RelationId id) {
  switch (id) {
    case RelationId::r2_error_error:
    case RelationId::r3_arthurs_kelly:
    case RelationId::r4_naive_error_disturbance:
    case RelationId::r7_arthurs_kelly_modified:
    case RelationId::r11_error_error_rms:
      return Universality::conditional;
    default:
      return Universality::universal;
  }
}

std::string to_string(RelationId id) {
  switch (id) {
    case RelationId::r1_robertson: return "r1_robertson";
    case RelationId::r2_error_error: return "r2_error_error";
    case RelationId::r3_arthurs_kelly: return "r3_arthurs_kelly";
    case RelationId::r4_naive_error_disturbance: return "r4_naive_error_disturbance";
    case RelationId::r5_ozawa: return "r5_ozawa";
    case RelationId::r6_heisenberg_universal: return "r6_heisenberg_universal";
    case RelationId::r7_arthurs_kelly_modified: return "r7_arthurs_kelly_modified";
    case RelationId::r8_sigma_sum: return "r8_sigma_sum";
    case RelationId::r9_sigma_product_sum: return "r9_sigma_product_sum";
    case RelationId::r10_difference_robertson: return "r10_difference_robertson";
    case RelationId::r11_error_error_rms: return "r11_error_error_rms";
    case RelationId::r12_precise_zero: return "r12_precise_zero";
    case RelationId::r13_box_momentum_position: return "r13_box_momentum_position";
  }
  return "unknown";
}

std::string to_string(RelationStatus status) {
  switch (status) {
    case RelationStatus::satisfied: return "satisfied";
    case RelationStatus::saturated: return "saturated";
    case RelationStatus::violated: return "violated";
  }
  return "unknown";
}

std::string to_string(Universality u) {
  return u == Universality::universal ? "universal" : "conditional";
}

RelationStatus classify(double lhs, double rhs, const Tolerances& tol) {
  double margin = lhs - rhs;
  double band = tol.rel * std::max(1.0, rhs);
  if (std::abs(margin) <= band) return RelationStatus::saturated;
  if (margin < -band) return RelationStatus::violated;
  return RelationStatus::satisfied;
}

RelationReport make_report(RelationId id, double lhs, double rhs,
                           const Tolerances& tol) {
  RelationReport r;
  r.id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.status = classify(lhs, rhs, tol);
  r.universality = universality_of(id);
  return r;
}

RelationReport robertson_report(const ComplexOperator& x, const ComplexOperator& y,
                                const PureState& s, const Tolerances& tol) {
  double lhs = dispersion(x, s, tol) * dispersion(y, s, tol);
  double rhs = 0.5 * std::abs(expectation(commutator(x, y), s));
  return make_report(RelationId::r1_robertson, lhs, rhs, tol);
}

const std::vector<RelationId>& all_relation_ids() {
  static const std::vector<RelationId> ids = {
      RelationId::r1_robertson,
      RelationId::r2_error_error,
      RelationId::r3_arthurs_kelly,
      RelationId::r4_naive_error_disturbance,
      RelationId::r5_ozawa,
      RelationId::r6_heisenberg_universal,
      RelationId::r7_arthurs_kelly_modified,
      RelationId::r8_sigma_sum,
      RelationId::r9_sigma_product_sum,
      RelationId::r10_difference_robertson,
      RelationId::r11_error_error_rms,
      RelationId::r12_precise_zero,
  };
  return ids;
}

namespace {

bool needs_second_pointer(RelationId id) {
  return id == RelationId::r2_error_error ||
         id == RelationId::r3_arthurs_kelly ||
         id == RelationId::r11_error_error_rms;
}

}  // namespace

RelationReport evaluate(RelationId id, const QuantitySet& q,
                        const MeasurementModel& model, const ComplexOperator& a,
                        const ComplexOperator& b, const PureState& psi,
                        const Tolerances& tol) {
  if (id == RelationId::r13_box_momentum_position) {
    throw std::invalid_argument(
        "evaluate: the interval relation is computed from a BoxState, not a model");
  }
  if (needs_second_pointer(id) && !model.has_pointer("N")) {
    throw std::invalid_argument("evaluate: " + to_string(id) +
                                " needs a second pointer \"N\"");
  }

  switch (id) {
    case RelationId::r1_robertson:
      return make_report(id, q.sigma_a * q.sigma_b, q.bound_half, tol);

    case RelationId::r2_error_error: {
      double s_m = sigma_on_joint(model, model.m_out() - model.lift_system(a), psi);
      double s_n = sigma_on_joint(model, model.n_out() - model.lift_system(b), psi);
      return make_report(id, s_m * s_n, q.bound_half, tol);
    }

    case RelationId::r3_arthurs_kelly:
      return make_report(id, q.sigma_m_out * q.sigma_n_out.value(), q.bound_full,
                         tol);

    case RelationId::r4_naive_error_disturbance:
      return make_report(id, q.eps_a * q.eta_b, q.bound_half, tol);

    case RelationId::r5_ozawa:
      return make_report(id,
                         q.eps_a * q.eta_b + q.sigma_a * q.eta_b +
                             q.eps_a * q.sigma_b,
                         q.bound_half, tol);

    case RelationId::r6_heisenberg_universal:
      return make_report(id, q.bar_eps_a * q.bar_eta_b, q.bound_full, tol);

    case RelationId::r7_arthurs_kelly_modified:
      return make_report(id, q.sigma_m_out * q.sigma_b_out, q.bound_full, tol);

    case RelationId::r8_sigma_sum: {
      double s_m = sigma_on_joint(model, model.m_out() - model.lift_system(a), psi);
      double s_b = sigma_on_joint(model, model.b_out(b) - model.lift_system(b), psi);
      return make_report(id, s_m * s_b + s_m * q.sigma_b + q.sigma_a * s_b,
                         q.bound_half, tol);
    }

    case RelationId::r9_sigma_product_sum: {
      double s_m = sigma_on_joint(model, model.m_out() - model.lift_system(a), psi);
      double s_b = sigma_on_joint(model, model.b_out(b) - model.lift_system(b), psi);
      return make_report(id, (s_m + q.sigma_a) * (s_b + q.sigma_b), q.bound_full,
                         tol);
    }

    case RelationId::r10_difference_robertson: {
      ComplexOperator dm = model.m_out() - model.lift_system(a);
      ComplexOperator db = model.b_out(b) - model.lift_system(b);
      JointState js = model.joint(psi);
      double lhs = dispersion(dm, js.full, tol) * dispersion(db, js.full, tol);
      double rhs = 0.5 * std::abs(expectation(commutator(dm, db), js.full));
      return make_report(id, lhs, rhs, tol);
    }

    case RelationId::r11_error_error_rms:
      return make_report(id, q.eps_a * error_epsilon_second(model, b, psi),
                         q.bound_half, tol);

    case RelationId::r12_precise_zero:
      return make_report(id, q.eps_a * q.eta_b, 0.0, tol);

    case RelationId::r13_box_momentum_position:
      break;  // unreachable, handled above
  }
  throw std::invalid_argument("evaluate: unknown relation id");
}

SuiteResult evaluate_all(const MeasurementModel& model, const ComplexOperator& a,
                         const ComplexOperator& b, const PureState& psi,
                         const std::vector<RelationId>& ids,
                         const Tolerances& tol) {
  QuantitySet q = quantity_set(model, a, b, psi);
  SuiteResult result;
  for (RelationId id : ids) {
    if (needs_second_pointer(id) && !model.has_pointer("N")) {
      result.skipped.emplace_back(id, "model has no second pointer \"N\"");
      continue;
    }
    if (id == RelationId::r13_box_momentum_position) {
      result.skipped.emplace_back(id, "interval relation needs a BoxState");
      continue;
    }
    result.reports.push_back(evaluate(id, q, model, a, b, psi, tol));
  }
  return result;
}

}  // namespace qmeasure
