#include "qmeasure/sweep.hpp"

#include <stdexcept>

#include "qmeasure/csv.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/model_io.hpp"

namespace qmeasure {

namespace {

const RelationReport& report_for(const SuiteResult& suite, RelationId id) {
  for (const RelationReport& r : suite.reports) {
    if (r.id == id) return r;
  }
  throw std::logic_error("sweep record is missing relation " + to_string(id));
}

}  // namespace

SweepResult run_spin_sweep(double phi_start, double phi_end, int steps,
                           std::uint64_t seed, const Tolerances& tol) {
  if (steps < 2) {
    throw std::invalid_argument("run_spin_sweep: steps must be >= 2");
  }
  if (!(phi_start < phi_end)) {
    throw std::invalid_argument("run_spin_sweep: phi_start must be < phi_end");
  }

  const ComplexOperator a = pauli_x();
  const ComplexOperator b = pauli_y();
  const PureState psi = PureState::basis(2, 0);

  SweepResult result;
  result.scenario = "projective-spin";
  result.parameter_name = "phi";
  result.seed = seed;
  result.tol = tol;
  result.records.reserve(static_cast<std::size_t>(steps));

  const double span = phi_end - phi_start;
  for (int i = 0; i < steps; ++i) {
    SweepRecord record;
    record.phi = phi_start + span * i / (steps - 1);
    MeasurementModel model = build_projective_spin(record.phi, tol);
    record.quantities = quantity_set(model, a, b, psi);
    record.suite = evaluate_all(model, a, b, psi, all_relation_ids(), tol);
    result.records.push_back(std::move(record));
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out =
      "phi,eps_A,eta_B,sigma_A,sigma_B,bound_half,bound_full,naive_lhs,"
      "ozawa_lhs,uvh_lhs,modak_lhs,sigma_Mout,sigma_Bout,r4_status,r5_status,"
      "r6_status,r7_status\n";
  for (const SweepRecord& rec : result.records) {
    const QuantitySet& q = rec.quantities;
    const RelationReport& r4 =
        report_for(rec.suite, RelationId::r4_naive_error_disturbance);
    const RelationReport& r5 = report_for(rec.suite, RelationId::r5_ozawa);
    const RelationReport& r6 =
        report_for(rec.suite, RelationId::r6_heisenberg_universal);
    const RelationReport& r7 =
        report_for(rec.suite, RelationId::r7_arthurs_kelly_modified);
    out += format_double(rec.phi) + ',' + format_double(q.eps_a) + ',' +
           format_double(q.eta_b) + ',' + format_double(q.sigma_a) + ',' +
           format_double(q.sigma_b) + ',' + format_double(q.bound_half) + ',' +
           format_double(q.bound_full) + ',' + format_double(r4.lhs) + ',' +
           format_double(r5.lhs) + ',' + format_double(r6.lhs) + ',' +
           format_double(r7.lhs) + ',' + format_double(q.sigma_m_out) + ',' +
           format_double(q.sigma_b_out) + ',' + to_string(r4.status) + ',' +
           to_string(r5.status) + ',' + to_string(r6.status) + ',' +
           to_string(r7.status) + '\n';
  }
  return out;
}

nlohmann::json sweep_to_json(const SweepResult& result) {
  nlohmann::json records = nlohmann::json::array();
  for (const SweepRecord& rec : result.records) {
    records.push_back(nlohmann::json{{"phi", rec.phi},
                                     {"quantities", quantity_set_to_json(rec.quantities)},
                                     {"suite", suite_to_json(rec.suite)}});
  }
  return nlohmann::json{{"scenario", result.scenario},
                        {"parameter", result.parameter_name},
                        {"seed", result.seed},
                        {"tol_alg", result.tol.alg},
                        {"tol_rel", result.tol.rel},
                        {"records", records}};
}

}  // namespace qmeasure
