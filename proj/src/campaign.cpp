#include "qmeasure/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qmeasure/audit.hpp"
#include "qmeasure/box.hpp"
#include "qmeasure/csv.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/quantities.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/relations.hpp"

namespace qmeasure {

namespace {

Eigen::Index draw_dim(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

// A random model with a Haar interaction and a random Hermitian pointer.
MeasurementModel random_model(Eigen::Index d_sys, Eigen::Index d_app, Rng& rng,
                              const Tolerances& tol) {
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", ComplexOperator(random_hermitian(d_app, rng)));
  return MeasurementModel(d_sys, random_state(d_app, rng),
                          ComplexOperator(haar_unitary(d_sys * d_app, rng)),
                          std::move(pointers), tol);
}

CampaignRecord robertson_instance(int index, std::uint64_t seed,
                                  const Tolerances& tol) {
  Rng rng(seed);
  const Eigen::Index d = draw_dim(rng, 2, 4);
  const ComplexOperator a(random_hermitian(d, rng));
  const ComplexOperator b(random_hermitian(d, rng));
  const PureState psi = random_state(d, rng);
  const RelationReport report = robertson_report(a, b, psi, tol);

  CampaignRecord rec;
  rec.index = index;
  rec.kind = "d" + std::to_string(d);
  rec.worst_margin = report.margin;
  rec.pass = report.status != RelationStatus::violated;
  return rec;
}

CampaignRecord universal_instance(int index, std::uint64_t seed,
                                  const Tolerances& tol) {
  Rng rng(seed);
  const Eigen::Index ds = draw_dim(rng, 2, 4);
  const Eigen::Index da = draw_dim(rng, 2, 4);
  MeasurementModel model = random_model(ds, da, rng, tol);
  const ComplexOperator a(random_hermitian(ds, rng));
  const ComplexOperator b(random_hermitian(ds, rng));
  const PureState psi = random_state(ds, rng);

  const std::vector<RelationId> ids = {
      RelationId::r1_robertson,          RelationId::r5_ozawa,
      RelationId::r6_heisenberg_universal, RelationId::r8_sigma_sum,
      RelationId::r9_sigma_product_sum,  RelationId::r10_difference_robertson,
      RelationId::r12_precise_zero};
  const SuiteResult suite = evaluate_all(model, a, b, psi, ids, tol);

  CampaignRecord rec;
  rec.index = index;
  rec.kind = "d" + std::to_string(ds) + "x" + std::to_string(da);
  rec.pass = true;
  rec.worst_margin = std::numeric_limits<double>::infinity();
  for (const RelationReport& r : suite.reports) {
    rec.worst_margin = std::min(rec.worst_margin, r.margin);
    if (r.status == RelationStatus::violated) rec.pass = false;
  }
  return rec;
}

CampaignRecord certificate_instance(int index, std::uint64_t seed,
                                    const Tolerances& tol) {
  Rng rng(seed);
  const Eigen::Index ds = draw_dim(rng, 2, 4);
  const Eigen::Index da = draw_dim(rng, 2, 4);
  MeasurementModel model = random_model(ds, da, rng, tol);
  const ComplexOperator a(random_hermitian(ds, rng));
  const ComplexOperator b(random_hermitian(ds, rng));
  const PureState psi = random_state(ds, rng);
  const InconsistencyCertificate cert = inconsistency_certificate(model, a, b, psi);

  CampaignRecord rec;
  rec.index = index;
  rec.kind = "certificate";
  rec.pass = cert.verdict != ConsistencyVerdict::fault;
  // Distance from the forbidden corner: positive whenever at least one of
  // eps and bias stays macroscopic while the commutator does not vanish.
  rec.worst_margin =
      cert.commutator_expectation > tol.rel
          ? std::max(cert.eps_a, cert.bias_disturbance_b) - tol.alg
          : 0.0;
  return rec;
}

CampaignRecord witness_instance(int index, std::uint64_t seed,
                                const Tolerances& tol) {
  Rng rng(seed);
  const Eigen::Index ds = draw_dim(rng, 2, 3);
  const Eigen::Index dn = draw_dim(rng, 2, 3);
  const ComplexOperator a(random_hermitian(ds, rng));
  const PureState xi_noise = random_state(dn, rng);

  Matrix raw = random_hermitian(dn, rng).mat();
  const Complex mean = (xi_noise.vec().adjoint() * raw * xi_noise.vec())(0);
  raw -= mean * Matrix::Identity(dn, dn);
  const ComplexOperator noise(std::move(raw));

  MeasurementModel model = build_noisy_unbiased(a, noise, xi_noise, tol);
  const ComplexOperator b(random_hermitian(ds, rng));

  const StrongConsequenceCheck sc =
      strong_consequence_check(model, a, b, 20, derived_seed(seed, 1));
  double max_gap = 0.0;
  for (int t = 0; t < 5; ++t) {
    const PureState psi = random_state(ds, rng);
    max_gap = std::max(max_gap,
                       std::abs(variance_decomposition_check(model, a, psi).gap));
  }

  CampaignRecord rec;
  rec.index = index;
  rec.kind = "witness";
  rec.worst_margin = std::min({tol.rel - sc.max_abs_expectation,
                               tol.rel - sc.reduced_product_norm,
                               tol.rel - max_gap});
  rec.pass = sc.precondition_ok && rec.worst_margin >= 0.0;
  return rec;
}

CampaignRecord box_instance(int index, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  std::uniform_int_distribution<int> modes(1, 16);
  std::uniform_real_distribution<double> lengths(1.0, 10.0);
  const int n_max = modes(rng);
  const double length = lengths(rng);
  const BoxState state = random_box_state(n_max, length, 1.0, rng);
  const RelationReport report = check_boundary_relation(state, tol);

  CampaignRecord rec;
  rec.index = index;
  rec.kind = "n" + std::to_string(n_max);
  rec.worst_margin = report.margin;
  rec.pass = report.status != RelationStatus::violated;
  if (index % 10 == 0) {
    const QuadratureMoments q = quadrature_moments(state);
    const double quad_dx =
        clamped_sqrt(q.mean_x_sq - q.mean_x * q.mean_x, tol.alg);
    if (std::abs(delta_x(state, tol) - quad_dx) > 1e-8) rec.pass = false;
  }
  return rec;
}

}  // namespace

std::string to_string(CampaignSuite suite) {
  switch (suite) {
    case CampaignSuite::robertson: return "robertson";
    case CampaignSuite::universal_relations: return "universal-relations";
    case CampaignSuite::unbiasedness_theorem: return "unbiasedness-theorem";
    case CampaignSuite::box: return "box";
  }
  return "unknown";
}

CampaignSuite campaign_suite_from_string(const std::string& name) {
  if (name == "robertson") return CampaignSuite::robertson;
  if (name == "universal-relations") return CampaignSuite::universal_relations;
  if (name == "unbiasedness-theorem") return CampaignSuite::unbiasedness_theorem;
  if (name == "box") return CampaignSuite::box;
  throw std::invalid_argument(
      "unknown suite \"" + name +
      "\" (expected robertson, universal-relations, unbiasedness-theorem, or box)");
}

CampaignResult run_property_campaign(CampaignSuite suite, int instances,
                                     std::uint64_t seed, const Tolerances& tol) {
  if (instances < 1) {
    throw std::invalid_argument("run_property_campaign: instances must be >= 1");
  }

  CampaignResult result;
  result.suite = suite;
  result.seed = seed;
  result.instances = instances;
  result.tol = tol;
  result.worst_margin = std::numeric_limits<double>::infinity();
  result.records.reserve(static_cast<std::size_t>(instances));

  for (int i = 0; i < instances; ++i) {
    const std::uint64_t instance_seed = derived_seed(seed, static_cast<std::uint64_t>(i));
    CampaignRecord rec;
    switch (suite) {
      case CampaignSuite::robertson:
        rec = robertson_instance(i, instance_seed, tol);
        break;
      case CampaignSuite::universal_relations:
        rec = universal_instance(i, instance_seed, tol);
        break;
      case CampaignSuite::unbiasedness_theorem:
        rec = i % 2 == 0 ? certificate_instance(i, instance_seed, tol)
                         : witness_instance(i, instance_seed, tol);
        break;
      case CampaignSuite::box:
        rec = box_instance(i, instance_seed, tol);
        break;
    }
    result.worst_margin = std::min(result.worst_margin, rec.worst_margin);
    if (rec.pass) {
      ++result.passes;
    } else {
      ++result.failures;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string campaign_csv(const CampaignResult& result) {
  std::string out = "instance,kind,worst_margin,pass\n";
  for (const CampaignRecord& rec : result.records) {
    out += std::to_string(rec.index) + ',' + rec.kind + ',' +
           format_double(rec.worst_margin) + ',' +
           (rec.pass ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::json campaign_to_json(const CampaignResult& result) {
  nlohmann::json records = nlohmann::json::array();
  for (const CampaignRecord& rec : result.records) {
    records.push_back(nlohmann::json{{"instance", rec.index},
                                     {"kind", rec.kind},
                                     {"worst_margin", rec.worst_margin},
                                     {"pass", rec.pass}});
  }
  return nlohmann::json{{"suite", to_string(result.suite)},
                        {"seed", result.seed},
                        {"instances", result.instances},
                        {"passes", result.passes},
                        {"failures", result.failures},
                        {"worst_margin", result.worst_margin},
                        {"records", records}};
}

}  // namespace qmeasure
