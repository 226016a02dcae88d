#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmeasure/audit.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/relations.hpp"
#include "test_util.hpp"

using namespace qmeasure;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

MeasurementModel random_model(Eigen::Index ds, Eigen::Index da, Rng& rng) {
  ComplexOperator u = haar_unitary(ds * da, rng);
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", random_hermitian(da, rng));
  return MeasurementModel(ds, random_state(da, rng), u, std::move(pointers));
}

const RelationReport& find_report(const SuiteResult& suite, RelationId id) {
  for (const RelationReport& r : suite.reports) {
    if (r.id == id) return r;
  }
  REQUIRE(false);
  return suite.reports.front();
}

}  // namespace

TEST_CASE("status classification bands") {
  Tolerances tol;
  CHECK(classify(2.0, 1.0, tol) == RelationStatus::satisfied);
  CHECK(classify(1.0, 1.0, tol) == RelationStatus::saturated);
  CHECK(classify(1.0 + 5e-9, 1.0, tol) == RelationStatus::saturated);
  CHECK(classify(1.0 - 5e-9, 1.0, tol) == RelationStatus::saturated);
  CHECK(classify(1.0 - 5e-8, 1.0, tol) == RelationStatus::violated);
  // The band scales with max(1, rhs).
  CHECK(classify(100.0 - 5e-7, 100.0, tol) == RelationStatus::saturated);
  CHECK(classify(0.0, 0.0, tol) == RelationStatus::saturated);
  CHECK(classify(1e-12, 0.0, tol) == RelationStatus::saturated);
  CHECK(classify(0.1, 0.0, tol) == RelationStatus::satisfied);

  RelationReport rep = make_report(RelationId::r1_robertson, 2.0, 1.0, tol);
  CHECK(rep.margin == doctest::Approx(1.0));
  CHECK(rep.status == RelationStatus::satisfied);
  CHECK(rep.universality == Universality::universal);
}

TEST_CASE("identifier text and universality labels are stable") {
  CHECK(to_string(RelationId::r1_robertson) == "r1_robertson");
  CHECK(to_string(RelationId::r2_error_error) == "r2_error_error");
  CHECK(to_string(RelationId::r3_arthurs_kelly) == "r3_arthurs_kelly");
  CHECK(to_string(RelationId::r4_naive_error_disturbance) ==
        "r4_naive_error_disturbance");
  CHECK(to_string(RelationId::r5_ozawa) == "r5_ozawa");
  CHECK(to_string(RelationId::r6_heisenberg_universal) == "r6_heisenberg_universal");
  CHECK(to_string(RelationId::r7_arthurs_kelly_modified) ==
        "r7_arthurs_kelly_modified");
  CHECK(to_string(RelationId::r8_sigma_sum) == "r8_sigma_sum");
  CHECK(to_string(RelationId::r9_sigma_product_sum) == "r9_sigma_product_sum");
  CHECK(to_string(RelationId::r10_difference_robertson) == "r10_difference_robertson");
  CHECK(to_string(RelationId::r11_error_error_rms) == "r11_error_error_rms");
  CHECK(to_string(RelationId::r12_precise_zero) == "r12_precise_zero");
  CHECK(to_string(RelationId::r13_box_momentum_position) ==
        "r13_box_momentum_position");
  CHECK(to_string(RelationStatus::satisfied) == "satisfied");
  CHECK(to_string(RelationStatus::saturated) == "saturated");
  CHECK(to_string(RelationStatus::violated) == "violated");

  for (RelationId id : {RelationId::r1_robertson, RelationId::r5_ozawa,
                        RelationId::r6_heisenberg_universal, RelationId::r8_sigma_sum,
                        RelationId::r9_sigma_product_sum,
                        RelationId::r10_difference_robertson,
                        RelationId::r12_precise_zero}) {
    CHECK(universality_of(id) == Universality::universal);
  }
  for (RelationId id : {RelationId::r2_error_error, RelationId::r3_arthurs_kelly,
                        RelationId::r4_naive_error_disturbance,
                        RelationId::r7_arthurs_kelly_modified,
                        RelationId::r11_error_error_rms}) {
    CHECK(universality_of(id) == Universality::conditional);
  }

  CHECK(all_relation_ids().size() == 12);
}

TEST_CASE("robertson on the spin pair saturates") {
  RelationReport rep = robertson_report(pauli_x(), pauli_y(), PureState::basis(2, 0));
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.status == RelationStatus::saturated);
}

TEST_CASE("spin scenario reports at the endpoints") {
  PureState up = PureState::basis(2, 0);
  MeasurementModel m0 = build_projective_spin(0.0);
  SuiteResult suite = evaluate_all(m0, pauli_x(), pauli_y(), up);

  const RelationReport& r4 = find_report(suite, RelationId::r4_naive_error_disturbance);
  CHECK(r4.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r4.rhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r4.status == RelationStatus::violated);

  const RelationReport& r5 = find_report(suite, RelationId::r5_ozawa);
  CHECK(r5.lhs == doctest::Approx(kSqrt2).epsilon(1e-10));
  CHECK(r5.status == RelationStatus::satisfied);

  const RelationReport& r6 = find_report(suite, RelationId::r6_heisenberg_universal);
  CHECK(r6.lhs == doctest::Approx(kSqrt2 + 1.0).epsilon(1e-10));
  CHECK(r6.rhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r6.status == RelationStatus::satisfied);

  const RelationReport& r7 = find_report(suite, RelationId::r7_arthurs_kelly_modified);
  CHECK(r7.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r7.rhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r7.status == RelationStatus::violated);

  // Precise measurement: the difference-operator Robertson bound is an
  // exact 0 >= 0.
  const RelationReport& r10 = find_report(suite, RelationId::r10_difference_robertson);
  CHECK(std::abs(r10.lhs) < 1e-10);
  CHECK(std::abs(r10.rhs) < 1e-10);
  CHECK(r10.status == RelationStatus::saturated);

  const RelationReport& r12 = find_report(suite, RelationId::r12_precise_zero);
  CHECK(r12.status == RelationStatus::saturated);

  // Single-pointer model: the two-pointer relations are skipped with reasons.
  CHECK(suite.skipped.size() == 3);
  for (const auto& [id, reason] : suite.skipped) {
    CHECK((id == RelationId::r2_error_error || id == RelationId::r3_arthurs_kelly ||
           id == RelationId::r11_error_error_rms));
    CHECK_FALSE(reason.empty());
  }

  // Reports come back ordered by id.
  CHECK(std::is_sorted(suite.reports.begin(), suite.reports.end(),
                       [](const RelationReport& l, const RelationReport& r) {
                         return static_cast<int>(l.id) < static_cast<int>(r.id);
                       }));
}

TEST_CASE("frozen mid-sweep values at phi = pi/6") {
  PureState up = PureState::basis(2, 0);
  SuiteResult suite =
      evaluate_all(build_projective_spin(kPi / 6.0), pauli_x(), pauli_y(), up);

  const RelationReport& r4 = find_report(suite, RelationId::r4_naive_error_disturbance);
  CHECK(std::abs(r4.lhs - 0.6339745962155614) < 1e-10);
  CHECK(r4.status == RelationStatus::violated);

  for (RelationId id : {RelationId::r1_robertson, RelationId::r5_ozawa,
                        RelationId::r6_heisenberg_universal, RelationId::r8_sigma_sum,
                        RelationId::r9_sigma_product_sum,
                        RelationId::r10_difference_robertson}) {
    CHECK(find_report(suite, id).status != RelationStatus::violated);
  }
  CHECK(find_report(suite, RelationId::r7_arthurs_kelly_modified).status ==
        RelationStatus::violated);
  CHECK(find_report(suite, RelationId::r12_precise_zero).status ==
        RelationStatus::satisfied);
}

TEST_CASE("commuting observables never violate anything") {
  PureState up = PureState::basis(2, 0);
  SuiteResult suite =
      evaluate_all(build_projective_spin(0.7), pauli_x(), pauli_x(), up);
  for (const RelationReport& r : suite.reports) {
    // Every bound derived from <[A,B]> collapses to zero; r10 bounds by the
    // difference-operator commutator instead, so only its status is fixed.
    if (r.id != RelationId::r10_difference_robertson) {
      CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(r.status != RelationStatus::violated);
  }
}

TEST_CASE("trivial interaction still breaks the naive relation") {
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", pauli_z());
  MeasurementModel trivial(2, PureState::basis(2, 0), ComplexOperator::identity(4),
                           pointers);
  PureState up = PureState::basis(2, 0);
  SuiteResult suite = evaluate_all(trivial, pauli_x(), pauli_y(), up);

  CHECK(find_report(suite, RelationId::r1_robertson).status ==
        RelationStatus::saturated);
  const RelationReport& r4 = find_report(suite, RelationId::r4_naive_error_disturbance);
  CHECK(r4.lhs == doctest::Approx(0.0).epsilon(1e-12));  // eta = 0
  CHECK(r4.status == RelationStatus::violated);
  CHECK(find_report(suite, RelationId::r5_ozawa).lhs ==
        doctest::Approx(kSqrt2).epsilon(1e-10));
}

TEST_CASE("two-pointer relations on the joint unsharp model") {
  const double s = 1.0 / std::sqrt(2.0);
  MeasurementModel model = build_unsharp_joint_spin(s, s);
  PureState up = PureState::basis(2, 0);
  SuiteResult suite = evaluate_all(model, pauli_x(), pauli_y(), up);
  CHECK(suite.skipped.empty());

  CHECK(find_report(suite, RelationId::r2_error_error).status ==
        RelationStatus::saturated);
  const RelationReport& r3 = find_report(suite, RelationId::r3_arthurs_kelly);
  CHECK(r3.lhs == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r3.status == RelationStatus::saturated);
  const RelationReport& r11 = find_report(suite, RelationId::r11_error_error_rms);
  CHECK(r11.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r11.status == RelationStatus::saturated);
  CHECK(find_report(suite, RelationId::r4_naive_error_disturbance).status ==
        RelationStatus::saturated);
}

TEST_CASE("requesting the unavailable is an error") {
  MeasurementModel model = build_projective_spin(0.2);
  PureState up = PureState::basis(2, 0);
  QuantitySet q = quantity_set(model, pauli_x(), pauli_y(), up);
  CHECK_THROWS_AS(evaluate(RelationId::r13_box_momentum_position, q, model,
                           pauli_x(), pauli_y(), up),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(RelationId::r2_error_error, q, model, pauli_x(),
                           pauli_y(), up),
                  std::invalid_argument);
}

TEST_CASE("universal relations survive random models") {
  const std::vector<RelationId> universal = {
      RelationId::r1_robertson,          RelationId::r5_ozawa,
      RelationId::r6_heisenberg_universal, RelationId::r8_sigma_sum,
      RelationId::r9_sigma_product_sum,  RelationId::r10_difference_robertson,
      RelationId::r12_precise_zero};
  Rng rng(53);
  std::uniform_int_distribution<int> dim(2, 4);
  for (int t = 0; t < 200; ++t) {
    Eigen::Index ds = dim(rng);
    Eigen::Index da = dim(rng);
    MeasurementModel model = random_model(ds, da, rng);
    ComplexOperator a = random_hermitian(ds, rng);
    ComplexOperator b = random_hermitian(ds, rng);
    PureState psi = random_state(ds, rng);
    SuiteResult suite = evaluate_all(model, a, b, psi, universal);
    for (const RelationReport& r : suite.reports) {
      CHECK(r.status != RelationStatus::violated);
      CHECK(r.margin >= -1e-8);
    }

    // Monotonicity: the universal product bound dominates the sum bound.
    SuiteResult pair = evaluate_all(
        model, a, b, psi, {RelationId::r5_ozawa, RelationId::r6_heisenberg_universal});
    CHECK(find_report(pair, RelationId::r6_heisenberg_universal).lhs >=
          find_report(pair, RelationId::r5_ozawa).lhs - 1e-10);

    // Chain: the inaccuracy-fluctuation product dominates the output
    // dispersion product that feeds the modified joint relation.
    QuantitySet q = quantity_set(model, a, b, psi);
    CHECK(find_report(pair, RelationId::r6_heisenberg_universal).lhs >=
          q.sigma_m_out * q.sigma_b_out - 1e-9);
  }
}

TEST_CASE("output variance factorization under double unbiasedness") {
  // Three-level channel that measures diag(1, 0, -1) precisely and leaves
  // its statistics unbiased while still disturbing superpositions that
  // involve the middle level.
  Matrix k1 = Matrix::Zero(3, 3);
  k1(0, 0) = 1.0;
  Matrix k2 = Matrix::Zero(3, 3);
  k2(2, 2) = 1.0;
  Matrix k3 = Matrix::Zero(3, 3);
  k3(0, 1) = 1.0 / std::sqrt(2.0);
  Matrix k4 = Matrix::Zero(3, 3);
  k4(2, 1) = 1.0 / std::sqrt(2.0);
  std::map<std::string, Eigen::VectorXd> values;
  Eigen::VectorXd v(4);
  v << 1.0, -1.0, 0.0, 0.0;
  values["M"] = v;
  MeasurementModel model = build_from_kraus({k1, k2, k3, k4}, values);

  Matrix ladder = Matrix::Zero(3, 3);
  ladder(0, 0) = 1.0;
  ladder(2, 2) = -1.0;
  ComplexOperator a(ladder);

  CHECK(check_unbiased_measurement(model, a).is_unbiased);
  CHECK(check_unbiased_disturbance(model, a).is_unbiased);

  Rng rng(59);
  for (int t = 0; t < 25; ++t) {
    PureState psi = random_state(3, rng);
    QuantitySet q = quantity_set(model, a, a, psi);
    CHECK(q.eps_a < 1e-10);  // precise for the ladder observable

    SuiteResult suite =
        evaluate_all(model, a, a, psi, {RelationId::r7_arthurs_kelly_modified});
    double lhs = find_report(suite, RelationId::r7_arthurs_kelly_modified).lhs;
    double expected_sq = (q.eps_a * q.eps_a + q.sigma_a * q.sigma_a) *
                         (q.eta_b * q.eta_b + q.sigma_b * q.sigma_b);
    CHECK(std::abs(lhs * lhs - expected_sq) < 1e-8);
  }

  // The middle level is genuinely disturbed.
  Vector mid = Vector::Zero(3);
  mid(1) = 1.0;
  CHECK(disturbance_eta(model, a, PureState(mid)) == doctest::Approx(1.0).epsilon(1e-10));
}
