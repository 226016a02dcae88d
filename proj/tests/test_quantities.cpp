#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "doctest.h"
#include "qmeasure/quantities.hpp"
#include "qmeasure/random.hpp"
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

}  // namespace

TEST_CASE("spin closed forms hold for every state") {
  Rng rng(41);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2.0);
  for (int t = 0; t < 20; ++t) {
    double phi = angle(rng);
    PureState psi = random_state(2, rng);
    MeasurementModel model = build_projective_spin(phi);
    double eps = error_epsilon(model, pauli_x(), psi);
    double eta = disturbance_eta(model, pauli_y(), psi);
    CHECK(std::abs(eps - 2.0 * std::abs(std::sin(phi / 2.0))) < 1e-10);
    CHECK(std::abs(eta - kSqrt2 * std::abs(std::cos(phi))) < 1e-10);
  }
}

TEST_CASE("frozen spin endpoint and midpoint values") {
  PureState up = PureState::basis(2, 0);

  MeasurementModel m0 = build_projective_spin(0.0);
  CHECK(error_epsilon(m0, pauli_x(), up) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(disturbance_eta(m0, pauli_y(), up) == doctest::Approx(kSqrt2).epsilon(1e-12));

  MeasurementModel m6 = build_projective_spin(kPi / 6.0);
  CHECK(std::abs(error_epsilon(m6, pauli_x(), up) - 0.5176380902050415) < 1e-12);
  CHECK(std::abs(disturbance_eta(m6, pauli_y(), up) - 1.2247448713915890) < 1e-12);

  MeasurementModel m2 = build_projective_spin(kPi / 2.0);
  CHECK(std::abs(error_epsilon(m2, pauli_x(), up) - kSqrt2) < 1e-12);
  CHECK(disturbance_eta(m2, pauli_y(), up) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rms dominates dispersion and vanishing error is exact annihilation") {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    MeasurementModel model = random_model(2, 3, rng);
    ComplexOperator a = random_hermitian(2, rng);
    ComplexOperator b = random_hermitian(2, rng);
    PureState psi = random_state(2, rng);

    ComplexOperator m_diff = model.m_out() - model.lift_system(a);
    ComplexOperator b_diff = model.b_out(b) - model.lift_system(b);
    CHECK(error_epsilon(model, a, psi) >= sigma_on_joint(model, m_diff, psi) - 1e-10);
    CHECK(disturbance_eta(model, b, psi) >= sigma_on_joint(model, b_diff, psi) - 1e-10);
  }

  // Precise case: eps = 0 and the difference operator annihilates psi (x) xi.
  MeasurementModel precise = build_projective_spin(0.0);
  PureState psi = random_state(2, rng);
  CHECK(error_epsilon(precise, pauli_x(), psi) < 1e-12);
  ComplexOperator diff = precise.m_out() - precise.lift_system(pauli_x());
  CHECK((diff.mat() * precise.joint(psi).full.vec()).norm() < 1e-10);

  // Detuned case: eps > 0 and the difference operator does not annihilate.
  MeasurementModel detuned = build_projective_spin(0.8);
  CHECK(error_epsilon(detuned, pauli_x(), psi) > 1e-3);
  ComplexOperator diff2 = detuned.m_out() - detuned.lift_system(pauli_x());
  CHECK((diff2.mat() * detuned.joint(psi).full.vec()).norm() > 1e-3);
}

TEST_CASE("quantity set on the spin scenario") {
  PureState up = PureState::basis(2, 0);

  for (double phi : {0.0, kPi / 6.0, 0.9, kPi / 2.0}) {
    MeasurementModel model = build_projective_spin(phi);
    QuantitySet q = quantity_set(model, pauli_x(), pauli_y(), up);
    CHECK(q.sigma_a == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.sigma_b == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.bound_half == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.bound_full == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(q.sigma_m_out == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.sigma_b_out == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.bar_eps_a == doctest::Approx(q.eps_a + q.sigma_a).epsilon(1e-12));
    CHECK(q.bar_eta_b == doctest::Approx(q.eta_b + q.sigma_b).epsilon(1e-12));
    CHECK_FALSE(q.sigma_n_out.has_value());
  }

  QuantitySet q0 = quantity_set(build_projective_spin(0.0), pauli_x(), pauli_y(), up);
  CHECK(q0.eps_a == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q0.eta_b == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(q0.bar_eps_a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q0.bar_eta_b == doctest::Approx(kSqrt2 + 1.0).epsilon(1e-12));

  // Commuting pair: the bound vanishes.
  QuantitySet qc = quantity_set(build_projective_spin(0.3), pauli_x(), pauli_x(), up);
  CHECK(qc.bound_half == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("noisy unbiased variance") {
  ComplexOperator noise(0.5 * pauli_x().mat());
  MeasurementModel model =
      build_noisy_unbiased(pauli_x(), noise, PureState::basis(2, 0));
  PureState up = PureState::basis(2, 0);

  CHECK(error_epsilon(model, pauli_x(), up) == doctest::Approx(0.5).epsilon(1e-10));
  double sm = sigma_on_joint(model, model.m_out(), up);
  CHECK(sm * sm == doctest::Approx(1.25).epsilon(1e-10));
}

TEST_CASE("second pointer quantities on the joint unsharp model") {
  const double s = 1.0 / std::sqrt(2.0);
  MeasurementModel model = build_unsharp_joint_spin(s, s);
  PureState up = PureState::basis(2, 0);

  QuantitySet q = quantity_set(model, pauli_x(), pauli_y(), up);
  REQUIRE(q.sigma_n_out.has_value());
  CHECK(q.eps_a == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(error_epsilon_second(model, pauli_y(), up) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q.sigma_m_out == doctest::Approx(kSqrt2).epsilon(1e-10));
  CHECK(*q.sigma_n_out == doctest::Approx(kSqrt2).epsilon(1e-10));
  CHECK(q.eta_b == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("inaccuracy-fluctuation chain dominates the output dispersions") {
  Rng rng(47);
  for (int t = 0; t < 60; ++t) {
    MeasurementModel model = random_model(3, 2, rng);
    ComplexOperator a = random_hermitian(3, rng);
    ComplexOperator b = random_hermitian(3, rng);
    PureState psi = random_state(3, rng);
    QuantitySet q = quantity_set(model, a, b, psi);
    CHECK(q.bar_eps_a * q.bar_eta_b >= q.sigma_m_out * q.sigma_b_out - 1e-9);
    CHECK(q.sigma_a >= 0.0);
    CHECK(q.eps_a >= 0.0);
    CHECK(q.eta_b >= 0.0);
  }
}
