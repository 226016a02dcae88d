#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qmeasure/box.hpp"
#include "test_util.hpp"

using namespace qmeasure;

namespace {

const double kPi = std::numbers::pi;

BoxState single_mode(int n, int n_max, double L, double hbar) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * n_max + 1);
  c(n + n_max) = 1.0;
  return BoxState(L, hbar, n_max, c);
}

BoxState two_mode_equal(double L, double hbar) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(3);
  c(1) = 1.0 / std::sqrt(2.0);  // mode 0
  c(2) = 1.0 / std::sqrt(2.0);  // mode 1
  return BoxState(L, hbar, 1, c);
}

}  // namespace

TEST_CASE("packet construction is validated") {
  Eigen::VectorXcd c3 = Eigen::VectorXcd::Zero(3);
  c3(1) = 1.0;
  CHECK_THROWS_AS(BoxState(1.0, 1.0, 0, c3), std::invalid_argument);
  CHECK_THROWS_AS(BoxState(1.0, 1.0, 65, c3), std::invalid_argument);
  CHECK_THROWS_AS(BoxState(1.0, 1.0, 2, c3), std::invalid_argument);  // size 5 needed
  CHECK_THROWS_AS(BoxState(-2.0, 1.0, 1, c3), std::invalid_argument);
  CHECK_THROWS_AS(BoxState(1.0, 0.0, 1, c3), std::invalid_argument);
  Eigen::VectorXcd off = c3 * 1.5;
  CHECK_THROWS_AS(BoxState(1.0, 1.0, 1, off), std::invalid_argument);
  CHECK(BoxState(1.0, 1.0, 1, c3).dim() == 3);
}

TEST_CASE("plane waves and wall values") {
  const double L = 2.0;
  Complex w = plane_wave(L, 3, 0.25);
  Complex expected = std::exp(Complex(0.0, 2.0 * kPi * 3.0 * 0.25 / L)) / std::sqrt(L);
  CHECK(std::abs(w - expected) < 1e-14);

  BoxState s = single_mode(2, 4, L, 1.0);
  CHECK(std::abs(wavefunction(s, 0.7) - plane_wave(L, 2, 0.7)) < 1e-14);
  CHECK(std::abs(boundary_value(s) - wavefunction(s, L / 2.0)) < 1e-14);
  // Any single mode has |psi|^2 = 1/L everywhere, including the wall.
  CHECK(std::norm(boundary_value(s)) == doctest::Approx(1.0 / L).epsilon(1e-12));
}

TEST_CASE("operator matrices match their closed forms") {
  const double L = 2.0;
  const int n_max = 2;
  Matrix x = position_matrix(L, n_max);
  Matrix x2 = position_sq_matrix(L, n_max);
  Matrix p = momentum_matrix(L, 1.5, n_max);

  CHECK(ComplexOperator(x).is_hermitian(1e-12));
  CHECK(ComplexOperator(x2).is_hermitian(1e-12));
  CHECK(ComplexOperator(p).is_hermitian(1e-12));

  for (int k = 0; k < 5; ++k) CHECK(std::abs(x(k, k)) < 1e-15);
  // k = column - row = 1 and 2.
  CHECK(std::abs(x(0, 1) - Complex(0.0, L / (2.0 * kPi))) < 1e-14);
  CHECK(std::abs(x(0, 2) - Complex(0.0, -L / (4.0 * kPi))) < 1e-14);
  CHECK(std::abs(x2(1, 1) - Complex(L * L / 12.0, 0.0)) < 1e-14);
  CHECK(std::abs(x2(0, 1) - Complex(-L * L / (2.0 * kPi * kPi), 0.0)) < 1e-14);
  CHECK(std::abs(x2(0, 2) - Complex(L * L / (8.0 * kPi * kPi), 0.0)) < 1e-14);
  for (int n = -2; n <= 2; ++n) {
    CHECK(std::abs(p(n + 2, n + 2) - Complex(2.0 * kPi * 1.5 * n / L, 0.0)) < 1e-12);
  }

  // The exact second moment dominates the square of the truncated position
  // matrix: truncation only discards a nonnegative remainder.
  Rng rng(97);
  Matrix gap = x2 - x * x;
  for (int t = 0; t < 30; ++t) {
    Vector v = random_state(5, rng).vec();
    CHECK((v.adjoint() * gap * v)(0).real() > -1e-12);
  }
}

TEST_CASE("single plane wave saturates the wall bound at zero") {
  BoxState s = single_mode(3, 5, 2.5, 1.0);
  CHECK(delta_p(s) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(delta_x(s) == doctest::Approx(2.5 / std::sqrt(12.0)).epsilon(1e-12));
  CHECK(boundary_term(s) == doctest::Approx(0.0).epsilon(1e-12));

  RelationReport rep = check_boundary_relation(s);
  CHECK(rep.id == RelationId::r13_box_momentum_position);
  CHECK(rep.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.rhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.status == RelationStatus::saturated);
}

TEST_CASE("equal two-mode packet, frozen moments") {
  BoxState wide = two_mode_equal(2.0 * kPi, 1.0);
  CHECK(delta_p(wide) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(delta_x(wide) ==
        doctest::Approx(std::sqrt(kPi * kPi / 3.0 - 2.0)).epsilon(1e-12));
  CHECK(std::abs(boundary_value(wide)) < 1e-12);  // modes cancel at the wall
  CHECK(boundary_term(wide) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(boundary_commutator_algebra(wide) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(boundary_commutator_quadrature(wide) + 1.0) < 1e-9);
  CHECK(check_boundary_relation(wide).status == RelationStatus::satisfied);

  BoxState unit = two_mode_equal(1.0, 1.0);
  CHECK(delta_p(unit) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(boundary_term(unit) == doctest::Approx(0.5).epsilon(1e-12));
  RelationReport rep = check_boundary_relation(unit);
  CHECK(rep.lhs ==
        doctest::Approx(kPi * std::sqrt(1.0 / 12.0 - 1.0 / (2.0 * kPi * kPi)))
            .epsilon(1e-12));
  CHECK(rep.status == RelationStatus::satisfied);
}

TEST_CASE("wall-weighted commutator: algebra, quadrature, and bound agree") {
  Rng rng(103);
  for (int t = 0; t < 50; ++t) {
    int n_max = 1 + int(t % 8);
    double L = 0.5 + 9.5 * (t / 49.0);
    BoxState s = random_box_state(n_max, L, 1.0, rng);

    double alg = boundary_commutator_algebra(s);
    double quad = boundary_commutator_quadrature(s);
    CHECK(std::abs(alg - quad) < 1e-8);
    CHECK(boundary_term(s) == doctest::Approx(std::abs(alg) / 2.0).epsilon(1e-12));

    QuadratureMoments qm = quadrature_moments(s);
    CHECK(qm.norm == doctest::Approx(1.0).epsilon(1e-8));
    Vector c = s.coeffs;
    Matrix x = position_matrix(L, n_max);
    Matrix x2 = position_sq_matrix(L, n_max);
    CHECK(std::abs(qm.mean_x - (c.adjoint() * x * c)(0).real()) < 1e-8);
    CHECK(std::abs(qm.mean_x_sq - (c.adjoint() * x2 * c)(0).real()) < 1e-8);
  }
}

TEST_CASE("the wall bound holds for random packets") {
  Rng rng(107);
  for (int t = 0; t < 500; ++t) {
    int n_max = 1 + int(t % 16);
    double L = 1.0 + 9.0 * (t / 499.0);
    BoxState s = random_box_state(n_max, L, 1.0, rng);
    RelationReport rep = check_boundary_relation(s);
    CHECK(rep.status != RelationStatus::violated);
    CHECK(rep.margin >= -1e-8);
  }
}

TEST_CASE("random packets are reproducible by seed") {
  Rng a(11);
  Rng b(11);
  BoxState sa = random_box_state(6, 3.0, 1.0, a);
  BoxState sb = random_box_state(6, 3.0, 1.0, b);
  CHECK(qmtest::mnorm(sa.coeffs - sb.coeffs) == 0.0);
}
