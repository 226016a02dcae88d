#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmeasure/measurement.hpp"
#include "qmeasure/random.hpp"
#include "test_util.hpp"

using namespace qmeasure;
using qmtest::mdiff;
using qmtest::mnorm;

namespace {

const double kPi = std::numbers::pi;

MeasurementModel random_model(Eigen::Index ds, Eigen::Index da, Rng& rng) {
  ComplexOperator u = haar_unitary(ds * da, rng);
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", random_hermitian(da, rng));
  return MeasurementModel(ds, random_state(da, rng), u, std::move(pointers));
}

}  // namespace

TEST_CASE("model construction validates its pieces") {
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", pauli_z());
  PureState xi = PureState::basis(2, 0);

  CHECK_THROWS_AS(MeasurementModel(1, xi, ComplexOperator::identity(2), pointers),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasurementModel(2, xi, ComplexOperator::identity(6), pointers),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasurementModel(2, xi, ComplexOperator(0.5 * Matrix::Identity(4, 4)),
                                   pointers),
                  std::invalid_argument);

  std::map<std::string, ComplexOperator> no_m;
  no_m.emplace("N", pauli_z());
  CHECK_THROWS_AS(MeasurementModel(2, xi, ComplexOperator::identity(4), no_m),
                  std::invalid_argument);

  std::map<std::string, ComplexOperator> bad_dim;
  bad_dim.emplace("M", ComplexOperator::identity(3));
  CHECK_THROWS_AS(MeasurementModel(2, xi, ComplexOperator::identity(4), bad_dim),
                  std::invalid_argument);

  // 9 x 8 = 72 exceeds the supported total dimension.
  std::map<std::string, ComplexOperator> big;
  big.emplace("M", ComplexOperator::identity(8));
  CHECK_THROWS_AS(MeasurementModel(9, PureState::basis(8, 0),
                                   ComplexOperator::identity(72), big),
                  std::invalid_argument);

  MeasurementModel ok(2, xi, ComplexOperator::identity(4), pointers);
  CHECK(ok.d_sys() == 2);
  CHECK(ok.d_app() == 2);
  CHECK(ok.total_dim() == 4);
  CHECK(ok.has_pointer("M"));
  CHECK_FALSE(ok.has_pointer("N"));
  CHECK_THROWS_AS(ok.pointer("N"), std::invalid_argument);
  CHECK_THROWS_AS(ok.n_out(), std::invalid_argument);
  CHECK(ok.pointer_labels() == std::vector<std::string>{"M"});
}

TEST_CASE("heisenberg picture basics") {
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", pauli_z());
  MeasurementModel trivial(2, PureState::basis(2, 0), ComplexOperator::identity(4),
                           pointers);

  // U = I leaves everything alone.
  ComplexOperator x = tensor(pauli_x(), pauli_z());
  CHECK(mdiff(trivial.heisenberg_out(x).mat(), x.mat()) == 0.0);
  CHECK(mdiff(trivial.b_out(pauli_y()).mat(), tensor(pauli_y(), ComplexOperator::identity(2)).mat()) == 0.0);

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    MeasurementModel model = random_model(3, 2, rng);

    // X = I is fixed by any unitary conjugation.
    CHECK(mdiff(model.heisenberg_out(ComplexOperator::identity(6)).mat(),
                Matrix::Identity(6, 6)) < 1e-12);

    // Pointer and disturbed observable act on disjoint factors.
    ComplexOperator b = random_hermitian(3, rng);
    CHECK(mnorm(commutator(model.m_out(), model.b_out(b)).mat()) < 1e-10);

    // Unitary conjugation preserves spectra.
    ComplexOperator h = random_hermitian(6, rng);
    auto before = eigenvalues_of(h);
    auto after = eigenvalues_of(model.heisenberg_out(h));
    REQUIRE(before.size() == after.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("projective spin readout") {
  for (double phi : {0.0, 0.3, 1.2}) {
    MeasurementModel model = build_projective_spin(phi);
    CHECK(model.interaction().is_unitary(1e-12));

    // The pointer output is exactly sigma_phi (x) sigma_z.
    Matrix expected = tensor(pauli_axis(phi), pauli_z()).mat();
    CHECK(mdiff(model.m_out().mat(), expected) < 1e-12);

    // Spectrum {+1, -1}, each twice.
    auto evs = eigenvalues_of(model.m_out());
    REQUIRE(evs.size() == 4);
    CHECK(evs[0] == doctest::Approx(-1.0));
    CHECK(evs[1] == doctest::Approx(-1.0));
    CHECK(evs[2] == doctest::Approx(1.0));
    CHECK(evs[3] == doctest::Approx(1.0));

    // Precise measurement of sigma_phi: the difference operator kills
    // every psi (x) xi.
    ComplexOperator diff =
        model.m_out() - tensor(pauli_axis(phi), ComplexOperator::identity(2));
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      PureState psi = random_state(2, rng);
      JointState joint = model.joint(psi);
      CHECK((diff.mat() * joint.full.vec()).norm() < 1e-12);
    }

    // Disturbance witness: (b_out - B (x) 1) on |+z>(x)|0> has squared
    // norm 2 cos^2(phi).
    ComplexOperator push =
        model.b_out(pauli_y()) - tensor(pauli_y(), ComplexOperator::identity(2));
    Vector full = model.joint(PureState::basis(2, 0)).full.vec();
    double sq = (push.mat() * full).squaredNorm();
    CHECK(sq == doctest::Approx(2.0 * std::cos(phi) * std::cos(phi)).epsilon(1e-10));
  }
}

TEST_CASE("noisy unbiased readout") {
  ComplexOperator noise(0.5 * pauli_x().mat());
  PureState xi_noise = PureState::basis(2, 0);
  MeasurementModel model = build_noisy_unbiased(pauli_x(), noise, xi_noise);

  CHECK(model.d_sys() == 2);
  CHECK(model.d_app() == 4);

  // m_out = A (x) 1 (x) 1 + 1 (x) 1 (x) noise, exactly.
  Matrix expected =
      tensor(pauli_x(), ComplexOperator::identity(4)).mat() +
      tensor(ComplexOperator::identity(4), noise).mat();
  CHECK(mdiff(model.m_out().mat(), expected) < 1e-12);

  // Zero noise keeps the readout exact.
  MeasurementModel clean =
      build_noisy_unbiased(pauli_x(), ComplexOperator::zero(2), xi_noise);
  Matrix clean_expected = tensor(pauli_x(), ComplexOperator::identity(4)).mat();
  CHECK(mdiff(clean.m_out().mat(), clean_expected) < 1e-12);

  // A noise state with nonzero mean is rejected.
  Vector plus(2);
  plus << 1.0, 1.0;
  CHECK_THROWS_AS(
      build_noisy_unbiased(pauli_x(), noise, PureState::normalized(plus)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      build_noisy_unbiased(pauli_x(), ComplexOperator(Matrix::Zero(2, 2).eval() +
                                                      Complex(0, 1) * pauli_z().mat()),
                           xi_noise),
      std::invalid_argument);
}

TEST_CASE("kraus dilation") {
  // A two-outcome unsharp sigma_z readout.
  Matrix k0 = 0.8 * Matrix::Identity(2, 2) + 0.1 * pauli_z().mat();
  Matrix k1_sq = Matrix::Identity(2, 2) - k0.adjoint() * k0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(k1_sq);
  Matrix k1 = es.operatorSqrt();
  std::map<std::string, Eigen::VectorXd> values;
  Eigen::VectorXd v(2);
  v << 1.0, -1.0;
  values["M"] = v;

  MeasurementModel model = build_from_kraus({k0, k1}, values);
  CHECK(model.interaction().is_unitary(1e-10));
  CHECK(model.d_app() == 2);

  // U extends psi (x) |0> to sum_a K_a psi (x) |a>.
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    PureState psi = random_state(2, rng);
    Vector in = model.joint(psi).full.vec();
    Vector out = model.interaction().mat() * in;
    Vector k0psi = k0 * psi.vec();
    Vector k1psi = k1 * psi.vec();
    // Index (i, a) -> i * d_app + a.
    for (Eigen::Index i = 0; i < 2; ++i) {
      CHECK(std::abs(out(i * 2 + 0) - k0psi(i)) < 1e-10);
      CHECK(std::abs(out(i * 2 + 1) - k1psi(i)) < 1e-10);
    }
  }

  CHECK_THROWS_AS(build_from_kraus({k0}, values), std::invalid_argument);
  CHECK_THROWS_AS(build_from_kraus({k0, k0}, values), std::invalid_argument);

  std::map<std::string, Eigen::VectorXd> bad_len;
  Eigen::VectorXd w(3);
  w << 1.0, 0.0, -1.0;
  bad_len["M"] = w;
  CHECK_THROWS_AS(build_from_kraus({k0, k1}, bad_len), std::invalid_argument);
}

TEST_CASE("joint unsharp spin readout") {
  const double s = 1.0 / std::sqrt(2.0);
  MeasurementModel model = build_unsharp_joint_spin(s, s);
  CHECK(model.d_app() == 4);
  CHECK(model.has_pointer("M"));
  CHECK(model.has_pointer("N"));
  CHECK(model.interaction().is_unitary(1e-10));
  CHECK(mnorm(commutator(model.m_out(), model.n_out()).mat()) < 1e-10);

  CHECK_THROWS_AS(build_unsharp_joint_spin(0.9, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(build_unsharp_joint_spin(0.0, s), std::invalid_argument);
  CHECK_THROWS_AS(build_unsharp_joint_spin(-0.1, s), std::invalid_argument);
}
