#include "qmeasure/random.hpp"

namespace qmeasure {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix ginibre(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return g;
}

}  // namespace

std::uint64_t derived_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64(master ^ splitmix64(k));
}

PureState random_state(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Complex(gauss(rng), gauss(rng));
  }
  return PureState::normalized(std::move(v));
}

ComplexOperator random_hermitian(Eigen::Index dim, Rng& rng) {
  Matrix g = ginibre(dim, rng);
  return ComplexOperator(0.5 * (g + g.adjoint()).eval());
}

ComplexOperator haar_unitary(Eigen::Index dim, Rng& rng) {
  Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar rather than QR-convention.
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return ComplexOperator(std::move(q));
}

}  // namespace qmeasure
