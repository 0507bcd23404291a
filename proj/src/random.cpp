#include "sicq/random.hpp"

#include <cmath>

namespace sicq::random {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexVector haar_vector(std::size_t dim, Rng& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

DensityOperator pure_state(std::size_t dim, Rng& rng) { return DensityOperator::pure(haar_vector(dim, rng)); }

DensityOperator mixed_state(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::from_matrix(rho);
}

UnitaryMatrix unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return UnitaryMatrix::from_matrix(q);
}

Povm povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> parts;
  parts.reserve(outcomes);
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < outcomes; ++j) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    parts.push_back(g * g.adjoint());
    total += parts.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const ComplexMatrix s = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  for (auto& a : parts) a = s * a * s;
  return Povm::from_effects(std::move(parts));
}

}  // namespace sicq::random
