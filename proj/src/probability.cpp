#include "sicq/probability.hpp"

#include <cmath>
#include <string>

#include "sicq/errors.hpp"

namespace sicq {

ProbVector ProbVector::from_values(const Eigen::VectorXd& values, double tol) {
  if (values.size() == 0) throw ValidationError("probability vector is empty");
  Eigen::VectorXd v = values;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw ValidationError("probability entry " + std::to_string(i) + " is not finite");
    if (v[i] < -tol || v[i] > 1.0 + tol) {
      throw ValidationError("probability entry " + std::to_string(i) + " = " + std::to_string(v[i]) +
                            " outside [0, 1]");
    }
    if (v[i] < 0.0) v[i] = 0.0;
  }
  const double total = v.sum();
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("probability vector sums to " + std::to_string(total));
  }
  v /= total;
  return ProbVector(std::move(v));
}

ProbVector ProbVector::from_values(std::span<const double> values, double tol) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return from_values(v, tol);
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("probability vector is empty");
  return ProbVector(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

std::vector<double> ProbVector::to_vector() const {
  return {values_.data(), values_.data() + values_.size()};
}

double ProbVector::dot(const ProbVector& other) const {
  if (other.size() != size()) throw DimensionError("probability vectors differ in length");
  return values_.dot(other.values_);
}

}  // namespace sicq
