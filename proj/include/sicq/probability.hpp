#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sicq {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

// A point of the probability simplex. Entries are nonnegative and sum to one
// within kExactTol; construction goes through from_values, which separates
// floating-point noise (entries in [-tol, 0), sum off by <= tol) from genuine
// invalidity.
class ProbVector {
 public:
  // Validates then clamps: entries in [-tol, 0) become 0 and the result is
  // renormalised. Throws ValidationError for entries below -tol, above 1 + tol,
  // or a sum more than tol away from 1.
  static ProbVector from_values(const Eigen::VectorXd& values, double tol = kDefaultTol);
  static ProbVector from_values(std::span<const double> values, double tol = kDefaultTol);

  static ProbVector uniform(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  std::vector<double> to_vector() const;

  double dot(const ProbVector& other) const;
  double sum_of_squares() const { return values_.squaredNorm(); }

 private:
  explicit ProbVector(Eigen::VectorXd values) : values_(std::move(values)) {}
  Eigen::VectorXd values_;
};

}  // namespace sicq
