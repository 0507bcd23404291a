// Shared SIC frames for the tests: analytic for d <= 3, searched otherwise.
#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "sicq/sicframe.hpp"

namespace testing {

inline const sicq::SicFrame& frame_for(std::size_t d) {
  static std::map<std::size_t, sicq::SicFrame> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d <= 3) return cache.emplace(d, sicq::known_sic(d)).first->second;
  std::vector<std::uint64_t> seeds(64);
  std::iota(seeds.begin(), seeds.end(), 0);
  return cache.emplace(d, sicq::search_sic(d, seeds, 5000)).first->second;
}

inline sicq::DensityOperator density(const Eigen::MatrixXcd& m) { return sicq::DensityOperator::from_matrix(m); }

}  // namespace testing
