#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sicq/sicframe.hpp"

namespace sicq {

enum class CheckStatus { pass, fail, skip, report };
const char* to_string(CheckStatus status);

// "le": pass iff max_residual <= threshold. "ge": pass iff max_residual >=
// threshold, for rows that demand a separation (witnesses, mixed states).
enum class Comparison { le, ge };
const char* to_string(Comparison cmp);

struct CheckRow {
  std::string suite;
  std::string invariant;
  std::size_t dim = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::le;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct SelfcheckOptions {
  std::vector<std::size_t> dims;
  // Replaces the analytic or searched frame for its own dimension.
  std::optional<SicFrame> frame_override;
  std::uint64_t seed = 0;
  std::size_t search_seeds = 64;
  std::size_t max_iters = 5000;
  unsigned threads = 0;
};

struct SelfcheckReport {
  std::vector<CheckRow> rows;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  // fail if any row failed, else skip if any row was skipped, else pass.
  CheckStatus overall = CheckStatus::pass;
};

SelfcheckReport selfcheck(const SelfcheckOptions& options);

}  // namespace sicq
