#pragma once

#include <cstdint>

namespace bfp {

// Resource caps and run-wide switches. Defaults keep exact arithmetic and
// enumeration tractable at desk scale; every knob is overridable from the
// CLI (flags win over PF_* environment variables).
struct run_config {
  std::int64_t lcm_cap = 10'000'000;        // largest materialized period
  std::int64_t enum_cap = 10'000'000;       // candidate blocks in oracles
  int subset_cap = 24;                      // inclusion-exclusion subsets
  int pattern_width_cap = 64;               // cylinder pattern span
  int free_position_cap = 24;               // single-period enumeration
  std::int64_t dp_length_cap = 100'000;     // DP positions per shift
  bool serial = true;                       // force deterministic reduction
  enum class precision_mode { double_prec, extended } precision =
      precision_mode::double_prec;
};

}  // namespace bfp
