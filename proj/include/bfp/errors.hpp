#pragma once

// Error taxonomy shared across the library. Every failure carries a stable
// machine-readable kind string; the CLI maps it onto structured JSON and
// exit status 1.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bfp {

class error : public std::runtime_error {
public:
  error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define BFP_ERROR_KIND(Name, Kind)                                       \
  class Name : public error {                                            \
  public:                                                                \
    explicit Name(const std::string& detail) : error(Kind, detail) {}    \
  }

BFP_ERROR_KIND(period_overflow, "PeriodOverflow");
BFP_ERROR_KIND(subset_blowup, "SubsetBlowup");
BFP_ERROR_KIND(coprimality_required, "CoprimalityRequired");
BFP_ERROR_KIND(requires_two, "Requires2");
BFP_ERROR_KIND(simplex_violation, "SimplexViolation");
BFP_ERROR_KIND(method_cap, "MethodCap");
BFP_ERROR_KIND(enumeration_cap, "EnumerationCap");
BFP_ERROR_KIND(no_fixed_position, "NoFixedPosition");
BFP_ERROR_KIND(pattern_too_wide, "PatternTooWide");
BFP_ERROR_KIND(degenerate_set, "DegenerateSet");
BFP_ERROR_KIND(invalid_argument_error, "InvalidArgument");

#undef BFP_ERROR_KIND

// Raised when a lower bound exceeds an upper bound at some coordinate.
class order_violation : public error {
public:
  explicit order_violation(std::size_t position)
      : error("OrderViolation",
              "lower word exceeds upper word at position " +
                  std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace bfp
