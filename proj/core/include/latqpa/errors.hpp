#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latqpa {

enum class ErrorCode {
  domain,
  pole_singularity,
  range,
  io,
  parse,
  // bank container
  bad_magic,
  unsupported_version,
  dimension_mismatch,
  non_finite,
  truncated,
  validation,
  // rate-distortion curves
  too_few_points,
  non_monotonic,
  duplicate_quality,
  empty_overlap,
  // simulator
  infeasible,
  // raw video
  short_file,
  size_mismatch,
  sample_range,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and tests) can tell failure classes apart without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latqpa
