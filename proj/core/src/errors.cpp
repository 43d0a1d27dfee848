#include "latqpa/errors.hpp"

namespace latqpa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain error";
    case ErrorCode::pole_singularity: return "pole singularity";
    case ErrorCode::range: return "range error";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::unsupported_version: return "unsupported version";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::non_finite: return "non-finite value";
    case ErrorCode::truncated: return "truncated file";
    case ErrorCode::validation: return "validation error";
    case ErrorCode::too_few_points: return "too few points";
    case ErrorCode::non_monotonic: return "non-monotonic curve";
    case ErrorCode::duplicate_quality: return "duplicate quality";
    case ErrorCode::empty_overlap: return "empty overlap";
    case ErrorCode::infeasible: return "infeasible allocation";
    case ErrorCode::short_file: return "short file";
    case ErrorCode::size_mismatch: return "size mismatch";
    case ErrorCode::sample_range: return "sample out of range";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace latqpa
