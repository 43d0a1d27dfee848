#include "latqpa/vector_bank.hpp"

#include <cmath>
#include <string>

#include "latqpa/errors.hpp"
#include "latqpa/qpa.hpp"

namespace latqpa {

VectorBank::VectorBank(int q_num, int channels, std::vector<float> values)
    : q_num_(q_num), channels_(channels), values_(std::move(values)) {
  if (q_num_ < 2) {
    throw Error(ErrorCode::validation, "vector bank needs q_num >= 2, got " + std::to_string(q_num_));
  }
  if (channels_ < 1) {
    throw Error(ErrorCode::validation, "vector bank needs at least one channel");
  }
  if (values_.size() != static_cast<std::size_t>(q_num_) * static_cast<std::size_t>(channels_)) {
    throw Error(ErrorCode::dimension_mismatch,
                "vector bank of " + std::to_string(q_num_) + "x" + std::to_string(channels_) +
                    " given " + std::to_string(values_.size()) + " values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::non_finite, "vector bank entry (q=" +
                                             std::to_string(i / static_cast<std::size_t>(channels_)) +
                                             ", c=" + std::to_string(i % channels_) +
                                             ") is not finite");
    }
  }
}

std::span<const float> VectorBank::vector(int q) const {
  if (q < 0 || q >= q_num_) {
    throw Error(ErrorCode::range, "quality " + std::to_string(q) + " outside bank");
  }
  return std::span<const float>(values_).subspan(static_cast<std::size_t>(q) * channels_,
                                                 static_cast<std::size_t>(channels_));
}

std::vector<double> interpolate(const VectorBank& bank, double q_tilde) {
  if (!(q_tilde >= 0.0 && q_tilde <= bank.q_num() - 1)) {
    throw Error(ErrorCode::range, "quality " + std::to_string(q_tilde) + " outside [0, " +
                                      std::to_string(bank.q_num() - 1) + "]");
  }
  const double lower = std::floor(q_tilde);
  const auto lo = bank.vector(static_cast<int>(lower));
  std::vector<double> out(lo.begin(), lo.end());
  if (lower == q_tilde) return out;

  // Interior point: ceil = floor + 1, so the weights below sum to one.
  const auto hi = bank.vector(static_cast<int>(lower) + 1);
  const double w_hi = q_tilde - lower;
  const double w_lo = (lower + 1.0) - q_tilde;
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = w_lo * static_cast<double>(lo[c]) + w_hi * static_cast<double>(hi[c]);
  }
  return out;
}

ModulationMatrix::ModulationMatrix(int rows, int channels)
    : rows_(rows),
      channels_(channels),
      values_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(channels)) {
  if (rows < 1 || channels < 1) {
    throw Error(ErrorCode::domain, "modulation matrix dimensions must be positive");
  }
}

std::span<const double> ModulationMatrix::row(int r) const {
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(r) * channels_,
                                                  static_cast<std::size_t>(channels_));
}

std::span<double> ModulationMatrix::row(int r) {
  return std::span<double>(values_).subspan(static_cast<std::size_t>(r) * channels_,
                                            static_cast<std::size_t>(channels_));
}

ModulationMatrix row_modulation_matrix(const VectorBank& bank, std::span<const double> q_tilde) {
  ModulationMatrix matrix(static_cast<int>(q_tilde.size()), bank.channels());
  for (int r = 0; r < matrix.rows(); ++r) {
    try {
      const auto v = interpolate(bank, q_tilde[static_cast<std::size_t>(r)]);
      std::copy(v.begin(), v.end(), matrix.row(r).begin());
    } catch (const Error& e) {
      throw Error(e.code(), "row " + std::to_string(r) + ": " + e.what());
    }
  }
  return matrix;
}

ModulationMatrix row_modulation_matrix(const VectorBank& bank, const QualityMap& map) {
  if (map.config().q_num != bank.q_num()) {
    throw Error(ErrorCode::dimension_mismatch,
                "quality map q_num " + std::to_string(map.config().q_num) +
                    " differs from bank q_num " + std::to_string(bank.q_num()));
  }
  return row_modulation_matrix(bank, map.values());
}

std::string_view to_string(BankRole role) noexcept {
  switch (role) {
    case BankRole::encoder: return "encoder";
    case BankRole::decoder: return "decoder";
    case BankRole::reconstruction: return "reconstruction";
    case BankRole::feature: return "feature";
  }
  return "unknown";
}

BankRole parse_bank_role(std::string_view name) {
  for (BankRole role : kBankRoles) {
    if (to_string(role) == name) return role;
  }
  throw Error(ErrorCode::parse, "unknown bank '" + std::string(name) +
                                    "' (expected encoder, decoder, reconstruction or feature)");
}

const VectorBank& VectorBankSet::bank(BankRole role) const {
  switch (role) {
    case BankRole::encoder: return encoder;
    case BankRole::decoder: return decoder;
    case BankRole::reconstruction: return reconstruction;
    case BankRole::feature: return feature;
  }
  throw Error(ErrorCode::domain, "invalid bank role");
}

void VectorBankSet::validate() const {
  for (BankRole role : kBankRoles) {
    if (bank(role).q_num() != encoder.q_num()) {
      throw Error(ErrorCode::validation,
                  std::string(to_string(role)) + " bank has q_num " +
                      std::to_string(bank(role).q_num()) + " but encoder bank has " +
                      std::to_string(encoder.q_num()));
    }
  }
}

}  // namespace latqpa
