#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace latqpa {

class QualityMap;

/// q_num modulation vectors of `channels` entries each, one per integer
/// quality parameter, stored q-major in single precision.
class VectorBank {
 public:
  VectorBank(int q_num, int channels, std::vector<float> values);

  int q_num() const noexcept { return q_num_; }
  int channels() const noexcept { return channels_; }
  std::span<const float> vector(int q) const;
  std::span<const float> values() const noexcept { return values_; }

  friend bool operator==(const VectorBank&, const VectorBank&) = default;

 private:
  int q_num_;
  int channels_;
  std::vector<float> values_;
};

/// Linear blend of the two knot vectors bracketing `q_tilde`. Integer
/// arguments return the knot itself. Blending is done in double precision.
std::vector<double> interpolate(const VectorBank& bank, double q_tilde);

/// rows x channels matrix, row-major.
class ModulationMatrix {
 public:
  ModulationMatrix(int rows, int channels);

  int rows() const noexcept { return rows_; }
  int channels() const noexcept { return channels_; }
  std::span<const double> row(int r) const;
  std::span<double> row(int r);
  std::span<const double> values() const noexcept { return values_; }

 private:
  int rows_;
  int channels_;
  std::vector<double> values_;
};

/// Row r holds interpolate(bank, q_tilde[r]); a consumer broadcasts it across
/// the latent's width and multiplies channel-wise.
ModulationMatrix row_modulation_matrix(const VectorBank& bank, std::span<const double> q_tilde);
ModulationMatrix row_modulation_matrix(const VectorBank& bank, const QualityMap& map);

enum class BankRole { encoder = 0, decoder = 1, reconstruction = 2, feature = 3 };

inline constexpr std::array<BankRole, 4> kBankRoles = {BankRole::encoder, BankRole::decoder,
                                                       BankRole::reconstruction, BankRole::feature};

std::string_view to_string(BankRole role) noexcept;
BankRole parse_bank_role(std::string_view name);

/// The four banks of a variable-rate model. Channel counts may differ; q_num may not.
struct VectorBankSet {
  VectorBank encoder;
  VectorBank decoder;
  VectorBank reconstruction;
  VectorBank feature;

  const VectorBank& bank(BankRole role) const;
  int q_num() const noexcept { return encoder.q_num(); }
  void validate() const;

  friend bool operator==(const VectorBankSet&, const VectorBankSet&) = default;
};

// VBANKSET container, all integers little-endian:
//   "VBANKSET" | u16 version | u16 q_num | u16 bank_count (= 4)
//   4 x { u32 channels | q_num * channels f32, q-major }
// Banks appear in BankRole order.
inline constexpr std::uint16_t kBankContainerVersion = 1;

std::vector<std::byte> encode_bank_set(const VectorBankSet& set);
VectorBankSet decode_bank_set(std::span<const std::byte> bytes);
void save_bank_set(const VectorBankSet& set, const std::filesystem::path& path);
VectorBankSet load_bank_set(const std::filesystem::path& path);

}  // namespace latqpa
