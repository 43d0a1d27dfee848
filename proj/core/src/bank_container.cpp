#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "latqpa/errors.hpp"
#include "latqpa/vector_bank.hpp"

namespace latqpa {

namespace {

constexpr std::string_view kMagic = "VBANKSET";
constexpr std::uint16_t kBankCount = 4;

class Writer {
 public:
  void bytes(std::string_view s) {
    for (char c : s) out_.push_back(static_cast<std::byte>(c));
  }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void f32(float v) { le(std::bit_cast<std::uint32_t>(v), 4); }
  std::vector<std::byte> take() { return std::move(out_); }

 private:
  void le(std::uint32_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
  }
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  void need(std::size_t n, std::string_view what) const {
    if (in_.size() - pos_ < n) {
      throw Error(ErrorCode::truncated, "container ends inside " + std::string(what) + " at byte " +
                                            std::to_string(in_.size()));
    }
  }
  std::uint32_t le(std::size_t n, std::string_view what) {
    need(n, what);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v |= std::to_integer<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    }
    pos_ += n;
    return v;
  }
  std::uint16_t u16(std::string_view what) { return static_cast<std::uint16_t>(le(2, what)); }
  std::uint32_t u32(std::string_view what) { return le(4, what); }
  float f32(std::string_view what) { return std::bit_cast<float>(le(4, what)); }
  std::string text(std::size_t n, std::string_view what) {
    need(n, what);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> encode_bank_set(const VectorBankSet& set) {
  set.validate();
  if (set.q_num() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::validation, "q_num does not fit the container's 16-bit field");
  }
  Writer w;
  w.bytes(kMagic);
  w.u16(kBankContainerVersion);
  w.u16(static_cast<std::uint16_t>(set.q_num()));
  w.u16(kBankCount);
  for (BankRole role : kBankRoles) {
    const VectorBank& bank = set.bank(role);
    w.u32(static_cast<std::uint32_t>(bank.channels()));
    for (float v : bank.values()) w.f32(v);
  }
  return w.take();
}

VectorBankSet decode_bank_set(std::span<const std::byte> bytes) {
  Reader r(bytes);
  if (bytes.size() < kMagic.size() || r.text(kMagic.size(), "magic") != kMagic) {
    throw Error(ErrorCode::bad_magic, "missing VBANKSET signature");
  }
  const auto version = r.u16("version");
  if (version != kBankContainerVersion) {
    throw Error(ErrorCode::unsupported_version, "container version " + std::to_string(version));
  }
  const int q_num = r.u16("q_num");
  const auto bank_count = r.u16("bank count");
  if (bank_count != kBankCount) {
    throw Error(ErrorCode::validation,
                "container holds " + std::to_string(bank_count) + " banks, expected 4");
  }
  if (q_num < 2) {
    throw Error(ErrorCode::validation, "container q_num " + std::to_string(q_num) + " < 2");
  }

  std::vector<VectorBank> banks;
  banks.reserve(kBankCount);
  for (BankRole role : kBankRoles) {
    const std::string name(to_string(role));
    const auto channels = r.u32(name + " channel count");
    if (channels == 0 || channels > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
      throw Error(ErrorCode::validation, name + " bank has invalid channel count " +
                                             std::to_string(channels));
    }
    const auto count = static_cast<std::uint64_t>(q_num) * channels;
    r.need(static_cast<std::size_t>(count * 4), name + " bank payload");
    std::vector<float> values(static_cast<std::size_t>(count));
    for (auto& v : values) v = r.f32(name + " bank payload");
    try {
      banks.emplace_back(q_num, static_cast<int>(channels), std::move(values));
    } catch (const Error& e) {
      throw Error(e.code(), name + " bank: " + e.what());
    }
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::dimension_mismatch,
                std::to_string(r.remaining()) + " trailing bytes after the declared banks");
  }
  return VectorBankSet{std::move(banks[0]), std::move(banks[1]), std::move(banks[2]),
                       std::move(banks[3])};
}

void save_bank_set(const VectorBankSet& set, const std::filesystem::path& path) {
  const auto bytes = encode_bank_set(set);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
}

VectorBankSet load_bank_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  return decode_bank_set(bytes);
}

}  // namespace latqpa
