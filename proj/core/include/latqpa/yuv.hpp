#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <vector>

namespace latqpa {

struct VideoSpec {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int frame_count = 1;

  void validate() const;

  int max_value() const noexcept { return (1 << bit_depth) - 1; }
  int bytes_per_sample() const noexcept { return bit_depth > 8 ? 2 : 1; }
  std::size_t luma_samples() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t frame_samples() const noexcept { return luma_samples() * 3 / 2; }
  std::size_t frame_bytes() const noexcept { return frame_samples() * bytes_per_sample(); }
};

class Plane {
 public:
  Plane(int width, int height, std::uint16_t fill = 0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::uint16_t at(int x, int y) const { return samples_[index(x, y)]; }
  std::uint16_t& at(int x, int y) { return samples_[index(x, y)]; }

  std::span<const std::uint16_t> row(int y) const {
    return std::span<const std::uint16_t>(samples_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }
  std::span<const std::uint16_t> samples() const noexcept { return samples_; }
  std::span<std::uint16_t> samples() noexcept { return samples_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint16_t> samples_;
};

/// One 4:2:0 frame; chroma planes are half size in both directions.
struct YuvFrame {
  explicit YuvFrame(const VideoSpec& spec);

  int bit_depth;
  Plane y;
  Plane u;
  Plane v;

  const Plane& plane(int component) const;
  Plane& plane(int component);

  friend bool operator==(const YuvFrame&, const YuvFrame&) = default;
};

/// Sequential reader for headerless I420 files (Y, then U, then V per frame);
/// 10-bit samples are 2-byte little-endian.
class YuvReader {
 public:
  YuvReader(const std::filesystem::path& path, const VideoSpec& spec);

  /// Frames completely present in the file.
  long long frames_in_file() const noexcept { return frames_in_file_; }

  /// Reads the next frame; throws ErrorCode::short_file naming the frame index
  /// once the file runs out.
  YuvFrame read_next();
  long long next_index() const noexcept { return next_; }

 private:
  std::filesystem::path path_;
  VideoSpec spec_;
  std::ifstream in_;
  long long frames_in_file_ = 0;
  long long next_ = 0;
  std::vector<unsigned char> buffer_;
};

void write_frame(std::ostream& out, const YuvFrame& frame);

}  // namespace latqpa
