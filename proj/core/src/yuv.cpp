#include "latqpa/yuv.hpp"

#include <ostream>
#include <string>

#include "latqpa/errors.hpp"

namespace latqpa {

void VideoSpec::validate() const {
  if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
    throw Error(ErrorCode::validation, "4:2:0 frame dimensions must be positive and even, got " +
                                           std::to_string(width) + "x" + std::to_string(height));
  }
  if (bit_depth != 8 && bit_depth != 10) {
    throw Error(ErrorCode::validation, "bit depth must be 8 or 10, got " + std::to_string(bit_depth));
  }
  if (frame_count < 1) {
    throw Error(ErrorCode::validation, "frame count must be positive");
  }
}

Plane::Plane(int width, int height, std::uint16_t fill)
    : width_(width),
      height_(height),
      samples_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::domain, "plane dimensions must be positive");
  }
}

YuvFrame::YuvFrame(const VideoSpec& spec)
    : bit_depth(spec.bit_depth),
      y(spec.width, spec.height),
      u(spec.width / 2, spec.height / 2),
      v(spec.width / 2, spec.height / 2) {}

const Plane& YuvFrame::plane(int component) const {
  switch (component) {
    case 0: return y;
    case 1: return u;
    case 2: return v;
  }
  throw Error(ErrorCode::domain, "component index must be 0, 1 or 2");
}

Plane& YuvFrame::plane(int component) {
  return const_cast<Plane&>(static_cast<const YuvFrame&>(*this).plane(component));
}

YuvReader::YuvReader(const std::filesystem::path& path, const VideoSpec& spec)
    : path_(path), spec_(spec) {
  spec_.validate();
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(ErrorCode::io, "cannot stat " + path.string() + ": " + ec.message());
  const auto frame_bytes = spec_.frame_bytes();
  if (size % frame_bytes != 0) {
    throw Error(ErrorCode::size_mismatch,
                path.string() + " is " + std::to_string(size) + " bytes, not a whole number of " +
                    std::to_string(frame_bytes) + "-byte frames for " + std::to_string(spec_.width) +
                    "x" + std::to_string(spec_.height) + " " + std::to_string(spec_.bit_depth) +
                    "-bit 4:2:0 (frame " + std::to_string(size / frame_bytes) + " is partial)");
  }
  frames_in_file_ = static_cast<long long>(size / frame_bytes);
  in_.open(path, std::ios::binary);
  if (!in_) throw Error(ErrorCode::io, "cannot open " + path.string());
  buffer_.resize(frame_bytes);
}

YuvFrame YuvReader::read_next() {
  if (next_ >= frames_in_file_ ||
      !in_.read(reinterpret_cast<char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()))) {
    throw Error(ErrorCode::short_file, path_.string() + " has no frame " + std::to_string(next_) +
                                           " (" + std::to_string(frames_in_file_) +
                                           " complete frames)");
  }
  YuvFrame frame(spec_);
  const int max_value = spec_.max_value();
  std::size_t offset = 0;
  for (int c = 0; c < 3; ++c) {
    for (auto& s : frame.plane(c).samples()) {
      if (spec_.bytes_per_sample() == 1) {
        s = buffer_[offset++];
      } else {
        s = static_cast<std::uint16_t>(buffer_[offset] | (buffer_[offset + 1] << 8));
        offset += 2;
        if (s > max_value) {
          throw Error(ErrorCode::sample_range, path_.string() + " frame " + std::to_string(next_) +
                                                   " holds sample " + std::to_string(s) +
                                                   " above " + std::to_string(max_value));
        }
      }
    }
  }
  ++next_;
  return frame;
}

void write_frame(std::ostream& out, const YuvFrame& frame) {
  for (int c = 0; c < 3; ++c) {
    for (std::uint16_t s : frame.plane(c).samples()) {
      if (frame.bit_depth > 8) {
        out.put(static_cast<char>(s & 0xFF));
        out.put(static_cast<char>(s >> 8));
      } else {
        out.put(static_cast<char>(s));
      }
    }
  }
  if (!out) throw Error(ErrorCode::io, "failed writing frame");
}

}  // namespace latqpa
