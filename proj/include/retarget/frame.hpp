#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace retarget {

/// Row-major 8-bit image, 1 (luma) or 3 (RGB) interleaved channels.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, int channels);
  Frame(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  const std::uint8_t* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }
  std::uint8_t* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool same_shape(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Per-pixel saliency on a fixed [0, kMaxVal] scale.
class EnergyMap {
 public:
  static constexpr double kMaxVal = 255.0;

  EnergyMap() = default;
  EnergyMap(int width, int height, double fill = 0.0);
  EnergyMap(int width, int height, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }

  const double* row(int y) const { return values_.data() + static_cast<std::size_t>(y) * width_; }
  double* row(int y) { return values_.data() + static_cast<std::size_t>(y) * width_; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  friend bool operator==(const EnergyMap&, const EnergyMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Swaps rows and columns: pixel (x, y) moves to (y, x).
Frame transpose(const Frame& frame);
EnergyMap transpose(const EnergyMap& map);

}  // namespace retarget
