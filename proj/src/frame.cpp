#include "retarget/frame.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace retarget {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("frame dimensions must be positive, got " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

}  // namespace

Frame::Frame(int width, int height, int channels)
    : Frame(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(width > 0 ? width : 0) * (height > 0 ? height : 0) *
                                      (channels > 0 ? channels : 0))) {}

Frame::Frame(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height);
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("unsupported channel count " + std::to_string(channels));
  }
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw std::invalid_argument("frame data length does not match width x height x channels");
  }
}

EnergyMap::EnergyMap(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

EnergyMap::EnergyMap(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("energy map length does not match width x height");
  }
}

Frame transpose(const Frame& frame) {
  Frame out(frame.height(), frame.width(), frame.channels());
  const int c = frame.channels();
  for (int y = 0; y < frame.height(); ++y) {
    const std::uint8_t* src = frame.row(y);
    for (int x = 0; x < frame.width(); ++x) {
      for (int k = 0; k < c; ++k) out.at(y, x, k) = src[x * c + k];
    }
  }
  return out;
}

EnergyMap transpose(const EnergyMap& map) {
  EnergyMap out(map.height(), map.width());
  for (int y = 0; y < map.height(); ++y) {
    const double* src = map.row(y);
    for (int x = 0; x < map.width(); ++x) out.at(y, x) = src[x];
  }
  return out;
}

}  // namespace retarget
