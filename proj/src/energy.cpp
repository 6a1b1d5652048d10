#include "retarget/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace retarget {

void EnergyWeights::validate() const {
  if (!(motion >= 0.0) || !(gradient >= 0.0)) {
    throw std::invalid_argument("energy weights must be non-negative");
  }
  if (std::abs(motion + gradient - 1.0) > 1e-9) {
    throw std::invalid_argument("energy weights must sum to 1");
  }
}

Frame to_luma(const Frame& frame) {
  if (frame.channels() == 1) return frame;
  if (frame.channels() != 3) {
    throw std::invalid_argument("to_luma: unsupported channel count " + std::to_string(frame.channels()));
  }
  Frame out(frame.width(), frame.height(), 1);
  const auto& src = frame.data();
  auto& dst = out.data();
  for (std::size_t i = 0, n = dst.size(); i < n; ++i) {
    const double y = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
  }
  return out;
}

namespace detail {

EnergyMap sobel_energy(const Frame& luma) {
  const int w = luma.width();
  const int h = luma.height();
  EnergyMap out(w, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* up = luma.row(std::max(y - 1, 0));
    const std::uint8_t* mid = luma.row(y);
    const std::uint8_t* down = luma.row(std::min(y + 1, h - 1));
    double* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      const int l = std::max(x - 1, 0);
      const int r = std::min(x + 1, w - 1);
      const int gx = (up[r] + 2 * mid[r] + down[r]) - (up[l] + 2 * mid[l] + down[l]);
      const int gy = (down[l] + 2 * down[x] + down[r]) - (up[l] + 2 * up[x] + up[r]);
      dst[x] = static_cast<double>(std::min(std::abs(gx) + std::abs(gy), 255));
    }
  }
  return out;
}

EnergyMap blend_motion(const Frame& curr_luma, const Frame& prev_luma, const EnergyWeights& weights) {
  if (curr_luma.width() != prev_luma.width() || curr_luma.height() != prev_luma.height()) {
    throw std::invalid_argument("motion_energy: frame dimensions differ");
  }
  EnergyMap out = sobel_energy(curr_luma);
  const auto& c = curr_luma.data();
  const auto& p = prev_luma.data();
  auto& v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double diff = std::abs(static_cast<int>(c[i]) - static_cast<int>(p[i]));
    v[i] = std::min(weights.motion * diff + weights.gradient * v[i], EnergyMap::kMaxVal);
  }
  return out;
}

}  // namespace detail

EnergyMap gradient_energy(const Frame& frame) {
  if (frame.width() < 3 || frame.height() < 3) {
    throw std::invalid_argument("gradient_energy: frame must be at least 3x3, got " + std::to_string(frame.width()) +
                                "x" + std::to_string(frame.height()));
  }
  return detail::sobel_energy(to_luma(frame));
}

EnergyMap motion_energy(const Frame& curr, const Frame* prev, const EnergyWeights& weights) {
  weights.validate();
  if (prev == nullptr) return gradient_energy(curr);
  if (curr.width() != prev->width() || curr.height() != prev->height()) {
    throw std::invalid_argument("motion_energy: frame dimensions differ");
  }
  if (curr.width() < 3 || curr.height() < 3) {
    throw std::invalid_argument("motion_energy: frame must be at least 3x3");
  }
  return detail::blend_motion(to_luma(curr), to_luma(*prev), weights);
}

}  // namespace retarget
