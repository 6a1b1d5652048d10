#include "retarget/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace retarget {

void BufferPolicy::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("buffer policy: alpha must be positive");
  if (!(maxval > 0.0)) throw std::invalid_argument("buffer policy: maxval must be positive");
  if (max_len < 1) throw std::invalid_argument("buffer policy: max_len must be at least 1");
}

double threshold(std::size_t n, const BufferPolicy& policy) {
  if (n == 0) throw std::invalid_argument("threshold: buffer size must be at least 1");
  const double size = static_cast<double>(n);
  const double step = policy.maxval / size;
  const double jump = policy.maxval - step;
  return policy.alpha * std::sqrt((jump * jump + (size - 1.0) * step * step) / size);
}

void SpatioTemporalBuffer::check_shape(const EnergyMap& energy) const {
  if (!empty() && (energy.width() != width() || energy.height() != height())) {
    throw std::invalid_argument("spatiotemporal buffer: expected " + std::to_string(width()) + "x" +
                                std::to_string(height()) + " map, got " + std::to_string(energy.width()) + "x" +
                                std::to_string(energy.height()));
  }
}

void SpatioTemporalBuffer::append(Frame frame, EnergyMap energy) {
  check_shape(energy);
  if (frame.width() != energy.width() || frame.height() != energy.height()) {
    throw std::invalid_argument("spatiotemporal buffer: frame and energy map dimensions differ");
  }
  if (empty()) {
    shift_ = energy.values();
    sum_.assign(shift_.size(), 0.0);
    sum_sq_.assign(shift_.size(), 0.0);
  } else {
    const auto& v = energy.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = v[i] - shift_[i];
      sum_[i] += d;
      sum_sq_[i] += d * d;
    }
  }
  frames_.push_back(std::move(frame));
  maps_.push_back(std::move(energy));
}

namespace {

double std_from_sums(double s, double s2, double n) {
  const double mean = s / n;
  return std::sqrt(std::max(s2 / n - mean * mean, 0.0));
}

}  // namespace

double SpatioTemporalBuffer::pixel_std(int x, int y) const {
  if (empty()) throw std::logic_error("pixel_std: buffer is empty");
  const std::size_t i = static_cast<std::size_t>(y) * width() + x;
  return std_from_sums(sum_[i], sum_sq_[i], static_cast<double>(size()));
}

double SpatioTemporalBuffer::asde() const {
  if (empty()) throw std::logic_error("asde: buffer is empty");
  const double n = static_cast<double>(size());
  double total = 0.0;
  for (std::size_t i = 0; i < sum_.size(); ++i) total += std_from_sums(sum_[i], sum_sq_[i], n);
  return total / static_cast<double>(sum_.size());
}

double SpatioTemporalBuffer::asde_with(const EnergyMap& energy) const {
  if (empty()) return 0.0;
  check_shape(energy);
  const double n = static_cast<double>(size() + 1);
  const auto& v = energy.values();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - shift_[i];
    total += std_from_sums(sum_[i] + d, sum_sq_[i] + d * d, n);
  }
  return total / static_cast<double>(v.size());
}

EnergyMap SpatioTemporalBuffer::uniform_energy() const {
  if (empty()) throw std::logic_error("uniform_energy: buffer is empty");
  EnergyMap out(width(), height());
  auto& v = out.values();
  const double n = static_cast<double>(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = shift_[i] + sum_[i] / n;
  return out;
}

void SpatioTemporalBuffer::clear() {
  frames_.clear();
  maps_.clear();
  shift_.clear();
  sum_.clear();
  sum_sq_.clear();
}

PushResult push_frame(SpatioTemporalBuffer& buffer, Frame frame, EnergyMap energy, const BufferPolicy& policy) {
  policy.validate();
  if (!buffer.empty() && (frame.width() != buffer.width() || frame.height() != buffer.height())) {
    throw std::invalid_argument("push_frame: frame dimensions differ from buffered frames");
  }
  const std::size_t n = buffer.size() + 1;
  // A single map has zero spread and threshold(1) is zero, so '<=' always
  // admits the first frame.
  if (n <= policy.max_len && buffer.asde_with(energy) <= threshold(n, policy)) {
    buffer.append(std::move(frame), std::move(energy));
    return {};
  }
  PushResult result{std::move(buffer)};
  buffer = SpatioTemporalBuffer{};
  buffer.append(std::move(frame), std::move(energy));
  return result;
}

}  // namespace retarget
