#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "retarget/frame.hpp"

namespace retarget {

struct BufferPolicy {
  double alpha = 0.2;
  double maxval = EnergyMap::kMaxVal;
  std::size_t max_len = 64;

  void validate() const;
};

/// Energy-variation threshold for a buffer of n maps: the population standard
/// deviation of a pixel that sat at zero for n - 1 frames and then jumped to
/// maxval, scaled by alpha.
double threshold(std::size_t n, const BufferPolicy& policy);

/// A run of same-sized frames and their energy maps, with per-pixel running
/// sums used to evaluate the average temporal standard deviation (ASDE).
///
/// Sums are taken relative to the first buffered map, which keeps the
/// variance exact for constant pixels and avoids cancellation for the rest.
class SpatioTemporalBuffer {
 public:
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  int width() const { return empty() ? 0 : maps_.front().width(); }
  int height() const { return empty() ? 0 : maps_.front().height(); }

  const std::vector<Frame>& frames() const { return frames_; }
  const std::vector<EnergyMap>& energy_maps() const { return maps_; }

  /// Per-pixel accumulators of (e - shift) and (e - shift)^2, where shift is
  /// the first buffered map.
  const std::vector<double>& shift() const { return shift_; }
  const std::vector<double>& sum() const { return sum_; }
  const std::vector<double>& sum_sq() const { return sum_sq_; }

  /// Appends unconditionally.
  void append(Frame frame, EnergyMap energy);

  /// Temporal population standard deviation at pixel (x, y).
  double pixel_std(int x, int y) const;

  /// Mean of pixel_std over all pixels.
  double asde() const;

  /// ASDE the buffer would have with `energy` appended, without mutating it.
  double asde_with(const EnergyMap& energy) const;

  /// Per-pixel mean of the buffered maps.
  EnergyMap uniform_energy() const;

  void clear();

 private:
  void check_shape(const EnergyMap& energy) const;

  std::vector<Frame> frames_;
  std::vector<EnergyMap> maps_;
  std::vector<double> shift_;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

/// Outcome of push_frame: `flushed` holds the previous contents when the
/// incoming frame broke the run.
struct PushResult {
  std::optional<SpatioTemporalBuffer> flushed;

  bool accepted() const { return !flushed.has_value(); }
};

/// Appends (frame, energy) if the grown buffer's ASDE stays within
/// threshold(n) and n <= max_len. Otherwise the current contents are handed
/// back as a fixed run and the buffer restarts with the incoming frame.
PushResult push_frame(SpatioTemporalBuffer& buffer, Frame frame, EnergyMap energy, const BufferPolicy& policy);

}  // namespace retarget
