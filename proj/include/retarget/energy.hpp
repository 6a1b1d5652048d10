#pragma once

#include "retarget/frame.hpp"

namespace retarget {

/// Blend weights for motion-aware saliency. The two weights must be
/// non-negative and sum to one.
struct EnergyWeights {
  double motion = 0.6;
  double gradient = 0.4;

  void validate() const;
};

/// BT.601 luma, rounded to the nearest integer. Luma input is returned as is.
Frame to_luma(const Frame& frame);

/// Sobel gradient energy |Gx| + |Gy| with replicated borders, clamped to 255.
/// Requires a frame of at least 3x3; RGB input is converted to luma first.
EnergyMap gradient_energy(const Frame& frame);

/// w_motion * |luma(curr) - luma(prev)| + w_grad * gradient_energy(curr),
/// clamped to 255. Without a predecessor the result is plain gradient energy.
EnergyMap motion_energy(const Frame& curr, const Frame* prev, const EnergyWeights& weights = {});

namespace detail {

// Same kernels without the 3x3 minimum; used on frames that carving has
// already narrowed below the Sobel footprint.
EnergyMap sobel_energy(const Frame& luma);
EnergyMap blend_motion(const Frame& curr_luma, const Frame& prev_luma, const EnergyWeights& weights);

}  // namespace detail

}  // namespace retarget
