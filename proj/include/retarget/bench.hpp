#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retarget/frame.hpp"
#include "retarget/pipeline.hpp"

namespace retarget {

struct JitterReport {
  std::size_t window = 4;
  double value = 0.0;
};

/// Mean absolute luma difference between two same-sized frames.
double mean_abs_luma_diff(const Frame& a, const Frame& b);

/// Windowed temporal jitter from the consecutive-pair differences of a
/// stream: each window of `window` frames averages its window - 1 pair
/// differences, and the report averages over all sliding windows. A stream
/// shorter than the window counts as one window.
double jitter_from_pair_diffs(std::span<const double> pair_diffs, std::size_t window = 4);

JitterReport jitter(std::span<const Frame> frames, std::size_t window = 4);

enum class SyntheticKind { kStatic, kMovingBox, kBrightnessRamp, kPhoto };

std::string_view to_string(SyntheticKind kind);
std::optional<SyntheticKind> parse_synthetic_kind(std::string_view text);

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kStatic;
  int width = 320;
  int height = 240;
  std::size_t frames = 64;
  std::uint64_t seed = 1;
};

/// Box geometry used by the moving-box corpus.
struct BoxTrack {
  int width;
  int height;
  int top;
  int left0;

  int left(std::size_t t, int frame_width) const;
};
BoxTrack moving_box_track(int width, int height);

/// Deterministic RGB corpus for a given spec and seed.
std::vector<Frame> generate(const SyntheticSpec& spec);

/// A smooth, photo-like RGB still: blurred blobs, a horizon and some texture.
Frame photo_like(int width, int height, std::uint64_t seed);

struct Variant {
  std::string name;
  RetargetConfig config;
};

struct VariantResult {
  std::string name;
  Mode mode;
  RunMetrics metrics;
};

/// Runs every variant over the same corpus.
std::vector<VariantResult> compare(std::span<const Frame> corpus, std::span<const Variant> variants);

/// Flat key=value report: dp_passes, wall_time_s, frames_out, jitter.
void write_metrics(std::ostream& out, const RunMetrics& metrics);
void write_report(std::ostream& out, std::span<const VariantResult> results);

}  // namespace retarget
