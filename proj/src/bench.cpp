#include "retarget/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>

#include "retarget/energy.hpp"

namespace retarget {

double mean_abs_luma_diff(const Frame& a, const Frame& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("mean_abs_luma_diff: frame dimensions differ");
  }
  const Frame la = to_luma(a);
  const Frame lb = to_luma(b);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < la.data().size(); ++i) {
    total += static_cast<std::uint64_t>(std::abs(static_cast<int>(la.data()[i]) - static_cast<int>(lb.data()[i])));
  }
  return static_cast<double>(total) / static_cast<double>(la.data().size());
}

double jitter_from_pair_diffs(std::span<const double> pair_diffs, std::size_t window) {
  if (pair_diffs.empty()) throw std::invalid_argument("jitter: need at least 2 frames");
  if (window < 2) throw std::invalid_argument("jitter: window must span at least 2 frames");
  const std::size_t pairs_per_window = std::min(window - 1, pair_diffs.size());
  const std::size_t windows = pair_diffs.size() - pairs_per_window + 1;

  // Sliding sum over pair differences.
  double running = 0.0;
  for (std::size_t i = 0; i < pairs_per_window; ++i) running += pair_diffs[i];
  double total = running;
  for (std::size_t w = 1; w < windows; ++w) {
    running += pair_diffs[w + pairs_per_window - 1] - pair_diffs[w - 1];
    total += running;
  }
  return total / static_cast<double>(pairs_per_window) / static_cast<double>(windows);
}

JitterReport jitter(std::span<const Frame> frames, std::size_t window) {
  if (frames.size() < 2) throw std::invalid_argument("jitter: need at least 2 frames");
  std::vector<double> diffs;
  diffs.reserve(frames.size() - 1);
  for (std::size_t t = 1; t < frames.size(); ++t) diffs.push_back(mean_abs_luma_diff(frames[t - 1], frames[t]));
  return {window, jitter_from_pair_diffs(diffs, window)};
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kStatic:
      return "static";
    case SyntheticKind::kMovingBox:
      return "moving-box";
    case SyntheticKind::kBrightnessRamp:
      return "brightness-ramp";
    case SyntheticKind::kPhoto:
      return "photo";
  }
  return "unknown";
}

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view text) {
  if (text == "static") return SyntheticKind::kStatic;
  if (text == "moving-box") return SyntheticKind::kMovingBox;
  if (text == "brightness-ramp") return SyntheticKind::kBrightnessRamp;
  if (text == "photo") return SyntheticKind::kPhoto;
  return std::nullopt;
}

int BoxTrack::left(std::size_t t, int frame_width) const {
  const int travel = frame_width - width + 1;
  return static_cast<int>((static_cast<std::size_t>(left0) + t) % static_cast<std::size_t>(travel));
}

BoxTrack moving_box_track(int width, int height) {
  return {std::max(width / 4, 1), std::max(height / 4, 1), height / 3, width / 8};
}

namespace {

Frame noise_frame(int width, int height, std::mt19937_64& rng, int lo = 0, int hi = 255) {
  Frame f(width, height, 3);
  std::uniform_int_distribution<int> dist(lo, hi);
  for (auto& v : f.data()) v = static_cast<std::uint8_t>(dist(rng));
  return f;
}

std::uint8_t clamp_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

Frame photo_like(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> grain(0.0, 4.0);

  struct Blob {
    double cx, cy, radius;
    double rgb[3];
  };
  std::vector<Blob> blobs(6);
  for (auto& b : blobs) {
    b.cx = unit(rng) * width;
    b.cy = unit(rng) * height;
    b.radius = (0.05 + 0.15 * unit(rng)) * std::min(width, height);
    for (double& c : b.rgb) c = 255.0 * unit(rng);
  }
  const double horizon = (0.4 + 0.3 * unit(rng)) * height;
  const double sky[3] = {90 + 60 * unit(rng), 130 + 60 * unit(rng), 200 + 50 * unit(rng)};
  const double ground[3] = {60 + 60 * unit(rng), 80 + 60 * unit(rng), 40 + 40 * unit(rng)};

  Frame f(width, height, 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double px[3];
      const bool below = y > horizon + 6.0 * std::sin(x * 0.05);
      for (int k = 0; k < 3; ++k) {
        px[k] = below ? ground[k] * (0.8 + 0.2 * y / height) : sky[k] * (0.7 + 0.3 * y / height);
      }
      for (const auto& b : blobs) {
        const double d2 = ((x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy)) / (b.radius * b.radius);
        const double wgt = std::exp(-d2 * d2);
        for (int k = 0; k < 3; ++k) px[k] = px[k] * (1 - wgt) + b.rgb[k] * wgt;
      }
      const double g = grain(rng);
      for (int k = 0; k < 3; ++k) f.at(x, y, k) = clamp_byte(px[k] + g);
    }
  }
  return f;
}

std::vector<Frame> generate(const SyntheticSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw std::invalid_argument("generate: dimensions must be positive");
  std::mt19937_64 rng(spec.seed);
  std::vector<Frame> frames;
  frames.reserve(spec.frames);

  switch (spec.kind) {
    case SyntheticKind::kStatic: {
      const Frame base = noise_frame(spec.width, spec.height, rng);
      frames.assign(spec.frames, base);
      break;
    }
    case SyntheticKind::kPhoto: {
      const Frame base = photo_like(spec.width, spec.height, spec.seed);
      frames.assign(spec.frames, base);
      break;
    }
    case SyntheticKind::kMovingBox: {
      const Frame base = noise_frame(spec.width, spec.height, rng);
      const BoxTrack box = moving_box_track(spec.width, spec.height);
      for (std::size_t t = 0; t < spec.frames; ++t) {
        Frame f = base;
        const int left = box.left(t, spec.width);
        for (int y = box.top; y < std::min(box.top + box.height, spec.height); ++y) {
          for (int x = left; x < left + box.width; ++x) {
            for (int k = 0; k < 3; ++k) f.at(x, y, k) = 255;
          }
        }
        frames.push_back(std::move(f));
      }
      break;
    }
    case SyntheticKind::kBrightnessRamp: {
      // Dim noise lifted toward white; texture, and with it gradient energy,
      // saturates away as the ramp climbs.
      const Frame base = noise_frame(spec.width, spec.height, rng, 0, 127);
      const std::size_t steps = spec.frames > 1 ? spec.frames - 1 : 1;
      for (std::size_t t = 0; t < spec.frames; ++t) {
        Frame f = base;
        const int lift = static_cast<int>(t * 255 / steps);
        for (auto& v : f.data()) v = static_cast<std::uint8_t>(std::min(v + lift, 255));
        frames.push_back(std::move(f));
      }
      break;
    }
  }
  return frames;
}

std::vector<VariantResult> compare(std::span<const Frame> corpus, std::span<const Variant> variants) {
  if (variants.empty()) throw std::invalid_argument("compare: need at least one variant");
  std::vector<VariantResult> results;
  results.reserve(variants.size());
  for (const auto& v : variants) {
    VideoResult run = retarget_video(corpus, v.config);
    results.push_back({v.name, v.config.mode, run.metrics});
  }
  return results;
}

void write_metrics(std::ostream& out, const RunMetrics& metrics) {
  const auto precision = out.precision(10);
  out << "dp_passes=" << metrics.dp_passes << '\n'
      << "wall_time_s=" << metrics.wall_time_s << '\n'
      << "frames_out=" << metrics.frames_out << '\n'
      << "jitter=" << metrics.jitter << '\n';
  out.precision(precision);
}

void write_report(std::ostream& out, std::span<const VariantResult> results) {
  bool first = true;
  for (const auto& r : results) {
    if (!first) out << '\n';
    first = false;
    out << "variant=" << r.name << '\n' << "mode=" << to_string(r.mode) << '\n';
    write_metrics(out, r.metrics);
  }
}

}  // namespace retarget
