#include "retarget/pipeline.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "retarget/bench.hpp"

namespace retarget {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kRaw:
      return "raw";
    case Mode::kScpl:
      return "scpl";
    case Mode::kBuffered:
      return "buffered";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "raw") return Mode::kRaw;
  if (text == "scpl") return Mode::kScpl;
  if (text == "buffered") return Mode::kBuffered;
  return std::nullopt;
}

void RetargetConfig::validate(int source_width, int source_height) const {
  if (target_width < 1 || target_width > source_width) {
    throw std::invalid_argument("target width " + std::to_string(target_width) + " outside [1, " +
                                std::to_string(source_width) + "]");
  }
  if (target_height < 1 || target_height > source_height) {
    throw std::invalid_argument("target height " + std::to_string(target_height) + " outside [1, " +
                                std::to_string(source_height) + "]");
  }
  weights.validate();
  policy.validate();
}

std::vector<Frame> replay_batches(std::span<const Frame> run, std::span<const SeamBatch> batches) {
  std::vector<Frame> out;
  out.reserve(run.size());
  for (const Frame& frame : run) {
    Frame carved = frame;
    for (const SeamBatch& batch : batches) carved = remove_batch(carved, batch);
    out.push_back(std::move(carved));
  }
  return out;
}

Frame apply_plan(const Frame& frame, const CarvePlan& plan) {
  auto carve_width = [&](Frame f) {
    for (const auto& b : plan.width_batches) f = remove_batch(f, b);
    return f;
  };
  auto carve_height = [&](Frame f) {
    if (plan.height_batches.empty()) return f;
    f = transpose(f);
    for (const auto& b : plan.height_batches) f = remove_batch(f, b);
    return transpose(f);
  };
  return plan.height_first ? carve_width(carve_height(frame)) : carve_height(carve_width(frame));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Luma frames carved in lockstep with the frame being carved, from which the
// energy of the carved frame is recomputed. lumas[0] is the predecessor when
// `has_pred`; each later entry is blended against the one before it and the
// blends are averaged.
class TrackedEnergy {
 public:
  TrackedEnergy(std::vector<Frame> lumas, bool has_pred, EnergyWeights weights)
      : lumas_(std::move(lumas)), has_pred_(has_pred), weights_(weights) {}

  EnergyMap current() const {
    if (!has_pred_) return detail::sobel_energy(lumas_.front());
    EnergyMap acc = detail::blend_motion(lumas_[1], lumas_[0], weights_);
    if (lumas_.size() == 2) return acc;
    auto& sum = acc.values();
    for (std::size_t t = 2; t < lumas_.size(); ++t) {
      const auto term = detail::blend_motion(lumas_[t], lumas_[t - 1], weights_);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term.values()[i];
    }
    const double n = static_cast<double>(lumas_.size() - 1);
    for (double& v : sum) v /= n;
    return acc;
  }

  void remove(const SeamBatch& batch) {
    for (Frame& f : lumas_) f = remove_batch(f, batch);
  }

  void transpose_all() {
    for (Frame& f : lumas_) f = transpose(f);
  }

 private:
  std::vector<Frame> lumas_;
  bool has_pred_;
  EnergyWeights weights_;
};

struct TwoAxisResult {
  Frame frame;
  CarvePlan plan;
};

// Carves `frame` down to the configured targets. `energy` is the energy of
// `frame` in its own orientation; later passes refresh from `tracked`.
TwoAxisResult carve_two_axis(const Frame& frame, const EnergyMap& energy, const TrackedEnergy& tracked,
                             const RetargetConfig& config, bool batched) {
  const auto carve = batched ? &scpl_carve : &sc_carve;
  TwoAxisResult out{frame, {}};
  out.plan.height_first = config.height_first;

  struct Stage {
    bool transposed;
    int target;
    std::vector<SeamBatch>* batches;
  };
  const Stage width_stage{false, config.target_width, &out.plan.width_batches};
  const Stage height_stage{true, config.target_height, &out.plan.height_batches};
  const Stage stages[2] = {config.height_first ? height_stage : width_stage,
                           config.height_first ? width_stage : height_stage};

  TrackedEnergy state = tracked;
  bool carved_any = false;
  bool state_transposed = false;
  for (const Stage& stage : stages) {
    Frame work = stage.transposed ? transpose(out.frame) : out.frame;
    if (work.width() == stage.target) continue;

    if (state_transposed != stage.transposed) {
      state.transpose_all();
      state_transposed = stage.transposed;
    }
    EnergyMap initial;
    if (!carved_any) {
      initial = stage.transposed ? transpose(energy) : energy;
    } else {
      initial = state.current();
    }

    auto shared = std::make_shared<TrackedEnergy>(state);
    EnergyRefresh refresh = [shared](const Frame&, const SeamBatch& removed) {
      shared->remove(removed);
      return shared->current();
    };
    CarveResult result = carve(work, initial, stage.target, refresh);
    // The refresh never sees the final batch; bring the tracked state level
    // with the carved frame for the next stage.
    state = *shared;
    state.remove(result.batches.back());

    out.frame = stage.transposed ? transpose(result.frame) : std::move(result.frame);
    *stage.batches = std::move(result.batches);
    carved_any = true;
  }
  return out;
}

void validate_frame(const Frame& frame) {
  if (frame.width() < 3 || frame.height() < 3) {
    throw std::invalid_argument("frame must be at least 3x3, got " + std::to_string(frame.width()) + "x" +
                                std::to_string(frame.height()));
  }
}

}  // namespace

ImageResult retarget_image(const Frame& frame, const RetargetConfig& config) {
  validate_frame(frame);
  config.validate(frame.width(), frame.height());
  const auto start = Clock::now();
  const EnergyMap energy = gradient_energy(frame);
  TrackedEnergy tracked({to_luma(frame)}, false, config.weights);
  auto carved = carve_two_axis(frame, energy, tracked, config, config.mode != Mode::kRaw);

  ImageResult result{std::move(carved.frame), std::move(carved.plan), {}};
  result.metrics.dp_passes = result.plan.dp_passes();
  result.metrics.frames_out = 1;
  result.metrics.carves = 1;
  result.metrics.wall_time_s = seconds_since(start);
  return result;
}

VideoRetargeter::VideoRetargeter(RetargetConfig config, Sink sink)
    : config_(std::move(config)), sink_(std::move(sink)) {
  config_.weights.validate();
  config_.policy.validate();
}

void VideoRetargeter::emit(Frame frame) {
  Frame luma = to_luma(frame);
  if (last_out_luma_) pair_diffs_.push_back(mean_abs_luma_diff(*last_out_luma_, luma));
  last_out_luma_ = std::move(luma);
  ++metrics_.frames_out;
  sink_(std::move(frame));
}

void VideoRetargeter::carve_single(const Frame& frame, const EnergyMap& energy, const Frame& pred_luma) {
  TrackedEnergy tracked({pred_luma, to_luma(frame)}, true, config_.weights);
  auto carved = carve_two_axis(frame, energy, tracked, config_, config_.mode != Mode::kRaw);
  metrics_.dp_passes += carved.plan.dp_passes();
  ++metrics_.carves;
  emit(std::move(carved.frame));
}

void VideoRetargeter::carve_run(const SpatioTemporalBuffer& run, const Frame& pred_luma) {
  const auto& frames = run.frames();
  std::vector<Frame> lumas{pred_luma};
  const std::size_t tracked_count = config_.reaverage_run_energy ? frames.size() : 1;
  for (std::size_t t = 0; t < tracked_count; ++t) lumas.push_back(to_luma(frames[t]));
  TrackedEnergy tracked(std::move(lumas), true, config_.weights);

  auto carved = carve_two_axis(frames.front(), run.uniform_energy(), tracked, config_, true);
  metrics_.dp_passes += carved.plan.dp_passes();
  ++metrics_.carves;
  emit(std::move(carved.frame));
  for (std::size_t t = 1; t < frames.size(); ++t) emit(apply_plan(frames[t], carved.plan));
}

void VideoRetargeter::push(const Frame& frame) {
  if (finished_) throw std::logic_error("VideoRetargeter: push after finish");
  const auto start = Clock::now();
  validate_frame(frame);
  if (prev_luma_) {
    if (frame.width() != prev_luma_->width() || frame.height() != prev_luma_->height()) {
      throw std::invalid_argument("frame dimensions changed mid-stream: expected " +
                                  std::to_string(prev_luma_->width()) + "x" + std::to_string(prev_luma_->height()) +
                                  ", got " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()));
    }
  } else {
    config_.validate(frame.width(), frame.height());
  }

  Frame luma = to_luma(frame);
  // The first frame stands in as its own predecessor: zero motion term.
  Frame pred = prev_luma_ ? std::move(*prev_luma_) : luma;
  EnergyMap energy = detail::blend_motion(luma, pred, config_.weights);

  if (config_.mode == Mode::kBuffered) {
    if (buffer_.empty()) run_pred_luma_ = pred;
    PushResult pushed = push_frame(buffer_, frame, std::move(energy), config_.policy);
    if (pushed.flushed) {
      carve_run(*pushed.flushed, run_pred_luma_);
      run_pred_luma_ = pred;
    }
  } else {
    carve_single(frame, energy, pred);
  }
  prev_luma_ = std::move(luma);
  metrics_.wall_time_s += seconds_since(start);
}

void VideoRetargeter::finish() {
  if (finished_) return;
  finished_ = true;
  const auto start = Clock::now();
  if (!buffer_.empty()) {
    carve_run(buffer_, run_pred_luma_);
    buffer_.clear();
  }
  metrics_.wall_time_s += seconds_since(start);
  metrics_.jitter = pair_diffs_.empty() ? 0.0 : jitter_from_pair_diffs(pair_diffs_);
}

VideoResult retarget_video(std::span<const Frame> frames, const RetargetConfig& config) {
  VideoResult result;
  result.frames.reserve(frames.size());
  VideoRetargeter retargeter(config, [&](Frame f) { result.frames.push_back(std::move(f)); });
  for (const Frame& f : frames) retargeter.push(f);
  retargeter.finish();
  result.metrics = retargeter.metrics();
  return result;
}

}  // namespace retarget
