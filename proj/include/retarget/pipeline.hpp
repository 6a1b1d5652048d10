#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "retarget/energy.hpp"
#include "retarget/frame.hpp"
#include "retarget/scpl.hpp"
#include "retarget/temporal.hpp"

namespace retarget {

enum class Mode {
  kRaw,       // one seam per DP pass, every frame on its own
  kScpl,      // parental-labeling batches, every frame on its own
  kBuffered,  // parental-labeling batches shared across a stable frame run
};

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct RetargetConfig {
  int target_width = 0;
  int target_height = 0;
  Mode mode = Mode::kBuffered;
  BufferPolicy policy;
  EnergyWeights weights;
  /// Carve rows before columns.
  bool height_first = false;
  /// Refresh a run's energy between batches from every carved frame of the
  /// run instead of only its first frame.
  bool reaverage_run_energy = false;

  /// Throws std::invalid_argument unless the targets are a reduction of
  /// `source_width` x `source_height` and the weights and policy are valid.
  void validate(int source_width, int source_height) const;
};

struct RunMetrics {
  std::size_t dp_passes = 0;
  double wall_time_s = 0.0;
  std::size_t frames_out = 0;
  double jitter = 0.0;
  /// Fixed runs carved (buffered mode) or frames carved (other modes).
  std::size_t carves = 0;
};

/// Seams removed from one frame, in application order. Width batches are
/// vertical seams on the frame; height batches are vertical seams on the
/// transposed frame.
struct CarvePlan {
  std::vector<SeamBatch> width_batches;
  std::vector<SeamBatch> height_batches;
  bool height_first = false;

  std::size_t dp_passes() const { return width_batches.size() + height_batches.size(); }
};

/// Applies `batches` in order to every frame of the run.
std::vector<Frame> replay_batches(std::span<const Frame> run, std::span<const SeamBatch> batches);

/// Applies both axes of a plan to one frame.
Frame apply_plan(const Frame& frame, const CarvePlan& plan);

struct ImageResult {
  Frame frame;
  CarvePlan plan;
  RunMetrics metrics;
};

/// Width then height (or the reverse with `height_first`) reduction of a
/// single image on plain gradient energy. kBuffered behaves like kScpl.
ImageResult retarget_image(const Frame& frame, const RetargetConfig& config);

/// Streaming video retargeter. Frames go in through push(); carved frames
/// come out through the sink in input order, possibly delayed until the
/// buffer holding them is flushed. Call finish() at end of stream.
class VideoRetargeter {
 public:
  using Sink = std::function<void(Frame)>;

  VideoRetargeter(RetargetConfig config, Sink sink);

  void push(const Frame& frame);
  void finish();

  const RunMetrics& metrics() const { return metrics_; }

 private:
  void emit(Frame frame);
  void carve_single(const Frame& frame, const EnergyMap& energy, const Frame& pred_luma);
  void carve_run(const SpatioTemporalBuffer& run, const Frame& pred_luma);

  RetargetConfig config_;
  Sink sink_;
  RunMetrics metrics_;
  std::optional<Frame> prev_luma_;
  SpatioTemporalBuffer buffer_;
  Frame run_pred_luma_;
  std::optional<Frame> last_out_luma_;
  std::vector<double> pair_diffs_;
  bool finished_ = false;
};

struct VideoResult {
  std::vector<Frame> frames;
  RunMetrics metrics;
};

VideoResult retarget_video(std::span<const Frame> frames, const RetargetConfig& config);

}  // namespace retarget
