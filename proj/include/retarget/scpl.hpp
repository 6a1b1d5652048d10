#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "retarget/frame.hpp"
#include "retarget/seam_dp.hpp"

namespace retarget {

/// For each last-row column, the first-row column its traced seam starts at.
/// Children that share a label form one cell of a partition of the last row.
struct ParentLabels {
  std::vector<int> label;

  /// Number of distinct parents. Labels are non-decreasing, so this is the
  /// number of runs.
  std::size_t parent_count() const;
};

/// Vertical seams that share no pixel, sorted by last-row column. All offsets
/// refer to the columns of the frame the batch was computed on.
struct SeamBatch {
  std::vector<Seam> seams;

  std::size_t size() const { return seams.size(); }
  bool empty() const { return seams.empty(); }
};

ParentLabels label_parents(const DpTables& tables);

/// One minimal child per parent. With `limit` set, only the `*limit`
/// cheapest of those seams are kept (ties by last-row column); the global
/// minimum seam is always among them.
SeamBatch select_batch(const DpTables& tables, const ParentLabels& labels, std::optional<std::size_t> limit = {});

/// Removes every seam of the batch in one pass. Throws if two seams claim the
/// same pixel or an offset is out of range.
Frame remove_batch(const Frame& frame, const SeamBatch& batch);

/// Recomputes energy for a frame that just lost `removed`.
using EnergyRefresh = std::function<EnergyMap(const Frame& carved, const SeamBatch& removed)>;

/// Gradient energy of the carved frame, valid at any size.
EnergyRefresh gradient_refresh();

struct CarveResult {
  Frame frame;
  std::vector<SeamBatch> batches;

  /// One cumulative-energy pass per batch.
  std::size_t dp_passes() const { return batches.size(); }
};

/// Seam carving with parental labeling: each pass removes the minimal child
/// of every parent, truncated to the seams still needed, until the frame is
/// `target_width` wide.
CarveResult scpl_carve(const Frame& frame, const EnergyMap& energy, int target_width,
                       const EnergyRefresh& refresh = gradient_refresh());

/// Classic one-seam-per-pass carving. Each batch holds a single seam.
CarveResult sc_carve(const Frame& frame, const EnergyMap& energy, int target_width,
                     const EnergyRefresh& refresh = gradient_refresh());

}  // namespace retarget
