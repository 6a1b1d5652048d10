#include "retarget/scpl.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

#include "retarget/energy.hpp"

namespace retarget {

std::size_t ParentLabels::parent_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i == 0 || label[i] != label[i - 1]) ++count;
  }
  return count;
}

ParentLabels label_parents(const DpTables& tables) {
  // Propagate row-0 origins downward instead of tracing every child upward;
  // each pixel inherits the label of the predecessor its indicator names.
  const int w = tables.width;
  std::vector<int> prev(w);
  std::vector<int> cur(w);
  for (int x = 0; x < w; ++x) prev[x] = x;
  for (int y = 1; y < tables.height; ++y) {
    for (int x = 0; x < w; ++x) cur[x] = prev[x + tables.delta(x, y)];
    std::swap(prev, cur);
  }
  return ParentLabels{std::move(prev)};
}

SeamBatch select_batch(const DpTables& tables, const ParentLabels& labels, std::optional<std::size_t> limit) {
  if (static_cast<int>(labels.label.size()) != tables.width) {
    throw std::invalid_argument("select_batch: labels do not match table width");
  }
  if (limit && *limit == 0) throw std::invalid_argument("select_batch: limit must be at least 1");

  struct Candidate {
    int column;
    double cost;
  };
  const double* last = tables.last_row();
  std::vector<Candidate> picks;
  for (int x = 0; x < tables.width; ++x) {
    if (x == 0 || labels.label[x] != labels.label[x - 1]) {
      picks.push_back({x, last[x]});
    } else if (last[x] < picks.back().cost) {
      picks.back() = {x, last[x]};
    }
  }

  if (limit && *limit < picks.size()) {
    std::stable_sort(picks.begin(), picks.end(),
                     [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
    picks.resize(*limit);
    std::sort(picks.begin(), picks.end(), [](const Candidate& a, const Candidate& b) { return a.column < b.column; });
  }

  SeamBatch batch;
  batch.seams.reserve(picks.size());
  for (const auto& p : picks) batch.seams.push_back(tables.trace(p.column));
  return batch;
}

Frame remove_batch(const Frame& frame, const SeamBatch& batch) {
  if (batch.empty()) return frame;
  const int w = frame.width();
  const int h = frame.height();
  const int n = static_cast<int>(batch.size());
  if (n >= w) throw std::invalid_argument("remove_batch: batch would remove the whole row");
  for (const auto& seam : batch.seams) {
    if (seam.orientation != Orientation::kVertical || static_cast<int>(seam.offsets.size()) != h) {
      throw std::invalid_argument("remove_batch: seam does not fit the frame");
    }
  }

  const int c = frame.channels();
  Frame out(w - n, h, c);
  std::vector<int> cuts(n);
  for (int y = 0; y < h; ++y) {
    for (int i = 0; i < n; ++i) cuts[i] = batch.seams[i].offsets[y];
    std::sort(cuts.begin(), cuts.end());
    if (cuts.front() < 0 || cuts.back() >= w) {
      throw std::invalid_argument("remove_batch: offset out of range in row " + std::to_string(y));
    }
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) {
      throw std::invalid_argument("remove_batch: seams intersect in row " + std::to_string(y));
    }
    const std::uint8_t* src = frame.row(y);
    std::uint8_t* dst = out.row(y);
    int from = 0;
    for (int cut : cuts) {
      const std::size_t len = static_cast<std::size_t>(cut - from) * c;
      std::memcpy(dst, src + static_cast<std::size_t>(from) * c, len);
      dst += len;
      from = cut + 1;
    }
    std::memcpy(dst, src + static_cast<std::size_t>(from) * c, static_cast<std::size_t>(w - from) * c);
  }
  return out;
}

EnergyRefresh gradient_refresh() {
  return [](const Frame& carved, const SeamBatch&) { return detail::sobel_energy(to_luma(carved)); };
}

namespace {

void check_target(const Frame& frame, const EnergyMap& energy, int target_width) {
  if (target_width < 1 || target_width > frame.width()) {
    throw std::invalid_argument("carve: target width " + std::to_string(target_width) + " outside [1, " +
                                std::to_string(frame.width()) + "]");
  }
  if (energy.width() != frame.width() || energy.height() != frame.height()) {
    throw std::invalid_argument("carve: energy map does not match frame dimensions");
  }
}

}  // namespace

CarveResult scpl_carve(const Frame& frame, const EnergyMap& energy, int target_width, const EnergyRefresh& refresh) {
  check_target(frame, energy, target_width);
  CarveResult result{frame, {}};
  EnergyMap map = energy;
  while (result.frame.width() > target_width) {
    const auto remaining = static_cast<std::size_t>(result.frame.width() - target_width);
    const DpTables tables = cumulative_energy(map);
    SeamBatch batch = select_batch(tables, label_parents(tables), remaining);
    result.frame = remove_batch(result.frame, batch);
    if (result.frame.width() > target_width) map = refresh(result.frame, batch);
    result.batches.push_back(std::move(batch));
  }
  return result;
}

CarveResult sc_carve(const Frame& frame, const EnergyMap& energy, int target_width, const EnergyRefresh& refresh) {
  check_target(frame, energy, target_width);
  CarveResult result{frame, {}};
  EnergyMap map = energy;
  while (result.frame.width() > target_width) {
    SeamBatch batch;
    batch.seams.push_back(min_seam(cumulative_energy(map)));
    result.frame = remove_seam(result.frame, batch.seams.front());
    if (result.frame.width() > target_width) map = refresh(result.frame, batch);
    result.batches.push_back(std::move(batch));
  }
  return result;
}

}  // namespace retarget
