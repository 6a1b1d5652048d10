#pragma once

#include <cstdint>
#include <vector>

#include "retarget/frame.hpp"

namespace retarget {

enum class Orientation { kVertical, kHorizontal };

/// An 8-connected monotone path. For a vertical seam `offsets[y]` is the
/// column removed from row y; for a horizontal seam `offsets[x]` is the row
/// removed from column x.
struct Seam {
  Orientation orientation = Orientation::kVertical;
  std::vector<int> offsets;
  double cost = 0.0;

  /// Checks length, bounds and 8-connectivity against a width x height grid.
  bool valid_for(int width, int height) const;

  friend bool operator==(const Seam&, const Seam&) = default;
};

/// Cumulative energy table and the per-pixel backtrack indicator.
///
/// `back(x, y)` is the column delta in {-1, 0, +1} from pixel (x, y) to its
/// predecessor in row y - 1; row 0 holds zeros. Ties in the three-way minimum
/// resolve toward the smaller delta.
struct DpTables {
  int width = 0;
  int height = 0;
  std::vector<double> ce;
  std::vector<std::int8_t> back;

  double cost(int x, int y) const { return ce[static_cast<std::size_t>(y) * width + x]; }
  int delta(int x, int y) const { return back[static_cast<std::size_t>(y) * width + x]; }
  const double* last_row() const { return ce.data() + static_cast<std::size_t>(height - 1) * width; }

  /// Walks the indicators from last-row column `end_column` up to row 0.
  Seam trace(int end_column) const;
};

DpTables cumulative_energy(const EnergyMap& map);

/// Cheapest vertical seam; ties go to the smallest last-row column.
Seam min_seam(const DpTables& tables);

/// Removes one pixel per row (vertical) or per column (horizontal).
Frame remove_seam(const Frame& frame, const Seam& seam);

}  // namespace retarget
