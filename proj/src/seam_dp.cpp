#include "retarget/seam_dp.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace retarget {

bool Seam::valid_for(int width, int height) const {
  const bool vertical = orientation == Orientation::kVertical;
  const int length = vertical ? height : width;
  const int span = vertical ? width : height;
  if (static_cast<int>(offsets.size()) != length) return false;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i] < 0 || offsets[i] >= span) return false;
    if (i > 0 && std::abs(offsets[i] - offsets[i - 1]) > 1) return false;
  }
  return true;
}

Seam DpTables::trace(int end_column) const {
  Seam seam;
  seam.offsets.resize(height);
  seam.cost = cost(end_column, height - 1);
  int x = end_column;
  for (int y = height - 1; y >= 0; --y) {
    seam.offsets[y] = x;
    x += delta(x, y);
  }
  return seam;
}

DpTables cumulative_energy(const EnergyMap& map) {
  DpTables t;
  t.width = map.width();
  t.height = map.height();
  const int w = t.width;
  t.ce.resize(map.size());
  t.back.assign(map.size(), 0);
  std::memcpy(t.ce.data(), map.row(0), sizeof(double) * w);

  for (int y = 1; y < t.height; ++y) {
    const double* prev = t.ce.data() + static_cast<std::size_t>(y - 1) * w;
    double* cur = t.ce.data() + static_cast<std::size_t>(y) * w;
    std::int8_t* back = t.back.data() + static_cast<std::size_t>(y) * w;
    const double* e = map.row(y);
    for (int x = 0; x < w; ++x) {
      // Strict '<' in order -1, 0, +1 keeps the leftmost predecessor on ties.
      int best = 0;
      double best_ce = prev[x];
      if (x > 0 && prev[x - 1] <= best_ce) {
        best = -1;
        best_ce = prev[x - 1];
      }
      if (x + 1 < w && prev[x + 1] < best_ce) {
        best = 1;
        best_ce = prev[x + 1];
      }
      cur[x] = e[x] + best_ce;
      back[x] = static_cast<std::int8_t>(best);
    }
  }
  return t;
}

Seam min_seam(const DpTables& tables) {
  const double* last = tables.last_row();
  int best = 0;
  for (int x = 1; x < tables.width; ++x) {
    if (last[x] < last[best]) best = x;
  }
  return tables.trace(best);
}

Frame remove_seam(const Frame& frame, const Seam& seam) {
  if (seam.orientation == Orientation::kHorizontal) {
    Seam vertical = seam;
    vertical.orientation = Orientation::kVertical;
    return transpose(remove_seam(transpose(frame), vertical));
  }
  if (static_cast<int>(seam.offsets.size()) != frame.height()) {
    throw std::invalid_argument("remove_seam: seam length " + std::to_string(seam.offsets.size()) +
                                " does not match frame height " + std::to_string(frame.height()));
  }
  if (frame.width() < 2) throw std::invalid_argument("remove_seam: frame is one pixel wide");
  const int c = frame.channels();
  Frame out(frame.width() - 1, frame.height(), c);
  const std::size_t row_bytes = static_cast<std::size_t>(frame.width()) * c;
  for (int y = 0; y < frame.height(); ++y) {
    const int cut = seam.offsets[y];
    if (cut < 0 || cut >= frame.width()) {
      throw std::invalid_argument("remove_seam: offset " + std::to_string(cut) + " out of range in row " +
                                  std::to_string(y));
    }
    const std::uint8_t* src = frame.row(y);
    std::uint8_t* dst = out.row(y);
    const std::size_t head = static_cast<std::size_t>(cut) * c;
    std::memcpy(dst, src, head);
    std::memcpy(dst + head, src + head + c, row_bytes - head - c);
  }
  return out;
}

}  // namespace retarget
