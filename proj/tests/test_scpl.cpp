#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "retarget/energy.hpp"
#include "retarget/scpl.hpp"

using namespace retarget;

namespace {

// Upward trace from each last-row column, independent of label_parents'
// top-down propagation.
std::vector<int> traced_labels(const DpTables& t) {
  std::vector<int> out(t.width);
  for (int x = 0; x < t.width; ++x) out[x] = t.trace(x).offsets.front();
  return out;
}

void check_batch_structure(const DpTables& t, const SeamBatch& batch) {
  for (const auto& s : batch.seams) CHECK(s.valid_for(t.width, t.height));
  for (int y = 0; y < t.height; ++y) {
    std::set<int> cols;
    for (const auto& s : batch.seams) cols.insert(s.offsets[y]);
    CHECK(cols.size() == batch.size());
  }
  for (std::size_t i = 1; i < batch.size(); ++i) {
    CHECK(batch.seams[i - 1].offsets.back() < batch.seams[i].offsets.back());
  }
}

}  // namespace

TEST_CASE("label_parents") {
  SUBCASE("two-row constant map") {
    const DpTables t = cumulative_energy(EnergyMap(3, 2, 1.0));
    const ParentLabels l = label_parents(t);
    CHECK(l.label == std::vector<int>{0, 0, 1});
    CHECK(l.parent_count() == 2);
  }
  SUBCASE("single parent") {
    const DpTables t = cumulative_energy(EnergyMap(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
    CHECK(label_parents(t).label == std::vector<int>{0, 0, 0});
  }
  SUBCASE("propagated labels agree with per-child traces and are monotone") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> dim(1, 24);
      const EnergyMap m = oracle::random_map(rng, dim(rng), dim(rng), trial % 2 == 0);
      const DpTables t = cumulative_energy(m);
      const ParentLabels l = label_parents(t);
      REQUIRE(l.label.size() == static_cast<std::size_t>(m.width()));
      CHECK(l.label == traced_labels(t));
      CHECK(std::is_sorted(l.label.begin(), l.label.end()));
    }
  }
}

TEST_CASE("select_batch") {
  SUBCASE("single parent gives a single seam") {
    const DpTables t = cumulative_energy(EnergyMap(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
    const SeamBatch b = select_batch(t, label_parents(t));
    REQUIRE(b.size() == 1);
    CHECK(b.seams[0].offsets == std::vector<int>{0, 0, 0});
  }
  SUBCASE("two-row constant map") {
    const DpTables t = cumulative_energy(EnergyMap(3, 2, 1.0));
    const SeamBatch b = select_batch(t, label_parents(t));
    REQUIRE(b.size() == 2);
    CHECK(b.seams[0].offsets.back() == 0);
    CHECK(b.seams[1].offsets.back() == 2);
  }
  SUBCASE("limit of one is the minimum seam") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const EnergyMap m = oracle::random_map(rng, 12, 9, trial % 2 == 0);
      const DpTables t = cumulative_energy(m);
      const SeamBatch b = select_batch(t, label_parents(t), 1);
      REQUIRE(b.size() == 1);
      CHECK(b.seams[0] == min_seam(t));
    }
  }
  SUBCASE("structure, global minimum and truncation on random maps") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> dim(2, 32);
      const EnergyMap m = oracle::random_map(rng, dim(rng), dim(rng), trial % 3 == 0);
      const DpTables t = cumulative_energy(m);
      const ParentLabels l = label_parents(t);
      const SeamBatch all = select_batch(t, l);
      CHECK(all.size() == l.parent_count());
      check_batch_structure(t, all);
      CHECK(std::find(all.seams.begin(), all.seams.end(), min_seam(t)) != all.seams.end());

      // One seam per parent, each the cheapest child of its parent.
      std::map<int, double> cheapest;
      for (int x = 0; x < t.width; ++x) {
        auto [it, fresh] = cheapest.emplace(l.label[x], t.last_row()[x]);
        if (!fresh) it->second = std::min(it->second, t.last_row()[x]);
      }
      for (const auto& s : all.seams) CHECK(s.cost == cheapest.at(s.offsets.front()));

      // Truncation keeps exactly the k cheapest (cost, then column).
      std::vector<const Seam*> ranked;
      for (const auto& s : all.seams) ranked.push_back(&s);
      std::stable_sort(ranked.begin(), ranked.end(), [](const Seam* a, const Seam* b) { return a->cost < b->cost; });
      for (std::size_t k = 1; k <= all.size(); ++k) {
        const SeamBatch some = select_batch(t, l, k);
        REQUIRE(some.size() == k);
        std::set<int> expect;
        for (std::size_t i = 0; i < k; ++i) expect.insert(ranked[i]->offsets.back());
        std::set<int> got;
        for (const auto& s : some.seams) got.insert(s.offsets.back());
        CHECK(got == expect);
        check_batch_structure(t, some);
      }
    }
  }
  SUBCASE("zero limit is rejected") {
    const DpTables t = cumulative_energy(EnergyMap(3, 2, 1.0));
    CHECK_THROWS_AS(select_batch(t, label_parents(t), 0), std::invalid_argument);
  }
}

TEST_CASE("remove_batch") {
  SUBCASE("two-row constant example keeps only the middle of the last row") {
    Frame f(3, 2, 1, {1, 2, 3, 4, 5, 6});
    const DpTables t = cumulative_energy(EnergyMap(3, 2, 1.0));
    const Frame g = remove_batch(f, select_batch(t, label_parents(t)));
    CHECK(g.width() == 1);
    CHECK(g.at(0, 1) == 5);
    CHECK(g.at(0, 0) == 3);
  }
  SUBCASE("empty batch is identity") {
    std::mt19937_64 rng(1);
    const Frame f = oracle::random_frame(rng, 5, 4, 3);
    CHECK(remove_batch(f, SeamBatch{}) == f);
  }
  SUBCASE("uniform width and ordered rows") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
      const Frame f = oracle::random_frame(rng, 20, 15, 1);
      const DpTables t = cumulative_energy(gradient_energy(f));
      const SeamBatch b = select_batch(t, label_parents(t), 19);
      const Frame g = remove_batch(f, b);
      CHECK(g.width() == 20 - static_cast<int>(b.size()));
      for (int y = 0; y < 15; ++y) {
        std::vector<int> cut;
        for (const auto& s : b.seams) cut.push_back(s.offsets[y]);
        std::vector<std::uint8_t> expect;
        for (int x = 0; x < 20; ++x)
          if (std::find(cut.begin(), cut.end(), x) == cut.end()) expect.push_back(f.at(x, y));
        CHECK(std::vector<std::uint8_t>(g.row(y), g.row(y) + g.width()) == expect);
      }
    }
  }
  SUBCASE("intersecting seams are rejected") {
    Frame f(4, 2, 1);
    SeamBatch b;
    b.seams.push_back({Orientation::kVertical, {1, 1}, 0});
    b.seams.push_back({Orientation::kVertical, {2, 1}, 0});
    CHECK_THROWS_AS(remove_batch(f, b), std::invalid_argument);
  }
}

TEST_CASE("scpl_carve") {
  std::mt19937_64 rng(77);
  SUBCASE("identity at full width") {
    const Frame f = oracle::random_frame(rng, 8, 8, 3);
    const CarveResult r = scpl_carve(f, gradient_energy(f), 8);
    CHECK(r.frame == f);
    CHECK(r.batches.empty());
  }
  SUBCASE("exact target width") {
    for (int target = 1; target <= 8; ++target) {
      const Frame f = oracle::random_frame(rng, 8, 8, 3);
      const CarveResult r = scpl_carve(f, gradient_energy(f), target);
      CHECK(r.frame.width() == target);
      CHECK(r.frame.height() == 8);
      std::size_t removed = 0;
      for (const auto& b : r.batches) removed += b.size();
      CHECK(removed == static_cast<std::size_t>(8 - target));
    }
  }
  SUBCASE("zero-energy band attracts the first batch") {
    // Energy is zero on columns 5-7 and high elsewhere. Remove as many seams
    // as the band has parents; the first batch must then lie in the band.
    EnergyMap m(14, 6, 200.0);
    for (int y = 0; y < 6; ++y)
      for (int x = 5; x < 8; ++x) m.at(x, y) = 0.0;
    const DpTables t = cumulative_energy(m);
    const ParentLabels l = label_parents(t);
    std::set<int> band_parents;
    for (int x = 5; x < 8; ++x) band_parents.insert(l.label[x]);
    // Any seam leaving the band costs at least 200.
    CHECK(oracle::brute_force_min_seam(m) == 0.0);

    const Frame f = oracle::random_frame(rng, 14, 6, 1);
    const CarveResult r = scpl_carve(f, m, 14 - static_cast<int>(band_parents.size()));
    REQUIRE(!r.batches.empty());
    const SeamBatch& first = r.batches.front();
    CHECK(first.size() == band_parents.size());
    for (const auto& s : first.seams) {
      CHECK(s.cost == 0.0);
      for (int x : s.offsets) CHECK((x >= 5 && x <= 7));
    }
  }
  SUBCASE("never more passes than one-seam carving") {
    for (int trial = 0; trial < 10; ++trial) {
      const Frame f = oracle::random_frame(rng, 24, 16, 3);
      const auto e = gradient_energy(f);
      const CarveResult batched = scpl_carve(f, e, 12);
      const CarveResult single = sc_carve(f, e, 12);
      CHECK(batched.dp_passes() <= single.dp_passes());
      CHECK(single.dp_passes() == 12);
      CHECK(single.frame.width() == 12);
    }
  }
  SUBCASE("bad target") {
    const Frame f = oracle::random_frame(rng, 6, 6, 1);
    CHECK_THROWS_AS(scpl_carve(f, gradient_energy(f), 0), std::invalid_argument);
    CHECK_THROWS_AS(scpl_carve(f, gradient_energy(f), 7), std::invalid_argument);
  }
}
