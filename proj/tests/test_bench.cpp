#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "retarget/bench.hpp"

using namespace retarget;

namespace {

Frame gray(int w, int h, std::uint8_t v) { return Frame(w, h, 1, std::vector<std::uint8_t>(w * h, v)); }

}  // namespace

TEST_CASE("jitter") {
  SUBCASE("identical frames") {
    std::mt19937_64 rng(1);
    const Frame f = oracle::random_frame(rng, 5, 5, 3);
    CHECK(jitter(std::vector<Frame>(6, f)).value == 0.0);
  }
  SUBCASE("alternating levels") {
    std::vector<Frame> frames;
    for (int t = 0; t < 9; ++t) frames.push_back(gray(4, 3, t % 2 ? 20 : 10));
    CHECK(jitter(frames).value == 10.0);
  }
  SUBCASE("one window equals the direct formula") {
    std::mt19937_64 rng(2);
    std::vector<Frame> frames;
    for (int t = 0; t < 4; ++t) frames.push_back(oracle::random_frame(rng, 3, 2, 1));
    double expect = 0.0;
    for (int t = 1; t < 4; ++t) {
      double pair = 0.0;
      for (int i = 0; i < 6; ++i) pair += std::abs(frames[t].data()[i] - frames[t - 1].data()[i]);
      expect += pair / 6.0;
    }
    expect /= 3.0;
    CHECK(jitter(frames).value == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("sliding windows average") {
    // Pair differences 1, 2, 3, 4 with window 3: windows (1,2), (2,3), (3,4).
    const std::vector<double> diffs{1, 2, 3, 4};
    CHECK(jitter_from_pair_diffs(diffs, 3) == doctest::Approx((1.5 + 2.5 + 3.5) / 3.0));
    CHECK(jitter_from_pair_diffs(diffs, 10) == doctest::Approx(2.5));
  }
  SUBCASE("sensitive to order") {
    std::vector<Frame> smooth{gray(2, 2, 0), gray(2, 2, 10), gray(2, 2, 20), gray(2, 2, 30), gray(2, 2, 40)};
    std::vector<Frame> shuffled{gray(2, 2, 0), gray(2, 2, 40), gray(2, 2, 10), gray(2, 2, 30), gray(2, 2, 20)};
    CHECK(jitter(smooth).value < jitter(shuffled).value);
  }
  SUBCASE("needs two frames") { CHECK_THROWS_AS(jitter(std::vector<Frame>{gray(2, 2, 0)}), std::invalid_argument); }
}

TEST_CASE("generate") {
  SUBCASE("static corpus repeats one frame") {
    const auto frames = generate({SyntheticKind::kStatic, 16, 12, 5, 3});
    REQUIRE(frames.size() == 5);
    for (const auto& f : frames) CHECK(f == frames.front());
  }
  SUBCASE("moving box advances one column per frame") {
    const SyntheticSpec spec{SyntheticKind::kMovingBox, 64, 32, 10, 5};
    const auto frames = generate(spec);
    const BoxTrack box = moving_box_track(spec.width, spec.height);
    for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
      const int c = box.left(t, spec.width);
      CHECK(box.left(t + 1, spec.width) == c + 1);
      CHECK(frames[t].at(c, box.top, 0) == 255);
      CHECK(frames[t + 1].at(c + box.width, box.top, 1) == 255);
    }
  }
  SUBCASE("brightness ramp brightens") {
    const auto frames = generate({SyntheticKind::kBrightnessRamp, 8, 8, 6, 5});
    for (std::size_t t = 1; t < frames.size(); ++t) {
      for (std::size_t i = 0; i < frames[t].data().size(); ++i) CHECK(frames[t].data()[i] >= frames[t - 1].data()[i]);
    }
    for (auto v : frames.back().data()) CHECK(v == 255);
  }
  SUBCASE("same seed, same corpus") {
    for (auto kind : {SyntheticKind::kStatic, SyntheticKind::kMovingBox, SyntheticKind::kBrightnessRamp,
                      SyntheticKind::kPhoto}) {
      CHECK(generate({kind, 20, 10, 3, 42}) == generate({kind, 20, 10, 3, 42}));
      CHECK(generate({kind, 20, 10, 3, 42}) != generate({kind, 20, 10, 3, 43}));
    }
  }
  SUBCASE("kind names") {
    for (auto kind : {SyntheticKind::kStatic, SyntheticKind::kMovingBox, SyntheticKind::kBrightnessRamp,
                      SyntheticKind::kPhoto}) {
      CHECK(parse_synthetic_kind(to_string(kind)) == kind);
    }
  }
}

TEST_CASE("compare") {
  const auto corpus = generate({SyntheticKind::kStatic, 40, 24, 10, 8});
  std::vector<Variant> variants;
  for (Mode m : {Mode::kRaw, Mode::kScpl, Mode::kBuffered}) {
    RetargetConfig c;
    c.target_width = 30;
    c.target_height = 24;
    c.mode = m;
    variants.push_back({std::string(to_string(m)), c});
  }
  const auto results = compare(corpus, variants);
  REQUIRE(results.size() == 3);
  CHECK(results[2].metrics.dp_passes < results[0].metrics.dp_passes);
  CHECK(results[2].metrics.jitter == 0.0);
  for (const auto& r : results) CHECK(r.metrics.frames_out == corpus.size());

  const auto again = compare(corpus, variants);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(again[i].metrics.dp_passes == results[i].metrics.dp_passes);
    CHECK(again[i].metrics.jitter == results[i].metrics.jitter);
  }

  std::ostringstream report;
  write_report(report, results);
  const std::string text = report.str();
  for (const char* key : {"variant=raw", "mode=buffered", "dp_passes=", "wall_time_s=", "frames_out=10", "jitter="}) {
    CHECK(text.find(key) != std::string::npos);
  }
  CHECK_THROWS_AS(compare(corpus, std::vector<Variant>{}), std::invalid_argument);
}
