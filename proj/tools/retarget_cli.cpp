// retarget - content-aware image and video retargeting by seam carving.
//
//   retarget image <in> <out> --scale 0.8
//   retarget video frames/ out/ --width 256 --mode buffered --metrics run.txt
//   retarget bench synth:static:320x240x64 --width 256 --seed 7

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "retarget/bench.hpp"
#include "retarget/media_io.hpp"
#include "retarget/pipeline.hpp"

namespace {

using namespace retarget;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::optional<int> width;
  std::optional<double> scale;
  std::optional<int> height;
  std::string mode;
  double alpha = 0.2;
  double motion_weight = 0.6;
  std::size_t max_buffer = 64;
  std::string metrics_path;
  std::uint64_t seed = 1;
  std::size_t frames = 64;
};

void add_target_flags(CLI::App* cmd, Options& opt) {
  auto* w = cmd->add_option("--width", opt.width, "Target width in pixels")->check(CLI::PositiveNumber);
  auto* s = cmd->add_option("--scale", opt.scale, "Target width as a fraction of the source width")
                ->check(CLI::Range(0.0, 1.0));
  w->excludes(s);
  cmd->add_option("--height", opt.height, "Target height in pixels (default: source height)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", opt.mode, "raw | scpl | buffered")
      ->check(CLI::IsMember({"raw", "scpl", "buffered"}));
  cmd->add_option("--alpha", opt.alpha, "Buffer threshold scale")->capture_default_str();
  cmd->add_option("--motion-weight", opt.motion_weight, "Weight of the frame-difference term")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--max-buffer", opt.max_buffer, "Longest frame run carved with one seam set")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--metrics", opt.metrics_path, "Write run metrics as key=value text");
}

RetargetConfig make_config(const Options& opt, int src_w, int src_h, Mode default_mode) {
  RetargetConfig cfg;
  if (opt.width) {
    cfg.target_width = *opt.width;
  } else if (opt.scale) {
    cfg.target_width = std::max(1, static_cast<int>(std::lround(src_w * *opt.scale)));
  } else {
    throw UsageError("one of --width or --scale is required");
  }
  cfg.target_height = opt.height.value_or(src_h);
  cfg.mode = opt.mode.empty() ? default_mode : *parse_mode(opt.mode);
  cfg.policy.alpha = opt.alpha;
  cfg.policy.max_len = opt.max_buffer;
  cfg.weights.motion = opt.motion_weight;
  cfg.weights.gradient = 1.0 - opt.motion_weight;
  cfg.validate(src_w, src_h);
  return cfg;
}

void write_metrics_file(const std::string& path, const RunMetrics& metrics) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_metrics(out, metrics);
}

int run_image(const Options& opt) {
  if (!opt.width && !opt.scale) throw UsageError("one of --width or --scale is required");
  const Frame frame = read_image(opt.input);
  const RetargetConfig cfg = make_config(opt, frame.width(), frame.height(), Mode::kScpl);
  const ImageResult result = retarget_image(frame, cfg);
  write_image(opt.output, result.frame);
  write_metrics_file(opt.metrics_path, result.metrics);
  return 0;
}

int run_video(const Options& opt) {
  if (!opt.width && !opt.scale) throw UsageError("one of --width or --scale is required");
  FrameReader reader(opt.input);
  FrameWriter writer(opt.output);
  auto first = reader.next();
  if (!first) {
    write_metrics_file(opt.metrics_path, RunMetrics{});
    return 0;
  }
  const RetargetConfig cfg = make_config(opt, first->width(), first->height(), Mode::kBuffered);
  VideoRetargeter retargeter(cfg, [&](Frame f) { writer.write(f); });
  retargeter.push(*first);
  while (auto frame = reader.next()) retargeter.push(*frame);
  retargeter.finish();
  write_metrics_file(opt.metrics_path, retargeter.metrics());
  return 0;
}

std::vector<Frame> bench_corpus(const Options& opt) {
  constexpr std::string_view kPrefix = "synth:";
  if (!opt.input.starts_with(kPrefix)) return read_frames(opt.input);

  // synth:<kind>[:<W>x<H>x<N>]
  std::string rest = opt.input.substr(kPrefix.size());
  std::string kind_text = rest;
  SyntheticSpec spec;
  spec.frames = opt.frames;
  spec.seed = opt.seed;
  if (auto colon = rest.find(':'); colon != std::string::npos) {
    kind_text = rest.substr(0, colon);
    int w = 0, h = 0;
    std::size_t n = 0;
    if (std::sscanf(rest.c_str() + colon + 1, "%dx%dx%zu", &w, &h, &n) != 3 || w < 3 || h < 3 || n < 1) {
      throw UsageError("bad synthetic geometry '" + rest.substr(colon + 1) + "', expected WxHxN");
    }
    spec.width = w;
    spec.height = h;
    spec.frames = n;
  }
  const auto kind = parse_synthetic_kind(kind_text);
  if (!kind) throw UsageError("unknown synthetic corpus '" + kind_text + "'");
  spec.kind = *kind;
  return generate(spec);
}

int run_bench(Options opt) {
  const std::vector<Frame> corpus = bench_corpus(opt);
  if (corpus.empty()) throw UsageError("bench corpus is empty");
  if (!opt.width && !opt.scale) opt.scale = 0.8;

  std::vector<Variant> variants;
  for (Mode mode : {Mode::kRaw, Mode::kScpl, Mode::kBuffered}) {
    if (!opt.mode.empty() && *parse_mode(opt.mode) != mode) continue;
    variants.push_back({std::string(to_string(mode)), make_config(opt, corpus[0].width(), corpus[0].height(), mode)});
    variants.back().config.mode = mode;
  }
  const auto results = compare(corpus, variants);
  write_report(std::cout, results);
  if (!opt.metrics_path.empty()) {
    std::ofstream out(opt.metrics_path);
    if (!out) throw IoError("cannot open " + opt.metrics_path + " for writing");
    write_report(out, results);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content-aware image and video retargeting by seam carving"};
  app.require_subcommand(1);
  Options opt;

  auto* image = app.add_subcommand("image", "Retarget a single PPM or PNG image");
  image->add_option("in", opt.input, "Input image")->required();
  image->add_option("out", opt.output, "Output image")->required();
  add_target_flags(image, opt);

  auto* video = app.add_subcommand("video", "Retarget a frame sequence (directory, PPM stream file or '-')");
  video->add_option("in", opt.input, "Input frames")->required();
  video->add_option("out", opt.output, "Output frames")->required();
  add_target_flags(video, opt);

  auto* bench = app.add_subcommand("bench", "Compare raw, scpl and buffered modes on a corpus");
  bench->add_option("in", opt.input, "Frames, or synth:<static|moving-box|brightness-ramp|photo>[:WxHxN]")
      ->required();
  add_target_flags(bench, opt);
  bench->add_option("--seed", opt.seed, "Seed for synthetic corpora")->capture_default_str();
  bench->add_option("--frames", opt.frames, "Frame count for synthetic corpora")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*image) return run_image(opt);
    if (*video) return run_video(opt);
    return run_bench(opt);
  } catch (const UsageError& e) {
    std::cerr << "retarget: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "retarget: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "retarget: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "retarget: " << e.what() << '\n';
    return kExitUsage;
  }
}
