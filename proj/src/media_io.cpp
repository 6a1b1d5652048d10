#include "retarget/media_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <istream>
#include <limits>
#include <ostream>

namespace retarget {

namespace fs = std::filesystem;

IoError::IoError(const std::string& what, std::optional<std::size_t> frame_index)
    : std::runtime_error(frame_index ? "frame " + std::to_string(*frame_index) + ": " + what : what),
      frame_index_(frame_index) {}

namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* field, std::size_t index) {
  skip_separators(in);
  if (!std::isdigit(in.peek())) throw IoError(std::string("malformed PNM header: expected ") + field, index);
  long value = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + (in.get() - '0');
    if (value > (1L << 24)) throw IoError(std::string("malformed PNM header: ") + field + " too large", index);
  }
  return static_cast<int>(value);
}

bool has_extension(const fs::path& p, std::initializer_list<const char*> exts) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return std::any_of(exts.begin(), exts.end(), [&](const char* e) { return ext == e; });
}

bool is_png(const fs::path& p) { return has_extension(p, {".png"}); }

std::optional<unsigned long long> trailing_number(const fs::path& p) {
  const std::string stem = p.stem().string();
  auto end = stem.find_last_of("0123456789");
  if (end == std::string::npos) return std::nullopt;
  auto begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  return std::stoull(stem.substr(begin, end - begin + 1));
}

}  // namespace

std::optional<Frame> read_pnm(std::istream& in, std::size_t frame_index) {
  const int first = in.peek();
  if (first == EOF) return std::nullopt;
  char magic[2] = {};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || (magic[1] != '6' && magic[1] != '5')) {
    throw IoError("malformed PNM header: bad magic", frame_index);
  }
  const int channels = magic[1] == '6' ? 3 : 1;
  if (!std::isspace(in.peek()) && in.peek() != '#') throw IoError("malformed PNM header: bad magic", frame_index);
  const int width = read_header_int(in, "width", frame_index);
  const int height = read_header_int(in, "height", frame_index);
  const int maxval = read_header_int(in, "maxval", frame_index);
  if (width < 1 || height < 1) throw IoError("malformed PNM header: empty image", frame_index);
  if (maxval != 255) throw IoError("unsupported maxval " + std::to_string(maxval) + " (need 255)", frame_index);
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) throw IoError("malformed PNM header: missing separator", frame_index);

  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (static_cast<std::size_t>(in.gcount()) != data.size()) {
    throw IoError("truncated payload: expected " + std::to_string(data.size()) + " bytes, got " +
                      std::to_string(in.gcount()),
                  frame_index);
  }
  return Frame(width, height, channels, std::move(data));
}

void write_pnm(std::ostream& out, const Frame& frame) {
  out << (frame.channels() == 3 ? "P6" : "P5") << '\n'
      << frame.width() << ' ' << frame.height() << '\n'
      << "255\n";
  out.write(reinterpret_cast<const char*>(frame.data().data()), static_cast<std::streamsize>(frame.data().size()));
  if (!out) throw IoError("write failed");
}

Frame read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError(path.string() + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError(path.string() + ": " + msg);
  }
  return Frame(static_cast<int>(image.width), static_cast<int>(image.height), channels, std::move(data));
}

void write_png(const fs::path& path, const Frame& frame) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = frame.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, frame.data().data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
}

Frame read_image(const fs::path& path) {
  if (is_png(path)) return read_png(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto frame = read_pnm(in);
  if (!frame) throw IoError(path.string() + ": empty file");
  return std::move(*frame);
}

void write_image(const fs::path& path, const Frame& frame) {
  if (is_png(path)) {
    write_png(path, frame);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_pnm(out, frame);
}

std::vector<fs::path> list_frame_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_extension(entry.path(), {".ppm", ".pgm", ".pnm", ".png"})) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const auto na = trailing_number(a);
    const auto nb = trailing_number(b);
    if (na.has_value() != nb.has_value()) return na.has_value();
    if (na && *na != *nb) return *na < *nb;
    return a.filename() < b.filename();
  });
  return files;
}

FrameReader::FrameReader(const std::string& source) {
  if (source == "-") {
    stream_ = &std::cin;
    return;
  }
  const fs::path path(source);
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    is_dir_ = true;
    files_ = list_frame_files(path);
    std::reverse(files_.begin(), files_.end());
    return;
  }
  if (!fs::exists(path, ec)) throw IoError("no such file or directory: " + source);
  if (is_png(path)) {
    single_ = read_png(path);
    return;
  }
  file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file_) throw IoError("cannot open " + source);
  stream_ = file_.get();
}

FrameReader::~FrameReader() = default;

std::optional<Frame> FrameReader::decode_next() {
  if (is_dir_) {
    if (files_.empty()) return std::nullopt;
    const fs::path p = files_.back();
    files_.pop_back();
    if (is_png(p)) return read_png(p);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string(), index_);
    auto frame = read_pnm(in, index_);
    if (!frame) throw IoError(p.string() + ": empty file", index_);
    return frame;
  }
  if (single_) {
    auto frame = std::move(single_);
    single_.reset();
    return frame;
  }
  if (stream_ != nullptr) return read_pnm(*stream_, index_);
  return std::nullopt;
}

std::optional<Frame> FrameReader::next() {
  std::optional<Frame> frame;
  try {
    frame = decode_next();
  } catch (const IoError& e) {
    if (e.frame_index()) throw;
    throw IoError(e.what(), index_);
  }
  if (!frame) return std::nullopt;
  if (index_ == 0) {
    width_ = frame->width();
    height_ = frame->height();
  } else if (frame->width() != width_ || frame->height() != height_) {
    throw IoError("dimension change mid-stream: expected " + std::to_string(width_) + "x" + std::to_string(height_) +
                      ", got " + std::to_string(frame->width()) + "x" + std::to_string(frame->height()),
                  index_);
  }
  ++index_;
  return frame;
}

FrameWriter::FrameWriter(const std::string& sink) {
  if (sink == "-") {
    stream_ = &std::cout;
    return;
  }
  const fs::path path(sink);
  std::error_code ec;
  const bool trailing_sep = !sink.empty() && (sink.back() == '/' || sink.back() == fs::path::preferred_separator);
  if (fs::is_directory(path, ec) || trailing_sep) {
    fs::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + sink + ": " + ec.message());
    dir_ = path;
    return;
  }
  if (is_png(path)) {
    png_ = path;
    return;
  }
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file_) throw IoError("cannot open " + sink + " for writing");
  stream_ = file_.get();
}

FrameWriter::~FrameWriter() = default;

void FrameWriter::write(const Frame& frame) {
  try {
    if (!dir_.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%06zu.%s", index_, frame.channels() == 3 ? "ppm" : "pgm");
      write_image(dir_ / name, frame);
    } else if (!png_.empty()) {
      if (index_ > 0) throw IoError("a PNG sink holds a single frame");
      write_png(png_, frame);
    } else {
      write_pnm(*stream_, frame);
      stream_->flush();
      if (!*stream_) throw IoError("write failed");
    }
  } catch (const IoError& e) {
    if (e.frame_index()) throw;
    throw IoError(e.what(), index_);
  }
  ++index_;
}

std::vector<Frame> read_frames(const std::string& source) {
  FrameReader reader(source);
  std::vector<Frame> frames;
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  return frames;
}

void write_frames(const std::string& sink, const std::vector<Frame>& frames) {
  FrameWriter writer(sink);
  for (const auto& f : frames) writer.write(f);
}

}  // namespace retarget
