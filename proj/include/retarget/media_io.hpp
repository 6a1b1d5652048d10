#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "retarget/frame.hpp"

namespace retarget {

/// Malformed, truncated or unreadable media. Carries the index of the frame
/// being decoded or encoded when one applies.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what, std::optional<std::size_t> frame_index = std::nullopt);

  std::optional<std::size_t> frame_index() const { return frame_index_; }

 private:
  std::optional<std::size_t> frame_index_;
};

/// Reads one binary PNM record (P6, or P5 for luma) with maxval 255.
/// Returns nullopt when the stream is already at its end.
std::optional<Frame> read_pnm(std::istream& in, std::size_t frame_index = 0);

/// Writes P6 for RGB frames and P5 for luma frames.
void write_pnm(std::ostream& out, const Frame& frame);

Frame read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Frame& frame);

/// Single image by extension: .png, otherwise PNM.
Frame read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Frame& frame);

/// Image files in a directory ordered by the last run of digits in each file
/// stem (so f_2 precedes f_10), then by name.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir);

/// Frame source: "-" is concatenated PNM on standard input, a directory is a
/// numbered image sequence, a .png file is one frame and any other file is a
/// concatenated PNM stream. All frames must share dimensions.
class FrameReader {
 public:
  explicit FrameReader(const std::string& source);
  ~FrameReader();
  FrameReader(const FrameReader&) = delete;
  FrameReader& operator=(const FrameReader&) = delete;

  std::optional<Frame> next();
  std::size_t frames_read() const { return index_; }

 private:
  std::optional<Frame> decode_next();

  std::istream* stream_ = nullptr;
  std::unique_ptr<std::ifstream> file_;
  std::vector<std::filesystem::path> files_;
  std::optional<Frame> single_;
  bool is_dir_ = false;
  std::size_t index_ = 0;
  int width_ = 0;
  int height_ = 0;
};

/// Frame sink mirroring FrameReader: "-" streams PNM records to standard
/// output (flushed per frame), an existing directory or a path ending in a
/// separator receives frame_NNNNNN.ppm files, a .png path takes exactly one
/// frame and any other path becomes a concatenated PNM stream.
class FrameWriter {
 public:
  explicit FrameWriter(const std::string& sink);
  ~FrameWriter();
  FrameWriter(const FrameWriter&) = delete;
  FrameWriter& operator=(const FrameWriter&) = delete;

  void write(const Frame& frame);
  std::size_t frames_written() const { return index_; }

 private:
  std::ostream* stream_ = nullptr;
  std::unique_ptr<std::ofstream> file_;
  std::filesystem::path dir_;
  std::filesystem::path png_;
  std::size_t index_ = 0;
};

std::vector<Frame> read_frames(const std::string& source);
void write_frames(const std::string& sink, const std::vector<Frame>& frames);

}  // namespace retarget
