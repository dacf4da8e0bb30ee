#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sctrack/evaluation.hpp"
#include "sctrack/geometry.hpp"
#include "sctrack/synthetic.hpp"
#include "sctrack/tracker.hpp"

namespace sctrack::io {

namespace fs = std::filesystem;

// ---- images ---------------------------------------------------------------

/// Decodes binary (P5) or ASCII (P2) graymaps and binary pixmaps (P6, converted
/// with 0.299 R + 0.587 G + 0.114 B). Throws IoError naming the file.
Frame read_image(const fs::path& path, int index = 0);

/// Writes a binary P5 graymap.
void write_pgm(std::ostream& out, const Frame& frame);

/// Image files in `dir` with a supported extension, sorted lexicographically.
std::vector<fs::path> list_sequence(const fs::path& dir);

// ---- ground truth and results ---------------------------------------------

/// One box per line, four comma-, tab- or space-separated numbers in
/// 1-indexed coordinates. Returns 0-indexed boxes.
std::vector<BoundingBox> parse_ground_truth(std::istream& in);
std::vector<BoundingBox> read_ground_truth(const fs::path& path);

/// Writes boxes back in the 1-indexed comma-separated form.
void write_ground_truth(std::ostream& out, const std::vector<BoundingBox>& boxes);

/// Parses "x,y,w,h" given in 1-indexed coordinates.
BoundingBox parse_box(const std::string& text);

/// "frame,x,y,w,h" tracker output (frames 1-based, coordinates 1-indexed).
void write_track_results(std::ostream& out, const std::vector<BoundingBox>& boxes);
std::vector<BoundingBox> parse_track_results(std::istream& in);
std::vector<BoundingBox> read_track_results(const fs::path& path);

/// "frame,x,y,w,h,gt_x,gt_y,gt_w,gt_h,cle,overlap" rows, 1-indexed.
void write_frame_results(std::ostream& out, const std::vector<FrameResult>& results);

void write_summary(std::ostream& out, const Summary& summary);
void write_precision_curve(std::ostream& out, const std::vector<CurvePoint>& curve);
void write_success_curve(std::ostream& out, const SuccessCurve& curve);

// ---- key = value files ----------------------------------------------------

/// Missing keys keep their defaults; unknown keys and malformed values throw
/// InvalidConfig. The result is validated.
TrackerConfig parse_config(std::istream& in);
TrackerConfig load_config(const fs::path& path);
void save_config(std::ostream& out, const TrackerConfig& config);

/// Synthetic sequence description. Keys: frame_width, frame_height,
/// target_width, target_height, frames, max_displacement, seed, start_x,
/// start_y, gain_start, gain_end, noise_sigma, texture_cell and repeatable
/// occlusion = first,last,x,y,w,h,fill (frames 0-based, region relative to
/// the target).
SyntheticSpec parse_synthetic_spec(std::istream& in);
SyntheticSpec load_synthetic_spec(const fs::path& path);
void save_synthetic_spec(std::ostream& out, const SyntheticSpec& spec);

// ---- atomic output --------------------------------------------------------

/// Writes through a temporary sibling file and renames on success, so a
/// failed write never leaves a partial file at `path`.
void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body);

/// Writes `frames` as 0001.pgm, 0002.pgm, ... and `groundtruth_rect.txt` into
/// `dir` via a temporary directory renamed on success. `dir` must not exist
/// or be empty.
void write_sequence(const fs::path& dir, const SyntheticSequence& seq);

inline constexpr const char* kGroundTruthName = "groundtruth_rect.txt";

}  // namespace sctrack::io
