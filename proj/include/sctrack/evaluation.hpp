#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sctrack/geometry.hpp"
#include "sctrack/tracker.hpp"

namespace sctrack {

/// Center location error: Euclidean distance between box centers.
double cle(const BoundingBox& tracked, const BoundingBox& truth);

/// Intersection over union on continuous rectangle areas.
double overlap(const BoundingBox& tracked, const BoundingBox& truth);

struct FrameResult {
  int frame = 0;
  BoundingBox tracked;
  BoundingBox truth;
  double cle = 0.0;
  double overlap = 0.0;
};

FrameResult score_frame(int frame, const BoundingBox& tracked, const BoundingBox& truth);

inline constexpr int kPrecisionMaxThreshold = 50;
inline constexpr std::size_t kSuccessGridSize = 21;
inline constexpr double kSuccessGridStep = 0.05;
inline constexpr double kPrecisionOperatingPoint = 20.0;
inline constexpr double kSuccessOperatingPoint = 0.5;

struct CurvePoint {
  double threshold = 0.0;
  double value = 0.0;
};

/// Fraction of frames with cle <= tau for tau = 0, 1, ..., 50.
std::vector<CurvePoint> precision_curve(std::span<const FrameResult> results);

struct SuccessCurve {
  std::vector<CurvePoint> points;  // theta = 0, 0.05, ..., 1
  double auc = 0.0;                // trapezoidal rule over theta
};

/// Fraction of frames with overlap >= theta on the 0.05 grid. The value at
/// theta = 0 is 1.
SuccessCurve success_curve(std::span<const FrameResult> results);

/// Fraction of frames with overlap strictly above 0.5.
double success_rate(std::span<const FrameResult> results);

/// Fraction of frames with cle <= 20 px.
double precision_at(std::span<const FrameResult> results, double tau = kPrecisionOperatingPoint);

struct Summary {
  std::size_t frames = 0;
  double mean_cle = 0.0;
  double success_rate = 0.0;
  double precision_20 = 0.0;
  double auc = 0.0;
  double fps = 0.0;
  // First frame (0-based) the tracker could not process, if any.
  std::optional<std::size_t> lost_at;
};

Summary summarize(std::span<const FrameResult> results);

struct OpeResult {
  std::vector<FrameResult> frames;
  std::vector<FrameDiagnostics> diagnostics;
  Summary summary;
};

/// One-pass evaluation: initialize on the first frame's ground truth and
/// track every following frame without re-initialization. After a tracking
/// loss the remaining frames are scored with the last known box.
OpeResult run_ope(const TrackerConfig& config, std::size_t frame_count,
                  const std::function<Frame(std::size_t)>& load_frame, std::span<const BoundingBox> truth);

OpeResult run_ope(const TrackerConfig& config, std::span<const Frame> frames, std::span<const BoundingBox> truth);

}  // namespace sctrack
