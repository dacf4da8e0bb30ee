#include "sctrack/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sctrack/error.hpp"

namespace sctrack {

double cle(const BoundingBox& tracked, const BoundingBox& truth) {
  const Vec2 a = tracked.center();
  const Vec2 b = truth.center();
  return std::hypot(a.x - b.x, a.y - b.y);
}

double overlap(const BoundingBox& tracked, const BoundingBox& truth) {
  const double ix = std::max(0, std::min(tracked.x + tracked.w, truth.x + truth.w) - std::max(tracked.x, truth.x));
  const double iy = std::max(0, std::min(tracked.y + tracked.h, truth.y + truth.h) - std::max(tracked.y, truth.y));
  const double inter = ix * iy;
  const double uni = tracked.area() + truth.area() - inter;
  return inter / uni;
}

FrameResult score_frame(int frame, const BoundingBox& tracked, const BoundingBox& truth) {
  return {frame, tracked, truth, cle(tracked, truth), overlap(tracked, truth)};
}

namespace {

void require_results(std::span<const FrameResult> results) {
  if (results.empty()) {
    throw InvalidInput("metrics need at least one frame result");
  }
}

}  // namespace

std::vector<CurvePoint> precision_curve(std::span<const FrameResult> results) {
  require_results(results);
  std::vector<CurvePoint> curve;
  curve.reserve(kPrecisionMaxThreshold + 1);
  for (int tau = 0; tau <= kPrecisionMaxThreshold; ++tau) {
    curve.push_back({static_cast<double>(tau), precision_at(results, tau)});
  }
  return curve;
}

SuccessCurve success_curve(std::span<const FrameResult> results) {
  require_results(results);
  const double n = static_cast<double>(results.size());
  SuccessCurve curve;
  curve.points.reserve(kSuccessGridSize);
  for (std::size_t i = 0; i < kSuccessGridSize; ++i) {
    const double theta = static_cast<double>(i) / static_cast<double>(kSuccessGridSize - 1);
    double value = 1.0;
    if (i > 0) {
      const auto hits = std::count_if(results.begin(), results.end(),
                                      [theta](const FrameResult& r) { return r.overlap >= theta; });
      value = static_cast<double>(hits) / n;
    }
    curve.points.push_back({theta, value});
  }
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) inner += curve.points[i].value;
  curve.auc = kSuccessGridStep * (inner + 0.5 * (curve.points.front().value + curve.points.back().value));
  return curve;
}

double success_rate(std::span<const FrameResult> results) {
  require_results(results);
  const auto hits = std::count_if(results.begin(), results.end(),
                                  [](const FrameResult& r) { return r.overlap > kSuccessOperatingPoint; });
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double precision_at(std::span<const FrameResult> results, double tau) {
  require_results(results);
  const auto hits =
      std::count_if(results.begin(), results.end(), [tau](const FrameResult& r) { return r.cle <= tau; });
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

Summary summarize(std::span<const FrameResult> results) {
  require_results(results);
  Summary s;
  s.frames = results.size();
  for (const FrameResult& r : results) s.mean_cle += r.cle;
  s.mean_cle /= static_cast<double>(results.size());
  s.success_rate = success_rate(results);
  s.precision_20 = precision_at(results);
  s.auc = success_curve(results).auc;
  return s;
}

OpeResult run_ope(const TrackerConfig& config, std::size_t frame_count,
                  const std::function<Frame(std::size_t)>& load_frame, std::span<const BoundingBox> truth) {
  if (frame_count == 0) {
    throw InvalidInput("sequence has no frames");
  }
  if (truth.size() < frame_count) {
    throw InvalidInput("ground truth covers fewer frames than the sequence");
  }
  using Clock = std::chrono::steady_clock;
  Clock::duration busy{};
  OpeResult out;
  out.frames.reserve(frame_count);

  const Frame first = load_frame(0);
  auto start = Clock::now();
  Tracker tracker(first, truth[0], config);
  busy += Clock::now() - start;
  out.frames.push_back(score_frame(0, tracker.position(), truth[0]));

  std::optional<std::size_t> lost_at;
  for (std::size_t t = 1; t < frame_count; ++t) {
    BoundingBox box = tracker.position();
    if (!lost_at) {
      const Frame frame = load_frame(t);
      start = Clock::now();
      try {
        TrackResult r = tracker.track(frame);
        box = r.box;
        out.diagnostics.push_back(std::move(r.diagnostics));
      } catch (const TrackingLost&) {
        lost_at = t;
      }
      busy += Clock::now() - start;
    }
    out.frames.push_back(score_frame(static_cast<int>(t), box, truth[t]));
  }

  out.summary = summarize(out.frames);
  out.summary.lost_at = lost_at;
  const double seconds = std::max(std::chrono::duration<double>(busy).count(), 1e-9);
  const std::size_t processed = lost_at ? *lost_at : frame_count;
  out.summary.fps = static_cast<double>(processed) / seconds;
  return out;
}

OpeResult run_ope(const TrackerConfig& config, std::span<const Frame> frames, std::span<const BoundingBox> truth) {
  return run_ope(config, frames.size(), [frames](std::size_t i) { return frames[i]; }, truth);
}

}  // namespace sctrack
