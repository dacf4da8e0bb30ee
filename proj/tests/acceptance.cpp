// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sctrack/evaluation.hpp"
#include "sctrack/io.hpp"
#include "sctrack/synthetic.hpp"
#include "sctrack/tracker.hpp"
#include "sctrack/wmil.hpp"

using namespace sctrack;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || secs < limit_s;
  const bool pass = o.pass && in_time;
  failures += pass ? 0 : 1;
  std::printf("%s criterion %2d %-28s %s [%.3fs%s]\n", pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs,
              in_time ? "" : " over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SyntheticSpec easy_sequence(std::uint64_t seed = 1) {
  SyntheticSpec s;
  s.frame_size = {320, 240};
  s.target_size = {40, 40};
  s.frames = 100;
  s.max_displacement = 6.0;
  s.gain_start = 1.0;
  s.gain_end = 1.3;
  s.seed = seed;
  return s;
}

constexpr std::size_t kOcclusionFirst = 30;
constexpr std::size_t kOcclusionLast = 49;
constexpr std::uint8_t kOcclusionFill = 128;

// Same sequence with the tracker's first sub-region covered for 20 frames.
SyntheticSequence occluded_sequence(std::uint64_t seed, const TrackerConfig& cfg) {
  SyntheticSpec spec = easy_sequence(seed);
  const auto base = generate_synthetic(spec);
  const Tracker probe(base.frames[0], base.truth[0], cfg);
  const auto& layout = probe.state().pool.layout;
  const Point p = layout.positions[0];
  spec.occlusions.push_back({kOcclusionFirst, kOcclusionLast,
                             BoundingBox(p.x, p.y, layout.subregion_size.width, layout.subregion_size.height),
                             kOcclusionFill});
  return generate_synthetic(spec);
}

struct OcclusionRun {
  double sr_gated = 0.0;
  double sr_ungated = 0.0;
  std::size_t reacquired_after = 0;  // frames after the occlusion ends; SIZE_MAX if never
};

OcclusionRun occlusion_run(std::uint64_t seed) {
  TrackerConfig cfg;
  const auto seq = occluded_sequence(seed, cfg);
  const auto gated = run_ope(cfg, seq.frames, seq.truth);
  cfg.occlusion_gating = false;
  const auto ungated = run_ope(cfg, seq.frames, seq.truth);
  OcclusionRun r;
  r.sr_gated = gated.summary.success_rate;
  r.sr_ungated = ungated.summary.success_rate;
  r.reacquired_after = SIZE_MAX;
  for (std::size_t t = kOcclusionLast + 1; t < gated.frames.size(); ++t) {
    if (gated.frames[t].overlap > kSuccessOperatingPoint) {
      r.reacquired_after = t - kOcclusionLast - 1;
      break;
    }
  }
  return r;
}

bool occlusion_ok(const OcclusionRun& r) {
  return r.reacquired_after < 5 && r.sr_gated >= 0.8 && r.sr_ungated - r.sr_gated <= 0.05;
}

}  // namespace

int main() {
  report(1, "default parameters", 1.0, [] {
    const TrackerConfig c;
    std::istringstream empty("");
    const TrackerConfig loaded = io::parse_config(empty);
    const bool ok = c.alpha == 4.0 && c.delta == 8.0 && c.beta == 22.0 && c.n_negatives == 50 && c.n_s == 4 &&
                    c.lambda == 0.9 && c.m_features == 100 && c.k_selected == 20 && loaded == c;
    std::ostringstream dump;
    io::save_config(dump, c);
    const std::string d = dump.str();
    const bool dumped = d.find("alpha = 4\n") != std::string::npos && d.find("delta = 8\n") != std::string::npos &&
                        d.find("beta = 22\n") != std::string::npos && d.find("n_negatives = 50\n") != std::string::npos &&
                        d.find("n_s = 4\n") != std::string::npos && d.find("lambda = 0.9\n") != std::string::npos &&
                        d.find("m_features = 100\n") != std::string::npos &&
                        d.find("k_selected = 20\n") != std::string::npos;
    return Outcome{ok && dumped, "alpha=4 delta=8 beta=22 neg=50 Ns=4 lambda=0.9 M=100 K=20"};
  });

  report(2, "sparse weight distribution", 5.0, [] {
    Rng rng(2);
    const auto layout = generate_layout({40, 40}, {20, 20}, 4, rng);
    std::size_t pos = 0;
    std::size_t total = 0;
    while (total < 100000) {
      const auto pool = generate_pool(layout, 1000, FeatureConfig{}, rng);
      for (const auto& t : pool.templates)
        for (const auto& r : t.rects) {
          if (total == 100000) break;
          pos += r.weight > 0 ? 1 : 0;
          ++total;
        }
    }
    const double frac = static_cast<double>(pos) / static_cast<double>(total);
    const bool sign_ok = std::abs(frac - 0.78) <= 0.01;

    const double rho = 400.0;  // 40x40 sample, rho = n / 4
    const int draws = 100000;
    int nonzero = 0;
    for (int i = 0; i < draws; ++i) nonzero += legacy_matrix_entry(rng, rho) != 0.0 ? 1 : 0;
    const double p = 1.0 / rho;
    const double sigma = std::sqrt(p * (1.0 - p) / draws);
    const double legacy = static_cast<double>(nonzero) / draws;
    const bool legacy_ok = std::abs(legacy - p) <= 3.0 * sigma;
    return Outcome{sign_ok && legacy_ok,
                   fmt("positive=%.4f (0.78+-0.01) legacy_nonzero=%.5f (%.5f+-%.5f)", frac, legacy, p, 3 * sigma)};
  });

  report(3, "rectangle sums", 5.0, [] {
    std::mt19937_64 rng(3);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
      const int w = std::uniform_int_distribution<int>(1, 120)(rng);
      const int h = std::uniform_int_distribution<int>(1, 120)(rng);
      const Frame f = oracle::random_frame(rng, w, h);
      const IntegralImage ii(f);
      const int x = std::uniform_int_distribution<int>(0, w - 1)(rng);
      const int y = std::uniform_int_distribution<int>(0, h - 1)(rng);
      const int rw = std::uniform_int_distribution<int>(1, w - x)(rng);
      const int rh = std::uniform_int_distribution<int>(1, h - y)(rng);
      agree += ii.rect_sum({x, y, rw, rh}) == oracle::pixel_sum(f, x, y, rw, rh) ? 1 : 0;
    }
    return Outcome{agree == 1000, fmt("%g/1000 exact", agree)};
  });

  report(4, "greedy selection", 10.0, [] {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> value(0.0, 2.0);
    std::uniform_real_distribution<double> sd(0.5, 3.0);
    std::uniform_int_distribution<int> coord(-4, 4);
    int agree = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = 10;
      ClassifierPool pool;
      pool.params.resize(m);
      for (auto& g : pool.params) g = {value(rng), sd(rng), value(rng), sd(rng)};
      SampleBag pos{Label::positive, {}, FeatureMatrix(10, m), {}};
      SampleBag neg{Label::negative, {}, FeatureMatrix(10, m), {}};
      std::vector<std::vector<double>> pr(10, std::vector<double>(m));
      std::vector<std::vector<double>> nr(10, std::vector<double>(m));
      for (std::size_t i = 0; i < 10; ++i) {
        pos.positions.push_back({coord(rng), coord(rng)});
        neg.positions.push_back({coord(rng) + 10, coord(rng)});
        for (std::size_t j = 0; j < m; ++j) {
          pr[i][j] = pos.features(i, j) = value(rng);
          nr[i][j] = neg.features(i, j) = value(rng);
        }
      }
      pos.weights = positive_weights(pos.positions, {0, 0});
      agree += select_features(pool, pos, neg, 3).selected == oracle::greedy(pool, pr, pos.weights, nr, 3) ? 1 : 0;
    }
    return Outcome{agree == 100, fmt("%g/100 trials agree (M=10 K=3, 20 instances)", agree)};
  });

  report(5, "update rule", 1.0, [] {
    const std::vector<double> batch{1.0, 3.0, 4.5, -2.0, 7.25};
    double mean = 0.0;
    for (double v : batch) mean += v / 5.0;
    double var = 0.0;
    for (double v : batch) var += (v - mean) * (v - mean) / 5.0;
    const double sd = std::sqrt(var);
    const auto p = update_pair({9.0, 4.0, 0.0, 1.0}, batch, {}, Label::positive, 0.0, 1e-2);
    const double rel_mu = std::abs(p.mu1 - mean) / std::abs(mean);
    const double rel_sd = std::abs(p.sigma1 - sd) / sd;
    const std::vector<double> pair{1.0, 3.0};
    const auto q = update_pair({0.0, 1.0, 0.0, 1.0}, pair, {}, Label::positive, 0.9, 1e-2);
    const double rel_h = std::abs(q.sigma1 - std::sqrt(1.36)) / std::sqrt(1.36);
    const double rel_m = std::abs(q.mu1 - 0.2) / 0.2;
    return Outcome{rel_mu <= 1e-12 && rel_sd <= 1e-12 && rel_h <= 1e-12 && rel_m <= 1e-12,
                   fmt("lambda=0 rel err mu %.1e sigma %.1e; lambda=0.9 sigma=%.15f (sqrt 1.36)", rel_mu, rel_sd,
                       q.sigma1)};
  });

  report(6, "metrics", 5.0, [] {
    const double iou = overlap({0, 0, 10, 10}, {5, 0, 10, 10});
    const double c = cle({3, 4, 10, 10}, {0, 0, 10, 10});
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int monotone = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<FrameResult> r(1 + trial % 50);
      for (auto& f : r) {
        f.overlap = u(rng);
        f.cle = 70.0 * u(rng);
      }
      const auto p = precision_curve(r);
      const auto s = success_curve(r);
      bool ok = true;
      for (std::size_t i = 1; i < p.size(); ++i) ok = ok && p[i].value >= p[i - 1].value;
      for (std::size_t i = 1; i < s.points.size(); ++i) ok = ok && s.points[i].value <= s.points[i - 1].value;
      monotone += ok ? 1 : 0;
    }
    return Outcome{std::abs(iou - 1.0 / 3.0) <= 1e-12 && c == 5.0 && monotone == 1000,
                   fmt("IoU=%.15f CLE=%g monotone %g/1000", iou, c, monotone)};
  });

  report(7, "detection", 10.0, [] {
    std::mt19937_64 rng(7);
    int agree = 0;
    for (int trial = 0; trial < 50; ++trial) {
      SyntheticSpec spec;
      spec.frames = 1;
      spec.seed = 1000 + trial;
      spec.target_size = {std::uniform_int_distribution<int>(20, 48)(rng), std::uniform_int_distribution<int>(20, 48)(rng)};
      const auto seq = generate_synthetic(spec);
      TrackerConfig cfg;
      cfg.rng_seed = trial;
      const Tracker t(seq.frames[0], seq.truth[0], cfg);
      const Frame probe = oracle::random_frame(rng, 320, 240);
      const Point center{std::uniform_int_distribution<int>(-10, 330 - spec.target_size.width)(rng),
                         std::uniform_int_distribution<int>(-10, 250 - spec.target_size.height)(rng)};
      const Detection d = t.detect(IntegralImage(probe), center, cfg.r_c, 1);
      const auto& s = t.state();
      double best = -1e300;
      for (const Point& p : oracle::lattice({center, 0.0, cfg.r_c, 1}, spec.target_size, {320, 240})) {
        double h = 0.0;
        for (std::size_t idx : s.selected) {
          const double v = oracle::feature_value(probe, p, s.pool, idx);
          const auto& g = s.classifier.params[idx];
          h += oracle::log_normal_pdf(v, g.mu1, g.sigma1) - oracle::log_normal_pdf(v, g.mu0, g.sigma0);
        }
        best = std::max(best, h);
      }
      agree += std::abs(d.score - best) <= 1e-9 * std::max(1.0, std::abs(best)) ? 1 : 0;
    }
    return Outcome{agree == 50, fmt("%g/50 states agree with exhaustive re-scoring", agree)};
  });

  double fps = 0.0;
  report(8, "synthetic tracking", 60.0, [&] {
    const auto seq = generate_synthetic(easy_sequence());
    const auto r = run_ope(TrackerConfig{}, seq.frames, seq.truth);
    fps = r.summary.fps;
    return Outcome{r.summary.mean_cle <= 5.0 && r.summary.success_rate >= 0.9,
                   fmt("mean CLE %.3f px (<=5), success %.3f (>=0.9)", r.summary.mean_cle, r.summary.success_rate)};
  });

  report(9, "occlusion robustness", 60.0, [] {
    const OcclusionRun r = occlusion_run(1);
    const double after = r.reacquired_after == SIZE_MAX ? -1.0 : static_cast<double>(r.reacquired_after);
    return Outcome{occlusion_ok(r), fmt("reacquired %g frames after (<5), success gated %.3f (>=0.8) ungated %.3f "
                                        "(<= gated+0.05)",
                                        after, r.sr_gated, r.sr_ungated)};
  });

  report(10, "throughput", 0.0, [&] { return Outcome{fps >= 10.0, fmt("%.1f frames/s (>=10)", fps)}; });

  report(11, "benchmark tables", 30.0, [] {
    // Benchmark-table reproduction needs third-party datasets and trackers;
    // what is checked here is end-to-end determinism of a fixed-seed run.
    const auto seq = generate_synthetic(easy_sequence(3));
    const auto serialize = [&] {
      const auto r = run_ope(TrackerConfig{}, seq.frames, seq.truth);
      std::vector<BoundingBox> boxes;
      for (const auto& f : r.frames) boxes.push_back(f.tracked);
      std::ostringstream out;
      io::write_track_results(out, boxes);
      return out.str();
    };
    const bool same = serialize() == serialize();
    return Outcome{same, std::string("per-sequence benchmark tables not reproducible without the benchmark "
                                     "datasets; fixed-seed results byte-identical: ") +
                             (same ? "yes" : "no")};
  });

  // Not a criterion: how the occlusion scenario fares on other sequence seeds.
  int ok = 0;
  std::string seeds;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const bool pass = occlusion_ok(occlusion_run(seed));
    ok += pass ? 1 : 0;
    seeds += pass ? "+" : "-";
  }
  std::printf("INFO occlusion scenario across sequence seeds 1-6: %d/6 meet criterion 9 [%s]\n", ok, seeds.c_str());

  std::printf("%s: %d criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
