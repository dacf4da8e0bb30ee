// Command-line front end: track a sequence, score results against ground
// truth, or render a synthetic test sequence.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sctrack/error.hpp"
#include "sctrack/evaluation.hpp"
#include "sctrack/io.hpp"
#include "sctrack/synthetic.hpp"
#include "sctrack/tracker.hpp"

namespace fs = std::filesystem;
using namespace sctrack;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kLost = 3,
};

struct TrackArgs {
  std::string seq;
  std::string gt;
  std::string init_box;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct EvalArgs {
  std::string results;
  std::string gt;
  std::string out;
};

struct SynthArgs {
  std::string spec;
  std::string out;
};

fs::path with_suffix(const fs::path& report, const std::string& suffix) {
  fs::path p = report;
  p.replace_extension();
  p += suffix;
  return p;
}

int run_track(const TrackArgs& args) {
  if (args.gt.empty() == args.init_box.empty()) {
    std::cerr << "track: give exactly one of --gt or --init-box\n";
    return kUsage;
  }
  TrackerConfig config;
  try {
    if (!args.config.empty()) config = io::load_config(args.config);
    if (const char* env = std::getenv("TRACKER_SEED")) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        config.rng_seed = v;
      } catch (const std::exception&) {
        std::cerr << "track: TRACKER_SEED must be a non-negative integer\n";
        return kUsage;
      }
    }
    if (args.seed) config.rng_seed = *args.seed;
  } catch (const IoError& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kUsage;
  }

  std::vector<fs::path> files;
  BoundingBox init;
  try {
    files = io::list_sequence(args.seq);
    if (files.empty()) throw IoError("no images found in " + args.seq);
    if (!args.gt.empty()) {
      const auto gt = io::read_ground_truth(args.gt);
      if (gt.empty()) throw InvalidInput("ground truth file " + args.gt + " is empty");
      init = gt.front();
    } else {
      init = io::parse_box(args.init_box);
    }
  } catch (const IoError& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kUsage;
  }

  std::vector<BoundingBox> boxes;
  boxes.reserve(files.size());
  bool lost = false;
  double busy = 0.0;
  try {
    const Frame first = io::read_image(files[0], 0);
    auto start = std::chrono::steady_clock::now();
    Tracker tracker(first, init, config);
    busy += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    boxes.push_back(tracker.position());
    for (std::size_t i = 1; i < files.size(); ++i) {
      const Frame frame = io::read_image(files[i], static_cast<int>(i));
      start = std::chrono::steady_clock::now();
      try {
        boxes.push_back(tracker.track(frame).box);
      } catch (const TrackingLost& e) {
        std::cerr << "track: target lost at frame " << i + 1 << ": " << e.what() << '\n';
        lost = true;
        break;
      }
      busy += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  } catch (const IoError& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kUsage;
  }

  try {
    io::write_file_atomic(args.out, [&](std::ostream& out) { io::write_track_results(out, boxes); });
  } catch (const Error& e) {
    std::cerr << "track: " << e.what() << '\n';
    return kIo;
  }
  const double fps = static_cast<double>(boxes.size()) / std::max(busy, 1e-9);
  std::cout << "frames: " << boxes.size() << "\nfps: " << fps << '\n';
  if (lost) {
    std::cout << "note: results truncated at tracking loss\n";
    return kLost;
  }
  return kOk;
}

int run_eval(const EvalArgs& args) {
  try {
    const auto results = io::read_track_results(args.results);
    const auto gt = io::read_ground_truth(args.gt);
    if (results.size() != gt.size()) {
      std::cerr << "eval: results have " << results.size() << " frames but ground truth has " << gt.size() << '\n';
      return kUsage;
    }
    if (results.empty()) {
      std::cerr << "eval: no frames to evaluate\n";
      return kUsage;
    }
    std::vector<FrameResult> frames;
    frames.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      frames.push_back(score_frame(static_cast<int>(i), results[i], gt[i]));
    }
    const Summary summary = summarize(frames);
    const auto precision = precision_curve(frames);
    const auto success = success_curve(frames);
    const fs::path out(args.out);
    io::write_file_atomic(out, [&](std::ostream& o) { io::write_summary(o, summary); });
    io::write_file_atomic(with_suffix(out, ".precision.csv"),
                          [&](std::ostream& o) { io::write_precision_curve(o, precision); });
    io::write_file_atomic(with_suffix(out, ".success.csv"),
                          [&](std::ostream& o) { io::write_success_curve(o, success); });
    io::write_file_atomic(with_suffix(out, ".frames.csv"), [&](std::ostream& o) { io::write_frame_results(o, frames); });
    std::cout << "mean_cle: " << summary.mean_cle << "\nsuccess_rate: " << summary.success_rate
              << "\nprecision_20: " << summary.precision_20 << "\nauc: " << summary.auc << '\n';
  } catch (const IoError& e) {
    std::cerr << "eval: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "eval: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

int run_synth(const SynthArgs& args) {
  try {
    const SyntheticSpec spec = io::load_synthetic_spec(args.spec);
    const SyntheticSequence seq = generate_synthetic(spec);
    io::write_sequence(args.out, seq);
    std::cout << "wrote " << seq.frames.size() << " frames to " << args.out << '\n';
  } catch (const IoError& e) {
    std::cerr << "synth: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "synth: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-region compressive tracker"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "Track a target through an image sequence");
  track_cmd->add_option("--seq", track.seq, "Directory of numbered PGM/PPM frames")->required();
  auto* gt_opt = track_cmd->add_option("--gt", track.gt, "Ground-truth file; the first box initializes the tracker");
  auto* box_opt = track_cmd->add_option("--init-box", track.init_box, "Initial box x,y,w,h (1-indexed)");
  gt_opt->excludes(box_opt);
  track_cmd->add_option("--config", track.config, "key = value configuration file");
  track_cmd->add_option("--out", track.out, "Results file (frame,x,y,w,h)")->required();
  track_cmd->add_option("--seed", track.seed, "RNG seed; overrides config and TRACKER_SEED");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score tracker results against ground truth");
  eval_cmd->add_option("--results", eval.results, "Results file from `track`")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth file")->required();
  eval_cmd->add_option("--out", eval.out, "Summary report; curves are written next to it")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic sequence with exact ground truth");
  synth_cmd->add_option("--spec", synth.spec, "Synthetic sequence description")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*track_cmd) return run_track(track);
  if (*eval_cmd) return run_eval(eval);
  return run_synth(synth);
}
