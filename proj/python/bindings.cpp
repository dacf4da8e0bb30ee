#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "sctrack/error.hpp"
#include "sctrack/evaluation.hpp"
#include "sctrack/io.hpp"
#include "sctrack/synthetic.hpp"
#include "sctrack/tracker.hpp"

namespace py = pybind11;
using namespace sctrack;

namespace {

using Image = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Frame to_frame(const Image& img, int index = 0) {
  if (img.ndim() != 2) throw InvalidInput("frames must be 2-D uint8 arrays (height, width)");
  const int h = static_cast<int>(img.shape(0));
  const int w = static_cast<int>(img.shape(1));
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
  if (!pixels.empty()) std::memcpy(pixels.data(), img.data(), pixels.size());
  return Frame(w, h, std::move(pixels), index);
}

Image to_array(const Frame& f) {
  Image out({f.height, f.width});
  std::memcpy(out.mutable_data(), f.pixels.data(), f.pixels.size());
  return out;
}

py::dict diagnostics_dict(const FrameDiagnostics& d) {
  py::dict out;
  out["frame_index"] = d.frame_index;
  out["position"] = d.position;
  out["coarse_score"] = d.coarse_score;
  out["fine_score"] = d.fine_score;
  out["coarse_candidates"] = d.coarse_candidates;
  out["fine_candidates"] = d.fine_candidates;
  out["positives"] = d.positives;
  out["negatives"] = d.negatives;
  out["occluded"] = d.occluded;
  out["gating_applied"] = d.gating_applied;
  return out;
}

py::dict summary_dict(const Summary& s) {
  py::dict out;
  out["frames"] = s.frames;
  out["mean_cle"] = s.mean_cle;
  out["success_rate"] = s.success_rate;
  out["precision_20"] = s.precision_20;
  out["auc"] = s.auc;
  out["fps"] = s.fps;
  out["lost_at"] = s.lost_at;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sub-region compressive tracker";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<InvalidConfig>(m, "InvalidConfig", error.ptr());
  py::register_exception<OutOfBounds>(m, "OutOfBounds", error.ptr());
  py::register_exception<TrackingLost>(m, "TrackingLost", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<int, int, int, int>(), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readonly("x", &BoundingBox::x)
      .def_readonly("y", &BoundingBox::y)
      .def_readonly("w", &BoundingBox::w)
      .def_readonly("h", &BoundingBox::h)
      .def_property_readonly("center", [](const BoundingBox& b) { return py::make_tuple(b.center().x, b.center().y); })
      .def(py::self == py::self)
      .def("__iter__", [](const BoundingBox& b) { return py::iter(py::make_tuple(b.x, b.y, b.w, b.h)); })
      .def("__repr__", [](const BoundingBox& b) {
        return "BoundingBox(" + std::to_string(b.x) + ", " + std::to_string(b.y) + ", " + std::to_string(b.w) + ", " +
               std::to_string(b.h) + ")";
      });

  py::class_<TrackerConfig> cfg(m, "TrackerConfig");
  cfg.def(py::init<>())
      .def_readwrite("alpha", &TrackerConfig::alpha)
      .def_readwrite("delta", &TrackerConfig::delta)
      .def_readwrite("beta", &TrackerConfig::beta)
      .def_readwrite("n_negatives", &TrackerConfig::n_negatives)
      .def_readwrite("n_s", &TrackerConfig::n_s)
      .def_readwrite("lambda_", &TrackerConfig::lambda)
      .def_readwrite("m_features", &TrackerConfig::m_features)
      .def_readwrite("k_selected", &TrackerConfig::k_selected)
      .def_readwrite("r_c", &TrackerConfig::r_c)
      .def_readwrite("omega_c", &TrackerConfig::omega_c)
      .def_readwrite("r_f", &TrackerConfig::r_f)
      .def_readwrite("omega_f", &TrackerConfig::omega_f)
      .def_readwrite("subregion_fraction", &TrackerConfig::subregion_fraction)
      .def_readwrite("beta_min", &TrackerConfig::beta_min)
      .def_readwrite("beta_max", &TrackerConfig::beta_max)
      .def_readwrite("w_min", &TrackerConfig::w_min)
      .def_readwrite("h_min", &TrackerConfig::h_min)
      .def_readwrite("sigma_floor", &TrackerConfig::sigma_floor)
      .def_readwrite("occlusion_threshold", &TrackerConfig::occlusion_threshold)
      .def_readwrite("occlusion_gating", &TrackerConfig::occlusion_gating)
      .def_readwrite("rng_seed", &TrackerConfig::rng_seed)
      .def("validate", &TrackerConfig::validate)
      .def(py::self == py::self)
      .def_static(
          "load", [](const std::string& path) { return io::load_config(path); }, py::arg("path"));

  py::class_<Tracker>(m, "Tracker")
      .def(py::init([](const Image& frame, const BoundingBox& box, const TrackerConfig& config) {
             return Tracker(to_frame(frame), box, config);
           }),
           py::arg("frame"), py::arg("box"), py::arg("config") = TrackerConfig{})
      .def(
          "track",
          [](Tracker& t, const Image& frame) {
            const int next = t.state().frame_index + 1;
            const TrackResult r = t.track(to_frame(frame, next));
            return py::make_tuple(r.box, diagnostics_dict(r.diagnostics));
          },
          py::arg("frame"), "Advance one frame; returns (box, diagnostics).")
      .def_property_readonly("position", &Tracker::position)
      .def_property_readonly("selected", [](const Tracker& t) { return t.state().selected; });

  m.def("cle", &cle, py::arg("tracked"), py::arg("truth"));
  m.def("overlap", &overlap, py::arg("tracked"), py::arg("truth"));

  m.def(
      "generate_synthetic",
      [](std::size_t frames, std::uint64_t seed, double max_displacement, double gain_start, double gain_end,
         double noise_sigma, int width, int height, int target_width, int target_height) {
        SyntheticSpec spec;
        spec.frames = frames;
        spec.seed = seed;
        spec.max_displacement = max_displacement;
        spec.gain_start = gain_start;
        spec.gain_end = gain_end;
        spec.noise_sigma = noise_sigma;
        spec.frame_size = {width, height};
        spec.target_size = {target_width, target_height};
        const SyntheticSequence seq = generate_synthetic(spec);
        py::list images;
        for (const Frame& f : seq.frames) images.append(to_array(f));
        return py::make_tuple(images, seq.truth);
      },
      py::arg("frames") = 100, py::arg("seed") = 1, py::arg("max_displacement") = 6.0, py::arg("gain_start") = 1.0,
      py::arg("gain_end") = 1.0, py::arg("noise_sigma") = 0.0, py::arg("width") = 320, py::arg("height") = 240,
      py::arg("target_width") = 40, py::arg("target_height") = 40,
      "Returns (frames, truth): a list of uint8 arrays and a list of boxes.");

  m.def(
      "run_ope",
      [](const TrackerConfig& config, const std::vector<Image>& frames, const std::vector<BoundingBox>& truth) {
        std::vector<Frame> fs;
        fs.reserve(frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i) fs.push_back(to_frame(frames[i], static_cast<int>(i)));
        const OpeResult r = run_ope(config, fs, truth);
        py::list tracked;
        for (const FrameResult& f : r.frames) tracked.append(f.tracked);
        return py::make_tuple(tracked, summary_dict(r.summary));
      },
      py::arg("config"), py::arg("frames"), py::arg("truth"), "Returns (tracked boxes, summary dict).");
}
