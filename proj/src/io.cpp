#include "sctrack/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "sctrack/error.hpp"

namespace sctrack::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == '\t' || c == ' ' || c == ';') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool parse_numbers(const std::string& line, std::vector<double>& out) {
  out.clear();
  for (const std::string& f : split_fields(line)) {
    double v = 0.0;
    if (!parse_number(f, v)) return false;
    out.push_back(v);
  }
  return true;
}

BoundingBox box_from_one_indexed(double x, double y, double w, double h, const std::string& where) {
  const long iw = std::lround(w);
  const long ih = std::lround(h);
  if (iw < 1 || ih < 1) {
    throw InvalidInput(where + ": box width and height must be >= 1");
  }
  return {static_cast<int>(std::lround(x)) - 1, static_cast<int>(std::lround(y)) - 1, static_cast<int>(iw),
          static_cast<int>(ih)};
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

// ---- PNM ----

int read_header_int(std::istream& in, const fs::path& path) {
  int c = in.peek();
  while (c != EOF) {
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string skip;
      std::getline(in, skip);
    } else {
      break;
    }
    c = in.peek();
  }
  int v = 0;
  if (!(in >> v) || v < 0) {
    throw IoError(path.string() + ": malformed image header");
  }
  return v;
}

}  // namespace

Frame read_image(const fs::path& path, int index) {
  std::ifstream in = open_input(path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '2' && magic[1] != '6')) {
    throw IoError(path.string() + ": unsupported image format (expected P2, P5 or P6)");
  }
  const int width = read_header_int(in, path);
  const int height = read_header_int(in, path);
  const int maxval = read_header_int(in, path);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 255) {
    throw IoError(path.string() + ": unsupported image dimensions or depth");
  }
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> pixels(n);
  const auto scale = [maxval](int v) {
    return static_cast<std::uint8_t>(maxval == 255 ? v : std::lround(255.0 * v / maxval));
  };
  if (magic[1] == '2') {
    for (std::size_t i = 0; i < n; ++i) {
      int v = 0;
      if (!(in >> v) || v > maxval || v < 0) throw IoError(path.string() + ": truncated pixel data");
      pixels[i] = scale(v);
    }
  } else {
    in.get();  // single whitespace after maxval
    const std::size_t channels = magic[1] == '6' ? 3 : 1;
    std::vector<unsigned char> raw(n * channels);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw IoError(path.string() + ": truncated pixel data");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (channels == 1) {
        pixels[i] = scale(raw[i]);
      } else {
        const double y = 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
        pixels[i] = scale(static_cast<int>(std::lround(y)));
      }
    }
  }
  return Frame(width, height, std::move(pixels), index);
}

void write_pgm(std::ostream& out, const Frame& frame) {
  out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()), static_cast<std::streamsize>(frame.pixels.size()));
}

std::vector<fs::path> list_sequence(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("sequence directory " + dir.string() + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower(entry.path().extension().string());
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<BoundingBox> parse_ground_truth(std::istream& in) {
  std::vector<BoundingBox> boxes;
  std::string line;
  std::vector<double> v;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!parse_numbers(line, v) || v.size() != 4) {
      throw InvalidInput("ground truth line " + std::to_string(lineno) + ": expected four numbers x,y,w,h");
    }
    boxes.push_back(box_from_one_indexed(v[0], v[1], v[2], v[3], "ground truth line " + std::to_string(lineno)));
  }
  return boxes;
}

std::vector<BoundingBox> read_ground_truth(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_ground_truth(in);
}

void write_ground_truth(std::ostream& out, const std::vector<BoundingBox>& boxes) {
  for (const BoundingBox& b : boxes) {
    out << b.x + 1 << ',' << b.y + 1 << ',' << b.w << ',' << b.h << '\n';
  }
}

BoundingBox parse_box(const std::string& text) {
  std::vector<double> v;
  if (!parse_numbers(text, v) || v.size() != 4) {
    throw InvalidInput("box '" + text + "' must be x,y,w,h");
  }
  return box_from_one_indexed(v[0], v[1], v[2], v[3], "box '" + text + "'");
}

void write_track_results(std::ostream& out, const std::vector<BoundingBox>& boxes) {
  out << "frame,x,y,w,h\n";
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const BoundingBox& b = boxes[i];
    out << i + 1 << ',' << b.x + 1 << ',' << b.y + 1 << ',' << b.w << ',' << b.h << '\n';
  }
}

std::vector<BoundingBox> parse_track_results(std::istream& in) {
  std::vector<BoundingBox> boxes;
  std::string line;
  std::vector<double> v;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!parse_numbers(line, v)) {
      if (lineno == 1) continue;  // header
      throw InvalidInput("results line " + std::to_string(lineno) + ": not numeric");
    }
    if (v.size() != 5) {
      throw InvalidInput("results line " + std::to_string(lineno) + ": expected frame,x,y,w,h");
    }
    boxes.push_back(box_from_one_indexed(v[1], v[2], v[3], v[4], "results line " + std::to_string(lineno)));
  }
  return boxes;
}

std::vector<BoundingBox> read_track_results(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_track_results(in);
}

void write_frame_results(std::ostream& out, const std::vector<FrameResult>& results) {
  out << "frame,x,y,w,h,gt_x,gt_y,gt_w,gt_h,cle,overlap\n";
  for (const FrameResult& r : results) {
    out << r.frame + 1 << ',' << r.tracked.x + 1 << ',' << r.tracked.y + 1 << ',' << r.tracked.w << ','
        << r.tracked.h << ',' << r.truth.x + 1 << ',' << r.truth.y + 1 << ',' << r.truth.w << ',' << r.truth.h << ','
        << format_double(r.cle) << ',' << format_double(r.overlap) << '\n';
  }
}

void write_summary(std::ostream& out, const Summary& s) {
  out << "frames,mean_cle,success_rate,precision_20,auc\n";
  out << s.frames << ',' << format_double(s.mean_cle) << ',' << format_double(s.success_rate) << ','
      << format_double(s.precision_20) << ',' << format_double(s.auc) << '\n';
}

void write_precision_curve(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "threshold,precision\n";
  for (const CurvePoint& p : curve) out << format_double(p.threshold) << ',' << format_double(p.value) << '\n';
}

void write_success_curve(std::ostream& out, const SuccessCurve& curve) {
  out << "threshold,success\n";
  for (const CurvePoint& p : curve.points) out << format_double(p.threshold) << ',' << format_double(p.value) << '\n';
}

// ---- key = value ----

namespace {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& what) {
  std::vector<KeyValue> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig(what + " line " + std::to_string(lineno) + ": expected key = value");
    }
    out.push_back({trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), lineno});
  }
  return out;
}

template <typename T>
T value_as(const KeyValue& kv, const std::string& what) {
  T v{};
  if constexpr (std::is_same_v<T, bool>) {
    const std::string s = lower(kv.value);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  } else if (parse_number(kv.value, v)) {
    return v;
  }
  throw InvalidConfig(what + " line " + std::to_string(kv.line) + ": bad value '" + kv.value + "' for " + kv.key);
}

template <typename T>
std::string value_text(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_floating_point_v<T>) {
    return format_double(v);
  } else {
    return std::to_string(v);
  }
}

struct ConfigField {
  std::string name;
  std::function<void(TrackerConfig&, const KeyValue&)> set;
  std::function<std::string(const TrackerConfig&)> get;
};

template <typename T>
ConfigField field(const char* name, T TrackerConfig::*member) {
  return {name, [member](TrackerConfig& c, const KeyValue& kv) { c.*member = value_as<T>(kv, "config"); },
          [member](const TrackerConfig& c) { return value_text(c.*member); }};
}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      field("alpha", &TrackerConfig::alpha),
      field("delta", &TrackerConfig::delta),
      field("beta", &TrackerConfig::beta),
      field("n_negatives", &TrackerConfig::n_negatives),
      field("n_s", &TrackerConfig::n_s),
      field("lambda", &TrackerConfig::lambda),
      field("m_features", &TrackerConfig::m_features),
      field("k_selected", &TrackerConfig::k_selected),
      field("r_c", &TrackerConfig::r_c),
      field("omega_c", &TrackerConfig::omega_c),
      field("r_f", &TrackerConfig::r_f),
      field("omega_f", &TrackerConfig::omega_f),
      field("subregion_fraction", &TrackerConfig::subregion_fraction),
      field("beta_min", &TrackerConfig::beta_min),
      field("beta_max", &TrackerConfig::beta_max),
      field("w_min", &TrackerConfig::w_min),
      field("h_min", &TrackerConfig::h_min),
      field("sigma_floor", &TrackerConfig::sigma_floor),
      field("occlusion_threshold", &TrackerConfig::occlusion_threshold),
      field("occlusion_gating", &TrackerConfig::occlusion_gating),
      field("rng_seed", &TrackerConfig::rng_seed),
  };
  return fields;
}

}  // namespace

TrackerConfig parse_config(std::istream& in) {
  TrackerConfig config;
  for (const KeyValue& kv : parse_key_values(in, "config")) {
    const auto& fields = config_fields();
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const ConfigField& f) { return f.name == kv.key; });
    if (it == fields.end()) {
      throw InvalidConfig("config line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
    it->set(config, kv);
  }
  config.validate();
  return config;
}

TrackerConfig load_config(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_config(in);
}

void save_config(std::ostream& out, const TrackerConfig& config) {
  for (const ConfigField& f : config_fields()) {
    out << f.name << " = " << f.get(config) << '\n';
  }
}

SyntheticSpec parse_synthetic_spec(std::istream& in) {
  SyntheticSpec spec;
  std::optional<int> start_x;
  std::optional<int> start_y;
  const std::string what = "synthetic spec";
  for (const KeyValue& kv : parse_key_values(in, what)) {
    const std::string& k = kv.key;
    if (k == "frame_width") spec.frame_size.width = value_as<int>(kv, what);
    else if (k == "frame_height") spec.frame_size.height = value_as<int>(kv, what);
    else if (k == "target_width") spec.target_size.width = value_as<int>(kv, what);
    else if (k == "target_height") spec.target_size.height = value_as<int>(kv, what);
    else if (k == "frames") spec.frames = value_as<std::size_t>(kv, what);
    else if (k == "max_displacement") spec.max_displacement = value_as<double>(kv, what);
    else if (k == "seed") spec.seed = value_as<std::uint64_t>(kv, what);
    else if (k == "start_x") start_x = value_as<int>(kv, what);
    else if (k == "start_y") start_y = value_as<int>(kv, what);
    else if (k == "gain_start") spec.gain_start = value_as<double>(kv, what);
    else if (k == "gain_end") spec.gain_end = value_as<double>(kv, what);
    else if (k == "noise_sigma") spec.noise_sigma = value_as<double>(kv, what);
    else if (k == "texture_cell") spec.texture_cell = value_as<int>(kv, what);
    else if (k == "occlusion") {
      std::vector<double> v;
      if (!parse_numbers(kv.value, v) || v.size() != 7 || v[0] < 0 || v[1] < 0 || v[6] < 0 || v[6] > 255 ||
          v[4] < 1 || v[5] < 1) {
        throw InvalidInput(what + " line " + std::to_string(kv.line) +
                           ": occlusion must be first,last,x,y,w,h,fill");
      }
      OcclusionEvent e;
      e.first_frame = static_cast<std::size_t>(v[0]);
      e.last_frame = static_cast<std::size_t>(v[1]);
      e.region = BoundingBox(static_cast<int>(v[2]), static_cast<int>(v[3]), static_cast<int>(v[4]),
                             static_cast<int>(v[5]));
      e.fill = static_cast<std::uint8_t>(v[6]);
      spec.occlusions.push_back(e);
    } else {
      throw InvalidInput(what + " line " + std::to_string(kv.line) + ": unknown key '" + k + "'");
    }
  }
  if (start_x.has_value() != start_y.has_value()) {
    throw InvalidInput(what + ": start_x and start_y must be given together");
  }
  if (start_x) spec.start = Point{*start_x, *start_y};
  validate(spec);
  return spec;
}

SyntheticSpec load_synthetic_spec(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_synthetic_spec(in);
}

void save_synthetic_spec(std::ostream& out, const SyntheticSpec& spec) {
  out << "frame_width = " << spec.frame_size.width << '\n'
      << "frame_height = " << spec.frame_size.height << '\n'
      << "target_width = " << spec.target_size.width << '\n'
      << "target_height = " << spec.target_size.height << '\n'
      << "frames = " << spec.frames << '\n'
      << "max_displacement = " << format_double(spec.max_displacement) << '\n'
      << "seed = " << spec.seed << '\n';
  if (spec.start) out << "start_x = " << spec.start->x << "\nstart_y = " << spec.start->y << '\n';
  out << "gain_start = " << format_double(spec.gain_start) << '\n'
      << "gain_end = " << format_double(spec.gain_end) << '\n'
      << "noise_sigma = " << format_double(spec.noise_sigma) << '\n'
      << "texture_cell = " << spec.texture_cell << '\n';
  for (const OcclusionEvent& e : spec.occlusions) {
    out << "occlusion = " << e.first_frame << ',' << e.last_frame << ',' << e.region.x << ',' << e.region.y << ','
        << e.region.w << ',' << e.region.h << ',' << static_cast<int>(e.fill) << '\n';
  }
}

// ---- atomic output ----

namespace {

fs::path temp_sibling(const fs::path& path) {
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  return tmp;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  const fs::path tmp = temp_sibling(path);
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + path.string());
      body(out);
      out.flush();
      if (!out) throw IoError("write failed for " + path.string());
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

void write_sequence(const fs::path& dir, const SyntheticSequence& seq) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !(fs::is_directory(dir, ec) && fs::is_empty(dir, ec))) {
    throw IoError("output directory " + dir.string() + " exists and is not empty");
  }
  const fs::path tmp = temp_sibling(dir);
  try {
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const std::size_t digits = std::max<std::size_t>(4, std::to_string(seq.frames.size()).size());
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
      std::string name = std::to_string(i + 1);
      name.insert(0, digits - name.size(), '0');
      std::ofstream out(tmp / (name + ".pgm"), std::ios::binary);
      write_pgm(out, seq.frames[i]);
      if (!out) throw IoError("cannot write frame " + name + " into " + dir.string());
    }
    {
      std::ofstream out(tmp / kGroundTruthName);
      write_ground_truth(out, seq.truth);
      if (!out) throw IoError("cannot write ground truth into " + dir.string());
    }
    if (fs::exists(dir)) fs::remove(dir);
    fs::rename(tmp, dir);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(tmp, ec);
    throw IoError(e.what());
  } catch (...) {
    fs::remove_all(tmp, ec);
    throw;
  }
}

}  // namespace sctrack::io
