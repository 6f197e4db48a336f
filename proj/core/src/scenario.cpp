#include "fvmoor/io/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace fvmoor {

namespace {

std::string location(const YAML::Mark& m) {
  if (m.is_null()) return "";
  std::ostringstream os;
  os << "line " << m.line + 1 << ", column " << m.column + 1 << ": ";
  return os.str();
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& what) {
  throw ValidationError(location(n.Mark()) + path + ": " + what);
}

// A mapping node with its dotted path, tracking which keys were consumed.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (!node_.IsMap()) fail(node_, path_, "expected a mapping");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  Section section(const std::string& key) { return Section(require(key), sub(key)); }

  double number(const std::string& key) { return as_double(require(key), sub(key)); }
  double number(const std::string& key, double fallback) {
    return has(key) ? as_double(raw(key), sub(key)) : fallback;
  }
  std::optional<double> maybe_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return as_double(raw(key), sub(key));
  }
  double positive(const std::string& key) {
    const YAML::Node n = require(key);
    const double v = as_double(n, sub(key));
    if (!(v > 0.0)) fail(n, sub(key), "must be positive");
    return v;
  }
  double positive(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = raw(key);
    const double v = as_double(n, sub(key));
    if (!(v > 0.0)) fail(n, sub(key), "must be positive");
    return v;
  }
  double non_negative(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = raw(key);
    const double v = as_double(n, sub(key));
    if (!(v >= 0.0)) fail(n, sub(key), "must be >= 0");
    return v;
  }
  int integer(const std::string& key, int fallback, int minimum) {
    if (!has(key)) return fallback;
    const YAML::Node n = raw(key);
    int v = 0;
    try {
      v = n.as<int>();
    } catch (const YAML::Exception&) {
      fail(n, sub(key), "expected an integer");
    }
    if (v < minimum) fail(n, sub(key), "must be >= " + std::to_string(minimum));
    return v;
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = raw(key);
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(n, sub(key), "expected true or false");
    }
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const YAML::Node n = raw(key);
    if (!n.IsScalar()) fail(n, sub(key), "expected a string");
    return n.Scalar();
  }
  template <std::size_t N>
  std::array<double, N> vector(const std::string& key) {
    return as_array<N>(require(key), sub(key));
  }
  template <std::size_t N>
  std::array<double, N> vector(const std::string& key, const std::array<double, N>& fallback) {
    return has(key) ? as_array<N>(raw(key), sub(key)) : fallback;
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) fail(kv.first, path_, "unknown key '" + key + "'");
    }
  }

 private:
  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  YAML::Node require(const std::string& key) {
    if (!has(key)) fail(node_, sub(key), "missing required field");
    return raw(key);
  }

  static double as_double(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) fail(n, path, "expected a number");
    const std::string& s = n.Scalar();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
      fail(n, path, "expected a finite number, got '" + s + "'");
    }
    return v;
  }

  template <std::size_t N>
  static std::array<double, N> as_array(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence() || n.size() != N) {
      fail(n, path, "expected a list of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = as_double(n[i], path);
    return out;
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

BodySpec parse_body(Section s) {
  BodySpec b;
  b.mass = s.positive("mass");
  b.centre_of_gravity = s.vector<3>("centre_of_gravity");
  b.inertia = s.vector<3>("inertia");
  b.dimensions = s.vector<3>("dimensions");
  b.draft = s.positive("draft");
  b.added_mass = s.vector<6>("added_mass", b.added_mass);
  b.initial_offset = s.vector<6>("initial_offset", b.initial_offset);
  b.equilibrate = s.boolean("equilibrate", b.equilibrate);
  s.finish();
  return b;
}

LineSpec parse_line(Section s, std::size_t index) {
  LineSpec l;
  l.name = s.text("name", "line" + std::to_string(index + 1));
  l.anchor = s.vector<3>("anchor");
  l.fairlead = s.vector<3>("fairlead");
  l.length = s.positive("length");
  l.diameter = s.positive("diameter");
  l.axial_stiffness = s.positive("axial_stiffness");
  if (s.has("shear_stiffness")) l.shear_stiffness = s.positive("shear_stiffness");
  if (s.has("bending_stiffness")) l.bending_stiffness = s.positive("bending_stiffness");
  if (s.has("torsional_stiffness")) l.torsional_stiffness = s.positive("torsional_stiffness");
  l.mass_per_length = s.positive("mass_per_length");
  l.cells = s.integer("cells", l.cells, 2);
  s.finish();
  return l;
}

EnvironmentSpec parse_environment(Section s) {
  EnvironmentSpec e;
  e.fluid_density = s.non_negative("fluid_density", e.fluid_density);
  e.gravity = s.vector<3>("gravity", e.gravity);
  e.water_depth = s.positive("water_depth", e.water_depth);
  e.seabed_elevation = s.maybe_number("seabed_elevation");
  e.seabed_stiffness = s.non_negative("seabed_stiffness", e.seabed_stiffness);
  e.seabed_damping = s.non_negative("seabed_damping", e.seabed_damping);
  e.seabed_tangential_stiffness =
      s.non_negative("seabed_tangential_stiffness", e.seabed_tangential_stiffness);
  e.friction_coefficient = s.non_negative("friction_coefficient", e.friction_coefficient);
  e.drag_normal = s.non_negative("drag_normal", e.drag_normal);
  e.drag_tangential = s.non_negative("drag_tangential", e.drag_tangential);
  e.added_mass_normal = s.non_negative("added_mass_normal", e.added_mass_normal);
  e.added_mass_tangential = s.non_negative("added_mass_tangential", e.added_mass_tangential);
  e.wave_kinematics_on_lines = s.boolean("wave_kinematics_on_lines", e.wave_kinematics_on_lines);
  s.finish();
  return e;
}

WaveSpec parse_wave(Section s) {
  WaveSpec w;
  w.height = s.non_negative("height", w.height);
  w.period = s.positive("period");
  w.phase = s.number("phase", w.phase);
  if (s.has("ramp")) w.ramp = s.non_negative("ramp", 0.0);
  s.finish();
  return w;
}

MotionSpec parse_motion(Section s) {
  MotionSpec m;
  m.amplitude = s.vector<6>("amplitude", m.amplitude);
  m.frequency = s.positive("frequency", m.frequency);
  m.phase = s.vector<6>("phase", m.phase);
  m.ramp = s.non_negative("ramp", m.ramp);
  s.finish();
  return m;
}

HydroSpec parse_hydro(Section s) {
  HydroSpec h;
  h.panels = s.integer("panels", h.panels, 1);
  h.damping = s.vector<6>("damping", h.damping);
  s.finish();
  return h;
}

CouplingSpec parse_coupling(Section s) {
  CouplingSpec c;
  if (s.has("mode")) {
    const YAML::Node n = s.raw("mode");
    try {
      c.mode = forcing_mode_from_string(n.IsScalar() ? n.Scalar() : std::string());
    } catch (const ValidationError& e) {
      fail(n, s.path() + ".mode", e.what());
    }
  }
  c.dt = s.positive("dt", c.dt);
  c.adaptive_dt = s.boolean("adaptive_dt", c.adaptive_dt);
  c.max_fairlead_travel = s.positive("max_fairlead_travel", c.max_fairlead_travel);
  c.min_dt = s.positive("min_dt", c.min_dt);
  c.outer_iterations = s.integer("outer_iterations", c.outer_iterations, 1);
  c.relax = s.positive("relax", c.relax);
  c.end_time = s.non_negative("end_time", c.end_time);
  c.newton_tolerance = s.positive("newton_tolerance", c.newton_tolerance);
  c.newton_max_iterations = s.integer("newton_max_iterations", c.newton_max_iterations, 1);
  s.finish();
  return c;
}

OutputSpec parse_output(Section s) {
  OutputSpec o;
  o.interval = s.positive("interval", o.interval);
  o.body = s.boolean("body", o.body);
  o.tensions = s.boolean("tensions", o.tensions);
  o.wave_elevation = s.boolean("wave_elevation", o.wave_elevation);
  if (s.has("cells")) {
    const YAML::Node list = s.raw("cells");
    if (!list.IsSequence()) fail(list, s.path() + ".cells", "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section c(list[i], s.path() + ".cells[" + std::to_string(i + 1) + "]");
      CellProbe p;
      p.line = c.integer("line", 0, 1);
      p.cell = c.integer("cell", 0, 1);
      if (!c.has("line") || !c.has("cell")) fail(list[i], c.path(), "needs line and cell");
      c.finish();
      o.cells.push_back(p);
    }
  }
  s.finish();
  return o;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  // Keep a decimal marker so the value reads back as a float.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

template <std::size_t N>
std::string fmt(const std::array<double, N>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) s += ", ";
    s += fmt(a[i]);
  }
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Scenario::validate() const {
  if (lines.empty()) throw ValidationError("lines: at least one line is required");
  for (int k = 0; k < 3; ++k) {
    if (!(body.inertia[k] > 0.0)) throw ValidationError("body.inertia: moments must be positive");
    if (!(body.dimensions[k] > 0.0)) throw ValidationError("body.dimensions: must be positive");
  }
  for (double a : body.added_mass) {
    if (a < 0.0) throw ValidationError("body.added_mass: must be >= 0");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const LineSpec& l = lines[i];
    const std::string p = "lines[" + std::to_string(i + 1) + "]";
    if (!names.insert(l.name).second) throw ValidationError(p + ".name: duplicate '" + l.name + "'");
    const Vec3 a(l.anchor[0], l.anchor[1], l.anchor[2]);
    const Vec3 f(l.fairlead[0], l.fairlead[1], l.fairlead[2]);
    if (!((f - a).norm() > 0.0)) throw ValidationError(p + ": anchor and fairlead coincide");
  }
  if (coupling.mode == ForcingMode::kPrescribedMotion && !motion) {
    throw ValidationError("motion: required for prescribed-motion mode");
  }
  if (coupling.min_dt > coupling.dt) throw ValidationError("coupling.min_dt: must not exceed dt");
  if (coupling.relax > 1.0) throw ValidationError("coupling.relax: must be in (0, 1]");
  for (const CellProbe& c : output.cells) {
    if (c.line > static_cast<int>(lines.size())) {
      throw ValidationError("output.cells: line " + std::to_string(c.line) + " does not exist");
    }
    if (c.cell > lines[c.line - 1].cells) {
      throw ValidationError("output.cells: cell " + std::to_string(c.cell) + " beyond line " +
                            std::to_string(c.line));
    }
  }
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ValidationError(location(e.mark) + "malformed scenario: " + e.msg);
  }
  if (!root || root.IsNull()) throw ValidationError("missing section: body");
  Section top(root, "");
  if (!top.has("body")) throw ValidationError(location(root.Mark()) + "missing section: body");
  if (!top.has("lines")) throw ValidationError(location(root.Mark()) + "missing section: lines");
  Scenario s;
  s.name = top.text("name", "");
  s.body = parse_body(top.section("body"));
  const YAML::Node lines = top.raw("lines");
  if (!lines.IsSequence() || lines.size() == 0) fail(lines, "lines", "expected a non-empty list");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    s.lines.push_back(parse_line(Section(lines[i], "lines[" + std::to_string(i + 1) + "]"), i));
  }
  if (top.has("environment")) s.environment = parse_environment(top.section("environment"));
  if (top.has("wave")) s.wave = parse_wave(top.section("wave"));
  if (top.has("motion")) s.motion = parse_motion(top.section("motion"));
  if (top.has("hydro")) s.hydro = parse_hydro(top.section("hydro"));
  if (top.has("coupling")) s.coupling = parse_coupling(top.section("coupling"));
  if (top.has("output")) s.output = parse_output(top.section("output"));
  top.finish();
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream o;
  if (!s.name.empty()) o << "name: " << quoted(s.name) << "\n";
  const BodySpec& b = s.body;
  o << "body:\n"
    << "  mass: " << fmt(b.mass) << "\n"
    << "  centre_of_gravity: " << fmt(b.centre_of_gravity) << "\n"
    << "  inertia: " << fmt(b.inertia) << "\n"
    << "  dimensions: " << fmt(b.dimensions) << "\n"
    << "  draft: " << fmt(b.draft) << "\n"
    << "  added_mass: " << fmt(b.added_mass) << "\n"
    << "  initial_offset: " << fmt(b.initial_offset) << "\n"
    << "  equilibrate: " << (b.equilibrate ? "true" : "false") << "\n";
  o << "lines:\n";
  for (const LineSpec& l : s.lines) {
    o << "  - name: " << quoted(l.name) << "\n"
      << "    anchor: " << fmt(l.anchor) << "\n"
      << "    fairlead: " << fmt(l.fairlead) << "\n"
      << "    length: " << fmt(l.length) << "\n"
      << "    diameter: " << fmt(l.diameter) << "\n"
      << "    axial_stiffness: " << fmt(l.axial_stiffness) << "\n";
    if (l.shear_stiffness) o << "    shear_stiffness: " << fmt(*l.shear_stiffness) << "\n";
    if (l.bending_stiffness) o << "    bending_stiffness: " << fmt(*l.bending_stiffness) << "\n";
    if (l.torsional_stiffness) o << "    torsional_stiffness: " << fmt(*l.torsional_stiffness) << "\n";
    o << "    mass_per_length: " << fmt(l.mass_per_length) << "\n"
      << "    cells: " << l.cells << "\n";
  }
  const EnvironmentSpec& e = s.environment;
  o << "environment:\n"
    << "  fluid_density: " << fmt(e.fluid_density) << "\n"
    << "  gravity: " << fmt(e.gravity) << "\n"
    << "  water_depth: " << fmt(e.water_depth) << "\n";
  if (e.seabed_elevation) o << "  seabed_elevation: " << fmt(*e.seabed_elevation) << "\n";
  o << "  seabed_stiffness: " << fmt(e.seabed_stiffness) << "\n"
    << "  seabed_damping: " << fmt(e.seabed_damping) << "\n"
    << "  seabed_tangential_stiffness: " << fmt(e.seabed_tangential_stiffness) << "\n"
    << "  friction_coefficient: " << fmt(e.friction_coefficient) << "\n"
    << "  drag_normal: " << fmt(e.drag_normal) << "\n"
    << "  drag_tangential: " << fmt(e.drag_tangential) << "\n"
    << "  added_mass_normal: " << fmt(e.added_mass_normal) << "\n"
    << "  added_mass_tangential: " << fmt(e.added_mass_tangential) << "\n"
    << "  wave_kinematics_on_lines: " << (e.wave_kinematics_on_lines ? "true" : "false") << "\n";
  if (s.wave) {
    o << "wave:\n"
      << "  height: " << fmt(s.wave->height) << "\n"
      << "  period: " << fmt(s.wave->period) << "\n"
      << "  phase: " << fmt(s.wave->phase) << "\n";
    if (s.wave->ramp) o << "  ramp: " << fmt(*s.wave->ramp) << "\n";
  }
  if (s.motion) {
    o << "motion:\n"
      << "  amplitude: " << fmt(s.motion->amplitude) << "\n"
      << "  frequency: " << fmt(s.motion->frequency) << "\n"
      << "  phase: " << fmt(s.motion->phase) << "\n"
      << "  ramp: " << fmt(s.motion->ramp) << "\n";
  }
  o << "hydro:\n"
    << "  panels: " << s.hydro.panels << "\n"
    << "  damping: " << fmt(s.hydro.damping) << "\n";
  const CouplingSpec& c = s.coupling;
  o << "coupling:\n"
    << "  mode: " << to_string(c.mode) << "\n"
    << "  dt: " << fmt(c.dt) << "\n"
    << "  adaptive_dt: " << (c.adaptive_dt ? "true" : "false") << "\n"
    << "  max_fairlead_travel: " << fmt(c.max_fairlead_travel) << "\n"
    << "  min_dt: " << fmt(c.min_dt) << "\n"
    << "  outer_iterations: " << c.outer_iterations << "\n"
    << "  relax: " << fmt(c.relax) << "\n"
    << "  end_time: " << fmt(c.end_time) << "\n"
    << "  newton_tolerance: " << fmt(c.newton_tolerance) << "\n"
    << "  newton_max_iterations: " << c.newton_max_iterations << "\n";
  const OutputSpec& out = s.output;
  o << "output:\n"
    << "  interval: " << fmt(out.interval) << "\n"
    << "  body: " << (out.body ? "true" : "false") << "\n"
    << "  tensions: " << (out.tensions ? "true" : "false") << "\n"
    << "  wave_elevation: " << (out.wave_elevation ? "true" : "false") << "\n";
  if (!out.cells.empty()) {
    o << "  cells:\n";
    for (const CellProbe& p : out.cells) {
      o << "    - {line: " << p.line << ", cell: " << p.cell << "}\n";
    }
  }
  return o.str();
}

LoadEnvironment make_environment(const Scenario& s) {
  const EnvironmentSpec& e = s.environment;
  LoadEnvironment env;
  env.fluid_density = e.fluid_density;
  env.gravity = Vec3(e.gravity[0], e.gravity[1], e.gravity[2]);
  env.seabed_elevation = e.seabed_elevation.value_or(-e.water_depth);
  env.seabed_stiffness = e.seabed_stiffness;
  env.seabed_damping = e.seabed_damping;
  env.seabed_tangential_stiffness = e.seabed_tangential_stiffness;
  env.friction_coefficient = e.friction_coefficient;
  env.drag_normal = e.drag_normal;
  env.drag_tangential = e.drag_tangential;
  env.added_mass_normal = e.added_mass_normal;
  env.added_mass_tangential = e.added_mass_tangential;
  env.validate();
  return env;
}

CrossSection make_section(const LineSpec& l) {
  return CrossSection::circular(l.diameter, l.axial_stiffness, l.mass_per_length,
                                l.shear_stiffness, l.bending_stiffness, l.torsional_stiffness);
}

CouplingConfig make_coupling_config(const Scenario& s) {
  const CouplingSpec& c = s.coupling;
  CouplingConfig cfg;
  cfg.mode = c.mode;
  cfg.dt = c.dt;
  cfg.adaptive_dt = c.adaptive_dt;
  cfg.max_fairlead_travel = c.max_fairlead_travel;
  cfg.min_dt = c.min_dt;
  cfg.outer_iterations = c.outer_iterations;
  cfg.relax = c.relax;
  cfg.end_time = c.end_time;
  cfg.newton.tolerance = c.newton_tolerance;
  cfg.newton.max_iterations = c.newton_max_iterations;
  cfg.validate();
  return cfg;
}

}  // namespace fvmoor
