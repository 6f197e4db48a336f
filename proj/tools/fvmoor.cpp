#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fvmoor/coupling/simulation.hpp"
#include "fvmoor/io/postprocess.hpp"
#include "fvmoor/morph/mesh_morph.hpp"
#include "fvmoor/rotation.hpp"

namespace {

using namespace fvmoor;

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

int cmd_validate(const std::string& path) {
  const Scenario s = load_scenario(path);
  std::cout << path << ": ok (" << s.lines.size() << " lines, mode " << to_string(s.coupling.mode)
            << ", end " << format_double(s.coupling.end_time) << " s)\n";
  return 0;
}

int cmd_init_check(const std::string& path) {
  const Scenario s = load_scenario(path);
  for (const LineReport& r : init_check(s)) {
    std::cout << r.name << ": pretension " << fixed(r.pretension) << " N, fairlead "
              << fixed(r.fairlead_tension) << " N; catenary anchor " << fixed(r.oracle_anchor)
              << " N, fairlead " << fixed(r.oracle_fairlead) << " N\n";
  }
  return 0;
}

int cmd_run(const std::string& path, const std::string& out, unsigned threads) {
  const Scenario s = load_scenario(path);
  const RecordSet rec = run_simulation(s, threads);
  write_records(out, rec, s.name);
  std::cout << "wrote " << rec.channels.size() << " channels to " << out << "\n";
  return 0;
}

int cmd_postprocess(const std::string& path, std::string channel, std::vector<double> window,
                    const std::string& method, double prominence) {
  const TimeSeries ts = read_csv(path, channel);
  if (window.empty()) {
    const auto [a, b] = default_window(ts.name);
    window = {a, b};
  }
  if (method == "fft") {
    const SpectralPeak p = fft_dominant_amplitude(ts, window[0], window[1]);
    std::cout << ts.name << ": frequency " << fixed(p.frequency) << " Hz, amplitude "
              << fixed(p.amplitude) << "\n";
  } else {
    const double a = amplitude_peak_to_trough(ts, window[0], window[1], {prominence});
    std::cout << ts.name << ": amplitude " << fixed(a) << "\n";
  }
  return 0;
}

std::vector<Vec3> read_points(std::istream& in) {
  std::vector<Vec3> pts;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    if (row == 1 && line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    Vec3 p;
    if (!(is >> p.x() >> p.y() >> p.z())) {
      throw ValidationError("points: row " + std::to_string(row) + ": expected x,y,z");
    }
    pts.push_back(p);
  }
  return pts;
}

int cmd_morph(const std::string& path, const std::string& out, const std::vector<double>& b,
              const std::vector<double>& r, const std::vector<double>& dims, double r_in,
              double r_out) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  MorphConfig cfg = benchmark_morph_config(Vec3(dims[0], dims[1], dims[2]));
  cfg.inner_radius = r_in;
  cfg.outer_radius = r_out;
  for (auto& a : cfg.translation) {
    if (a) a->ramp = r_out - r_in;
  }
  cfg.validate();
  const Vec3 t(b[0], b[1], b[2]);
  const Quat q = quat_exp<double>(Vec3(r[0], r[1], r[2]));
  std::ostringstream os;
  os << "x,y,z\n";
  for (const Vec3& p : read_points(in)) {
    const Vec3 moved = p + point_displacement(p, t, q, cfg);
    os << format_double(moved.x()) << ',' << format_double(moved.y()) << ','
       << format_double(moved.z()) << '\n';
  }
  if (out.empty() || out == "-") std::cout << os.str();
  else write_file_atomic(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume mooring line and floating body simulator"};
  app.require_subcommand(1);

  std::string scenario, out, csv, channel, method = "p2t";
  unsigned threads = 0;
  std::vector<double> window, translation{0, 0, 0}, rotation{0, 0, 0}, dims{0.2, 0.2, 0.132};
  double prominence = 0.05, r_in = 0.05, r_out = 0.45;

  auto* run = app.add_subcommand("run", "Run a scenario and write one CSV per channel");
  run->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", out, "Output directory")->required();
  run->add_option("--threads", threads, "Per-line solver threads (default: FVMOOR_THREADS or 1)")
      ->check(CLI::Range(1u, 256u));

  auto* init = app.add_subcommand("init-check", "Initialize each line and compare with the catenary");
  init->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* val = app.add_subcommand("validate", "Parse and check a scenario");
  val->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* post = app.add_subcommand("postprocess", "Amplitude of one CSV channel");
  post->add_option("csv", csv, "Channel CSV")->required()->check(CLI::ExistingFile);
  post->add_option("--channel", channel, "Value column (default: second column)");
  post->add_option("--window", window, "Window start and end, s")->expected(2);
  post->add_option("--method", method, "p2t or fft")->check(CLI::IsMember({"p2t", "fft"}));
  post->add_option("--prominence", prominence, "Minimum swing as a fraction of the range")
      ->check(CLI::Range(0.0, 1.0));

  auto* morph = app.add_subcommand("morph", "Displace a point cloud for a body pose");
  morph->add_option("points", csv, "CSV of x,y,z relative to the rotation centre")
      ->required()->check(CLI::ExistingFile);
  morph->add_option("-o,--output", out, "Output CSV (default: stdout)");
  morph->add_option("--translation", translation, "Body translation, m")->expected(3);
  morph->add_option("--rotation", rotation, "Body rotation vector, rad")->expected(3);
  morph->add_option("--box", dims, "Body box extents, m")->expected(3);
  morph->add_option("--inner-radius", r_in, "Rigid zone radius, m");
  morph->add_option("--outer-radius", r_out, "Static zone radius, m");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scenario, out, threads);
    if (*init) return cmd_init_check(scenario);
    if (*val) return cmd_validate(scenario);
    if (*post) return cmd_postprocess(csv, channel, window, method, prominence);
    if (*morph) return cmd_morph(csv, out, translation, rotation, dims, r_in, r_out);
  } catch (const ValidationError& e) {
    std::cerr << "fvmoor: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fvmoor: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
