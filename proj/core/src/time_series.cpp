#include "fvmoor/io/time_series.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fvmoor {

void TimeSeries::push(double t, double v) {
  if (!time.empty() && !(t > time.back())) {
    throw ValidationError("time series '" + name + "': time stamps must increase");
  }
  time.push_back(t);
  value.push_back(v);
}

TimeSeries TimeSeries::window(double t0, double t1) const {
  TimeSeries w{name, {}, {}};
  for (std::size_t i = 0; i < time.size(); ++i) {
    if (time[i] >= t0 && time[i] <= t1) {
      w.time.push_back(time[i]);
      w.value.push_back(value[i]);
    }
  }
  return w;
}

const TimeSeries* RecordSet::find(const std::string& name) const {
  for (const TimeSeries& c : channels) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const TimeSeries& RecordSet::at(const std::string& name) const {
  if (const TimeSeries* c = find(name)) return *c;
  throw ValidationError("no channel named '" + name + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_csv(const TimeSeries& s) {
  std::string out = "time," + s.name + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_double(s.time[i]);
    out += ',';
    out += format_double(s.value[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ValidationError("csv row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

TimeSeries parse_csv(const std::string& text, const std::string& column) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("csv: empty input");
  const std::vector<std::string> header = split(line);
  if (header.size() < 2) throw ValidationError("csv: need a time column and a value column");
  std::size_t col = 1;
  if (!column.empty()) {
    col = header.size();
    for (std::size_t i = 1; i < header.size(); ++i) {
      if (header[i] == column) col = i;
    }
    if (col == header.size()) throw ValidationError("csv: no column named '" + column + "'");
  }
  TimeSeries s{header[col], {}, {}};
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) {
      throw ValidationError("csv row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " fields");
    }
    s.push(parse_number(cells[0], row), parse_number(cells[col], row));
  }
  return s;
}

TimeSeries read_csv(const std::string& path, const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), column);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

void write_records(const std::string& dir, const RecordSet& records,
                   const std::string& scenario_name) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["scenario"] = scenario_name;
  manifest["channels"] = nlohmann::ordered_json::array();
  for (const TimeSeries& c : records.channels) {
    const std::string file = c.name + ".csv";
    write_file_atomic((fs::path(dir) / file).string(), to_csv(c));
    manifest["channels"].push_back({{"name", c.name}, {"file", file}, {"samples", c.size()}});
  }
  write_file_atomic((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

}  // namespace fvmoor
