#pragma once

#include <string>
#include <vector>

#include "fvmoor/types.hpp"

namespace fvmoor {

struct TimeSeries {
  std::string name;
  std::vector<double> time;
  std::vector<double> value;

  std::size_t size() const { return time.size(); }
  /// Appends a sample; throws ValidationError unless t is strictly increasing.
  void push(double t, double v);
  /// Samples with t0 <= t <= t1.
  TimeSeries window(double t0, double t1) const;
};

struct RecordSet {
  std::vector<TimeSeries> channels;

  const TimeSeries& at(const std::string& name) const;
  const TimeSeries* find(const std::string& name) const;
};

/// Shortest decimal text that reads back to exactly `v`, at most 17
/// significant digits.
std::string format_double(double v);

/// "time,<name>" header plus one row per sample.
std::string to_csv(const TimeSeries& s);
/// Parses a two-or-more column CSV; `column` selects the value column by
/// header name (empty selects the second column).
TimeSeries parse_csv(const std::string& text, const std::string& column = "");
TimeSeries read_csv(const std::string& path, const std::string& column = "");

/// Writes via a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

/// One CSV per channel plus manifest.json listing them. Creates `dir`.
void write_records(const std::string& dir, const RecordSet& records,
                   const std::string& scenario_name);

}  // namespace fvmoor
