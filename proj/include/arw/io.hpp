#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace arw {

/// Decimal form that round-trips through IEEE-754 doubles.
std::string format_double(double v);

// CSV with a mandatory header row; numeric cells are written in round-trip
// form so external readers recover the exact doubles.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

// Provenance sidecar: one record per CLI run, listing the exact config, the
// source revision, the seed, and every file the run emitted.
struct RunRecord {
  nlohmann::json config;
  std::string revision;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace arw
