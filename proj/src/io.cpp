#include "arw/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace arw {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  raw_row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

nlohmann::json RunRecord::to_json() const {
  return {{"config", config},
          {"revision", revision},
          {"seed", seed},
          {"wall_time_s", wall_time_s},
          {"outputs", outputs}};
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.config = j.at("config");
  r.revision = j.at("revision").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.outputs = j.at("outputs").get<std::vector<std::string>>();
  return r;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace arw
