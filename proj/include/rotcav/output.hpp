#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotcav/config.hpp"
#include "rotcav/params.hpp"

namespace rotcav {

inline constexpr const char* version_string = "0.1.0";

/// %.17g, enough to round-trip a double.
std::string format_number(double value);

nlohmann::json derived_json(const Model& model);

/// Header shared by every output file. `kind` names the subcommand.
nlohmann::json run_metadata(const RunConfig& config, const std::string& kind);

/// One JSON metadata line, then a CSV header line, then rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, nlohmann::json metadata, std::vector<std::string> columns);

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

/// File sink, or stdout for an empty path or "-". Throws std::runtime_error
/// naming the path when the file cannot be opened.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path, std::ostream& fallback);
  std::ostream& stream() { return *stream_; }
  /// Flushes and reports write failures with the path.
  void close();

 private:
  std::string path_;
  std::unique_ptr<std::ostream> file_;
  std::ostream* stream_;
};

}  // namespace rotcav
