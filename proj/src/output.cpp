#include "rotcav/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "rotcav/dynamics.hpp"

namespace rotcav {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

nlohmann::json derived_json(const Model& model) {
  const auto b = empty_cavity_amplitude(model);
  return {
      {"U0_rad_s", model.U0()},
      {"gamma0_per_s", model.gamma0()},
      {"eta_per_s", model.eta()},
      {"kappa_rad_s", model.kappa()},
      {"detuning_rad_s", model.detuning()},
      {"mode_volume_m3", model.derived().mode_volume},
      {"coupling_ratio", std::abs(model.U0()) / model.kappa()},
      {"mass_kg", model.mass()},
      {"inertia_kg_m2", model.inertia()},
      {"shape_scale", model.shape_scale()},
      {"chi_parallel", model.chi().parallel},
      {"chi_perpendicular", model.chi().perpendicular},
      {"empty_cavity_photons", std::norm(b)},
  };
}

nlohmann::json run_metadata(const RunConfig& config, const std::string& kind) {
  nlohmann::json meta;
  meta["format"] = "rotcav-csv";
  meta["version"] = version_string;
  meta["kind"] = kind;
  meta["config_hash"] = config.hash();
  meta["seed"] = config.seed;
  meta["particle"] = std::string(to_string(config.particle.kind));
  meta["derived"] = derived_json(config.model());
  meta["config"] = config.resolved;
  meta["defaulted"] = config.defaulted;
  return meta;
}

CsvWriter::CsvWriter(std::ostream& out, nlohmann::json metadata, std::vector<std::string> columns)
    : out_(out), width_(columns.size()) {
  metadata["columns"] = columns;
  out_ << metadata.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

OutputSink::OutputSink(const std::string& path, std::ostream& fallback) : path_(path) {
  if (path.empty() || path == "-") {
    stream_ = &fallback;
    return;
  }
  auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file) throw std::runtime_error("cannot open output file '" + path + "' for writing");
  stream_ = file.get();
  file_ = std::move(file);
}

void OutputSink::close() {
  stream_->flush();
  if (!*stream_)
    throw std::runtime_error("write failed for '" + (path_.empty() ? std::string("<stdout>") : path_) + "'");
  if (file_) static_cast<std::ofstream&>(*file_).close();
}

}  // namespace rotcav
