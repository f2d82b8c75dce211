#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "hdx/io.hpp"

namespace hdx {

/// One experiment: a pipeline kind, its inputs (inline JSON or file paths
/// relative to base_dir), parameters and a master seed.
struct ExperimentSpec {
  std::string pipeline;  // prune | cover-family | sparsify | combine | scan
  Json inputs = Json::object();
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::filesystem::path base_dir = ".";

  /// Throws ParseError on unknown pipelines or malformed fields.
  static ExperimentSpec from_json(const Json& j, std::filesystem::path base_dir = ".");
  Json to_json() const;
};

struct RunReport {
  Json report;   // deterministic: no wall times, sorted keys
  Json timings;  // stage -> seconds
  std::string spectra_csv;
  std::map<std::string, std::string> files;  // extra outputs by file name
  bool audit_failed = false;
  bool budget_exhausted = false;

  /// 0 clean, 2 budget exhausted, 3 audit failure.
  int exit_code() const { return audit_failed ? 3 : budget_exhausted ? 2 : 0; }
};

/// Parses and validates every input before running any stage; stage errors
/// are rethrown with the stage name prefixed.
RunReport run_experiment(const ExperimentSpec& spec);

/// Writes report.json, spectra.csv, timings.json and the extra files.
/// Throws IoError.
void emit_report(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace hdx
