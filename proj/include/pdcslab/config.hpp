#pragma once

// INI-style run configuration with [scenario], [sweep] and [output] sections.

#include "pdcslab/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdcslab {

enum class OutputFormat { csv, jsonl };

struct SweepSettings {
  double omega_lo = 0.05;  // units of omega0
  double omega_hi = 0.95;
  int samples = 19;
  std::vector<Kind> kinds{Kind::pdc, Kind::puc};
  double detuning_span = 0.0;  // |p - p0| range, units of omega0
  int detuning_points = 1;
  int jobs = 0;  // 0: hardware concurrency
};

struct OutputSettings {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty: standard output
};

struct RunConfig {
  CrystalScenario scenario;
  /// Set when the dispersion was calibrated to a degenerate angle.
  std::optional<double> theta_d_deg;
  SweepSettings sweep;
  OutputSettings output;
};

/// Parses the configuration text. Relative model_file paths resolve
/// against base_dir. Unknown sections or keys throw Error(parse).
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

Kind parse_kind(std::string_view text);
/// "pdc", "puc" or "both".
std::vector<Kind> parse_kinds(std::string_view text);
OutputFormat parse_format(std::string_view text);

}  // namespace pdcslab
