#pragma once

#include <json.hpp>

#include "effectfactor/config.hpp"

namespace efx {

inline constexpr const char* kToolName = "effect-factor";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

enum class ReportFormat { human, machine };

/// Everything a run produced. The machine form is the authoritative,
/// lossless record; the human form is rendered from the same body.
/// Reports are byte-identical across runs of the same config and seed;
/// timing is attached only on request for that reason.
struct RunReport {
  std::string subcommand;
  RunConfig config;
  bool all_pass = true;
  std::optional<double> timing_ms;
  nlohmann::ordered_json body;
};

std::string emit_report(const RunReport& report, ReportFormat format);

/// Executes one subcommand: factor, laws, theory, stability, modularity,
/// or presets.
RunReport run_subcommand(const std::string& subcommand, const RunConfig& config);

} // namespace efx
