#pragma once

#include <map>
#include <optional>

#include "effectfactor/presets.hpp"

namespace efx {

/// One interpretation, either by preset id (optionally re-parameterized)
/// or spelled out as monad + signature + generic-effect tables.
struct InterpConfig {
  std::optional<std::string> preset;
  std::optional<int64_t> param;
  std::optional<MonadSpec> monad;
  std::vector<Operation> ops;
  std::map<std::string, std::vector<int64_t>> tables;

  friend bool operator==(const InterpConfig& a, const InterpConfig& b);
};

struct RunConfig {
  int version = 1;
  InterpConfig primary;
  std::optional<InterpConfig> other; // second interpretation for stability
  std::vector<int64_t> objects{0, 1, 2, 3};
  int depth = 3;
  int64_t budget = 100'000;
  uint64_t seed = 0;
  int64_t max_carrier = kDefaultCarrierCap;
  int64_t max_round_work = 50'000'000;
  int64_t max_terms = 1'000'000;
  std::vector<int64_t> law_objects; // empty: preset default, else {2,2,2}
  std::optional<std::string> formula;
  bool parallel = true;

  friend bool operator==(const RunConfig& a, const RunConfig& b);

  Exec exec() const { return parallel ? Exec::parallel : Exec::serial; }
};

/// Parses the JSON run configuration. Unknown keys are rejected unless
/// they start with "_", which is the documented comment convention.
RunConfig parse_config(const std::string& text);

/// Canonical (normalized) form; parse(emit(c)) == c.
std::string emit_config(const RunConfig& config);

Interpretation build_interpretation(const InterpConfig& ic, int64_t max_carrier);

/// Factorization-suite objects: explicit law_objects, else the preset default,
/// else (2,2,2).
std::vector<int64_t> resolve_law_objects(const RunConfig& config);

/// Size formula: explicit, else the preset default.
SizeFormula resolve_formula(const RunConfig& config);

} // namespace efx
