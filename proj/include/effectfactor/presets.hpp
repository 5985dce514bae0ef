#pragma once

#include "effectfactor/analysis.hpp"
#include "effectfactor/signature.hpp"

namespace efx {

/// A named base monad plus signature and generic-effect tables, with the
/// size formula its factored monad is expected to follow and the object
/// sizes at which the full factorization suite stays under the carrier cap.
struct PresetInfo {
  std::string id;
  std::string description;
  MonadSpec monad;
  SizeFormula formula;
  std::vector<int64_t> law_objects;
};

const std::vector<std::string>& preset_ids();
bool is_preset(const std::string& id);

/// param <= 0 picks the preset default (2).
PresetInfo preset_info(const std::string& id, int64_t param = 0);
Interpretation make_preset(const std::string& id, int64_t param = 0,
                           int64_t max_carrier = kDefaultCarrierCap);

} // namespace efx
