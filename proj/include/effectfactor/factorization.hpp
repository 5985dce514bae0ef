#pragma once

#include "effectfactor/lawcheck.hpp"
#include "effectfactor/saturate.hpp"

namespace efx {

struct FactorizationReport {
  int64_t nx = 0, ny = 0, nz = 0;
  std::vector<CheckItem> items;

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.skipped && !it.pass) return false;
    return true;
  }
  bool any_skipped() const {
    for (const auto& it : items)
      if (it.skipped) return true;
    return false;
  }
};

/// Verifies the factorization at objects (X, Y, Z): the induced structure
/// on R satisfies the monad laws, the inclusion and the quotient are monad
/// morphisms (the inclusion via closure of R under bind along n, the
/// quotient via the substitution identity on enumerated terms), and the
/// corestricted strength is closed and lawful. Oversized instances are
/// reported as skipped; membership violations as failures.
FactorizationReport verify_factorization(FactoredMonad& fact, int64_t nx, int64_t ny, int64_t nz,
                               int64_t budget, uint64_t seed, int term_depth = 2,
                               int64_t max_terms = 1'000'000,
                               Exec exec = Exec::parallel);

} // namespace efx
