#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "effectfactor/exec.hpp"
#include "effectfactor/rng.hpp"

namespace efx {

/// Outcome of one exhaustive-or-sampled case sweep.
struct SweepResult {
  int64_t cases = 0;       // cases actually executed
  bool exhaustive = true;  // false when sampled under the budget
  std::optional<int64_t> first_fail; // flat case index (or sample index)
};

namespace detail {

inline bool sweep_total(std::span<const int64_t> radix, int64_t budget, int64_t& total) {
  // true when the full space fits the budget; total is clamped otherwise
  unsigned __int128 t = 1;
  for (int64_t r : radix) {
    t *= static_cast<unsigned __int128>(r);
    if (t > static_cast<unsigned __int128>(budget)) { total = budget; return false; }
  }
  total = static_cast<int64_t>(t);
  return true;
}

inline void decode_case(std::span<const int64_t> radix, int64_t flat,
                        std::span<int64_t> out) {
  // last coordinate varies fastest
  for (size_t i = radix.size(); i-- > 0;) {
    out[i] = flat % radix[i];
    flat /= radix[i];
  }
}

inline void draw_case(std::span<const int64_t> radix, uint64_t seed, int64_t j,
                      std::span<int64_t> out) {
  Rng rng = Rng::for_case(seed, static_cast<uint64_t>(j));
  for (size_t i = 0; i < radix.size(); ++i) out[i] = rng.next_below(radix[i]);
}

} // namespace detail

/// Runs `fails(coords)` over the mixed-radix case space. Exhaustive when the
/// space fits the budget, seeded uniform sampling otherwise. The reported
/// failure is the least case index regardless of thread count.
template <typename FailPred>
SweepResult sweep_cases(std::span<const int64_t> radix, int64_t budget, uint64_t seed,
                        Exec exec, FailPred&& fails) {
  SweepResult res;
  for (int64_t r : radix)
    if (r == 0) return res; // empty space, vacuous pass

  int64_t total = 0;
  res.exhaustive = detail::sweep_total(radix, budget, total);
  res.cases = total;
  if (total == 0) return res;

  int64_t fail_at = total;
  const bool exhaustive = res.exhaustive;
  const bool par = exec == Exec::parallel;
#pragma omp parallel if (par)
  {
    std::vector<int64_t> coords(radix.size());
    int64_t local_fail = total;
#pragma omp for schedule(static) nowait
    for (int64_t i = 0; i < total; ++i) {
      if (exhaustive)
        detail::decode_case(radix, i, coords);
      else
        detail::draw_case(radix, seed, i, coords);
      if (fails(std::span<const int64_t>(coords)) && i < local_fail) local_fail = i;
    }
#pragma omp critical
    if (local_fail < fail_at) fail_at = local_fail;
  }
  if (fail_at < total) res.first_fail = fail_at;
  return res;
}

/// Recovers the coordinates of a case index returned by sweep_cases.
inline std::vector<int64_t> sweep_case_coords(std::span<const int64_t> radix,
                                              int64_t case_index, bool exhaustive,
                                              uint64_t seed) {
  std::vector<int64_t> coords(radix.size());
  if (exhaustive)
    detail::decode_case(radix, case_index, coords);
  else
    detail::draw_case(radix, seed, case_index, coords);
  return coords;
}

} // namespace efx
