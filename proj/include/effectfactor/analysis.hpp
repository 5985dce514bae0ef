#pragma once

#include "effectfactor/saturate.hpp"

namespace efx {

/// Terms of depth <= depth partitioned by denotational equality.
/// Blocks are numbered by first representative, so the partition is a
/// canonical relabeling-free description of the finitary theory.
struct KernelPartition {
  int64_t object_size = 0;
  int depth = 0;
  std::vector<int64_t> block_of;      // per term id
  std::vector<TermId> representative; // per block
  std::vector<int64_t> denotation;    // per block, T-carrier index
  std::vector<int64_t> block_size;

  int64_t blocks() const { return static_cast<int64_t>(representative.size()); }
};

KernelPartition kernel_partition(const Interpretation& interp, const TermArena& arena,
                                 int64_t nx, Exec exec = Exec::parallel);

struct CorrectnessReport {
  bool match = true;
  int64_t blocks_base = 0;     // partition by T-valued evaluation
  int64_t blocks_factored = 0; // partition by R-valued evaluation
  std::string term_a, term_b;  // first offending pair when they differ
  std::string note;
};

/// Partitions the term enumeration once through T and once through the
/// induced structure on R, and compares. The two routes agree exactly
/// when the inclusion is injective; a mismatch names two terms that one
/// side identifies and the other separates.
CorrectnessReport correctness_check(FactoredMonad& fact, int64_t nx, int depth,
                                    int64_t max_terms = 1'000'000,
                                    Exec exec = Exec::parallel);

enum class SizeFormula {
  writer,            // |X| * (1 + |S|)
  reader,            // |X| ^ |S|
  state,             // (|X| * |S|) ^ |S|
  identity,          // |X|
  nonempty_powerset, // 2^|X| - 1
  powerset,          // 2^|X|
  exception,         // |X| + |A|
};

SizeFormula formula_from_string(const std::string& s);
std::string to_string(SizeFormula f);

/// s_param is the monad parameter; a_param the parameter-set size used
/// by the exception formula (taken from the operation being graded).
int64_t expected_size(SizeFormula f, int64_t x, int64_t s_param, int64_t a_param);

struct ModularityRow {
  int64_t object_size = 0;
  int64_t r_size = 0;
  int64_t expected = 0;
  bool match = false;
};

struct ModularityProfile {
  SizeFormula formula = SizeFormula::identity;
  std::vector<ModularityRow> rows;
  bool all_match() const {
    for (const auto& r : rows)
      if (!r.match) return false;
    return true;
  }
};

ModularityProfile modularity_profile(FactoredMonad& fact,
                                     const std::vector<int64_t>& sizes, SizeFormula f);

struct StabilityReport {
  bool equal = true;
  int64_t blocks_a = 0, blocks_b = 0;
  std::string term_a, term_b; // first pair distinguished on one side only
  std::string note;
};

/// Compares the kernel partition of the same term enumeration under two
/// interpretations of one signature. Equality certifies that the graded
/// theory at this depth is unchanged by the ambient-monad swap.
StabilityReport stability_check(const Interpretation& a, const Interpretation& b,
                                int64_t nx, int depth, int64_t max_terms = 1'000'000,
                                Exec exec = Exec::parallel);

} // namespace efx
