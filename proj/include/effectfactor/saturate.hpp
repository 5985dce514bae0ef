#pragma once

#include <map>
#include <span>

#include "effectfactor/signature.hpp"

namespace efx {

struct SaturateOptions {
  Exec exec = Exec::parallel;
  int64_t max_round_work = 50'000'000; // candidate evaluations per round
};

/// The reachable subset R X of T X for one object, with the inclusion
/// (elements), its inverse (t_to_r), a minimal-depth witness term per
/// element and the per-round growth trace.
struct SaturatedObject {
  int64_t object_size = 0;
  int64_t carrier = 0;

  // R index -> T-carrier index; this is the table of n_X and is ordered
  // by discovery (units first, then per round by candidate priority).
  std::vector<int64_t> elements;
  std::vector<int64_t> t_to_r; // T-carrier index -> R index, -1 outside R

  // Witness structure: how each element was first produced. Children are
  // R indices of strictly earlier elements, so witnesses form a DAG.
  struct Origin {
    int32_t op = -1;  // -1: unit of `leaf`
    int64_t arg = 0;  // leaf value or operation parameter
    uint32_t child_begin = 0;
    uint32_t child_count = 0;
  };
  std::vector<Origin> origins;
  std::vector<uint32_t> child_pool;

  std::vector<int64_t> layer_trace; // |Reach| after units, then per productive round
  int64_t rounds = 0;               // productive closure rounds

  int64_t size() const { return static_cast<int64_t>(elements.size()); }
  bool full() const { return size() == carrier; }
  int64_t r_of(int64_t t_index) const { return t_to_r[static_cast<size_t>(t_index)]; }
};

/// Fixpoint saturation: the least subset of T X containing all unit
/// values and closed under every generic effect applied to reached
/// children. Witnesses get minimal depth; ties go to the smallest
/// candidate rank (op, parameter, children lexicographically).
SaturatedObject saturate_object(const Interpretation& interp, int64_t nx,
                                const SaturateOptions& opts = {});

/// Straight nested-loop implementation kept as the reference for the
/// stratified parallel kernel; identical output by construction.
SaturatedObject saturate_object_reference(const Interpretation& interp, int64_t nx,
                                          int64_t max_round_work = 50'000'000);

/// Values one further full round would add (empty iff R is closed).
std::vector<int64_t> closure_round_additions(const Interpretation& interp,
                                             const SaturatedObject& s,
                                             int64_t max_round_work = 50'000'000);

/// Evaluates every witness term; index r holds the denotation of the
/// witness of element r. Equal to `elements` when witnesses are sound.
std::vector<int64_t> eval_witnesses(const SaturatedObject& s, const Interpretation& interp);

int witness_depth(const SaturatedObject& s, int64_t r);
std::string render_witness(const SaturatedObject& s, const Signature& sig, int64_t r,
                           const FinSet* x = nullptr);

struct StabilizationReport {
  std::vector<int64_t> layer_trace;
  int64_t rounds = 0;
  int64_t carrier = 0;
  bool monotone = false;       // strictly increasing trace
  bool within_bound = false;   // rounds <= |T X|
  bool closed = false;         // one more round adds nothing
  bool final_matches = false;  // last trace entry == |R X|
  bool pass() const { return monotone && within_bound && closed && final_matches; }
};

/// Per-object factored monad: saturated objects keyed by cardinality
/// (all structure here is invariant under relabeling), plus the induced
/// monad structure by corestriction. Every induced operation asserts
/// that its result stays inside R; a violation throws FactorizationViolation.
class FactoredMonad {
public:
  explicit FactoredMonad(Interpretation interp, SaturateOptions opts = {});

  const Interpretation& interp() const { return interp_; }
  const SaturateOptions& options() const { return opts_; }

  const SaturatedObject& saturate(int64_t nx);
  const SaturatedObject& entry(int64_t nx) const;
  SaturatedObject& entry_mut(int64_t nx); // fault-injection hook for tests
  bool has(int64_t nx) const { return entries_.count(nx) > 0; }

  /// n_X : R X -> T X as a FinFun (injective by construction).
  FinFun inclusion(int64_t nx) const;

  int64_t r_unit_at(int64_t nx, int64_t x) const;
  std::vector<int64_t> r_unit_table(int64_t nx) const;

  /// k maps X into R Y (R indices); applies the corestricted extension
  /// to element r of R X.
  int64_t r_extend_at(int64_t nx, int64_t ny, std::span<const int64_t> k, int64_t r) const;
  std::vector<int64_t> r_bind_table(int64_t nx, int64_t ny, std::span<const int64_t> k) const;

  /// Functor action f : X -> Y corestricted to R.
  std::vector<int64_t> r_map_table(int64_t nx, int64_t ny, std::span<const int64_t> f) const;

  /// Strength X x R Y -> R(X x Y); the product object must be saturated.
  int64_t r_strength_at(int64_t nx, int64_t ny, int64_t x, int64_t r) const;

  /// Generic effect corestricted to R B (the epsilon-Kleisli arrow).
  int64_t r_gen(size_t op_index, int64_t a) const;

  StabilizationReport stabilization(int64_t nx) const;

private:
  Interpretation interp_;
  SaturateOptions opts_;
  std::map<int64_t, SaturatedObject> entries_;
};

} // namespace efx
