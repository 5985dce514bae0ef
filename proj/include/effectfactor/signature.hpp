#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "effectfactor/exec.hpp"
#include "effectfactor/monad.hpp"

namespace efx {

/// An algebraic operation op : A -> B (parameter set A, result arity B).
struct Operation {
  std::string name;
  FinSet a;
  FinSet b;
};

struct Signature {
  std::vector<Operation> ops;

  Signature() = default;
  explicit Signature(std::vector<Operation> o);

  const Operation& op(size_t i) const { return ops[i]; }
  int64_t index_of(const std::string& name) const; // -1 when absent
};

/// A signature interpreted into a base monad by generic effects
/// gen_op : A -> T B, one table per operation.
struct Interpretation {
  Monad monad;
  Signature sig;
  std::vector<std::vector<int64_t>> gen; // per op, length |A|, entries in T B

  Interpretation(Monad m, Signature s, std::vector<std::vector<int64_t>> g);
};

using TermId = uint32_t;

/// All terms of depth <= D over leaves 0..|X|-1, stored as a DAG arena.
/// Children always precede parents; layer_end[d] is the number of terms
/// of depth <= d. Order within a layer: op, then parameter, then the
/// children tuple lexicographically.
struct TermArena {
  struct Node {
    int32_t op;      // -1 for a leaf
    int64_t arg;     // leaf value, or parameter a
    uint32_t child_begin = 0;
    uint32_t child_count = 0;
  };

  int64_t leaf_count = 0;
  std::vector<Node> nodes;
  std::vector<TermId> children;
  std::vector<size_t> layer_end;

  size_t size() const { return nodes.size(); }
  std::span<const TermId> children_of(TermId t) const {
    const Node& n = nodes[t];
    return {children.data() + n.child_begin, n.child_count};
  }
  int depth_of(TermId t) const;
};

/// Enumerates every term of depth <= depth; throws InstanceTooLarge when
/// the count would exceed max_terms.
TermArena enumerate_terms(const Signature& sig, int64_t leaf_count, int depth,
                          int64_t max_terms = 1'000'000);

/// Number of terms of depth <= depth, by the layer recurrence
/// c_{d+1} = |X| + sum_op |A| * c_d^|B| (checked).
int64_t count_terms(const Signature& sig, int64_t leaf_count, int depth);

std::string render_term(const TermArena& arena, const Signature& sig, TermId t,
                        const FinSet* x = nullptr);

/// Denotations of every term in the arena: leaves through the unit,
/// nodes by Kleisli extension of their children after the generic effect.
/// Layer-parallel kernel; children are always already evaluated.
std::vector<int64_t> eval_terms(const TermArena& arena, const Interpretation& interp,
                                int64_t nx, Exec exec = Exec::parallel);

/// Memoized recursive evaluation, kept as the reference for the kernel.
std::vector<int64_t> eval_terms_reference(const TermArena& arena,
                                          const Interpretation& interp, int64_t nx);

int64_t eval_term(const TermArena& arena, const Interpretation& interp, int64_t nx,
                  TermId t);

} // namespace efx
