#include "effectfactor/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace efx {

namespace {

// first-occurrence block ids for a value sequence
std::vector<int64_t> canonical_blocks(const std::vector<int64_t>& values,
                                      std::vector<size_t>* reps = nullptr) {
  std::vector<int64_t> block(values.size());
  std::unordered_map<int64_t, int64_t> id;
  id.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    auto [it, fresh] = id.try_emplace(values[i], static_cast<int64_t>(id.size()));
    block[i] = it->second;
    if (fresh && reps) reps->push_back(i);
  }
  return block;
}

// first pair (j, i) related by one partition and not the other
bool first_disagreement(const std::vector<int64_t>& pa, const std::vector<int64_t>& pb,
                        size_t& j_out, size_t& i_out) {
  for (size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] == pb[i]) continue;
    for (size_t j = 0; j < i; ++j) {
      if ((pa[j] == pa[i]) != (pb[j] == pb[i])) {
        j_out = j;
        i_out = i;
        return true;
      }
    }
  }
  return false;
}

} // namespace

KernelPartition kernel_partition(const Interpretation& interp, const TermArena& arena,
                                 int64_t nx, Exec exec) {
  KernelPartition part;
  part.object_size = nx;
  part.depth = static_cast<int>(arena.layer_end.size()) - 1;
  std::vector<int64_t> values = eval_terms(arena, interp, nx, exec);
  std::vector<size_t> reps;
  part.block_of = canonical_blocks(values, &reps);
  part.representative.assign(reps.begin(), reps.end());
  part.denotation.resize(reps.size());
  part.block_size.assign(reps.size(), 0);
  for (size_t i = 0; i < values.size(); ++i)
    ++part.block_size[static_cast<size_t>(part.block_of[i])];
  for (size_t b = 0; b < reps.size(); ++b) part.denotation[b] = values[reps[b]];
  return part;
}

CorrectnessReport correctness_check(FactoredMonad& fact, int64_t nx, int depth,
                                    int64_t max_terms, Exec exec) {
  const Interpretation& interp = fact.interp();
  CorrectnessReport rep;
  TermArena arena = enumerate_terms(interp.sig, nx, depth, max_terms);

  std::vector<int64_t> t_values = eval_terms(arena, interp, nx, exec);
  std::vector<int64_t> t_blocks = canonical_blocks(t_values);

  fact.saturate(nx);
  for (const auto& op : interp.sig.ops) fact.saturate(op.b.size);

  // independent route: fold the term through the induced structure on R
  std::vector<int64_t> r_values(arena.size());
  try {
    for (size_t i = 0; i < arena.size(); ++i) {
      const TermArena::Node& n = arena.nodes[i];
      if (n.op < 0) {
        r_values[i] = fact.r_unit_at(nx, n.arg);
        continue;
      }
      const Operation& op = interp.sig.ops[static_cast<size_t>(n.op)];
      std::vector<int64_t> k(static_cast<size_t>(op.b.size));
      for (int64_t b = 0; b < op.b.size; ++b)
        k[static_cast<size_t>(b)] = r_values[arena.children[n.child_begin + b]];
      r_values[i] = fact.r_extend_at(op.b.size, nx, k,
                                     fact.r_gen(static_cast<size_t>(n.op), n.arg));
    }
  } catch (const FactorizationViolation& e) {
    rep.match = false;
    rep.note = e.what();
    return rep;
  }
  std::vector<int64_t> r_blocks = canonical_blocks(r_values);

  rep.blocks_base = 1 + (t_blocks.empty() ? -1 : *std::max_element(t_blocks.begin(), t_blocks.end()));
  rep.blocks_factored = 1 + (r_blocks.empty() ? -1 : *std::max_element(r_blocks.begin(), r_blocks.end()));
  if (t_blocks != r_blocks) {
    rep.match = false;
    size_t j = 0, i = 0;
    if (first_disagreement(t_blocks, r_blocks, j, i)) {
      rep.term_a = render_term(arena, interp.sig, static_cast<TermId>(j));
      rep.term_b = render_term(arena, interp.sig, static_cast<TermId>(i));
      bool merged_in_r = r_blocks[j] == r_blocks[i];
      std::ostringstream os;
      os << "terms " << rep.term_a << " and " << rep.term_b
         << (merged_in_r ? " are identified by the factored route only"
                         : " are identified by the base route only");
      rep.note = os.str();
    }
  }
  return rep;
}

SizeFormula formula_from_string(const std::string& s) {
  if (s == "writer") return SizeFormula::writer;
  if (s == "reader") return SizeFormula::reader;
  if (s == "state") return SizeFormula::state;
  if (s == "identity") return SizeFormula::identity;
  if (s == "nonempty-powerset") return SizeFormula::nonempty_powerset;
  if (s == "powerset") return SizeFormula::powerset;
  if (s == "exception") return SizeFormula::exception;
  throw ConfigError("unknown size formula: " + s);
}

std::string to_string(SizeFormula f) {
  switch (f) {
    case SizeFormula::writer: return "writer";
    case SizeFormula::reader: return "reader";
    case SizeFormula::state: return "state";
    case SizeFormula::identity: return "identity";
    case SizeFormula::nonempty_powerset: return "nonempty-powerset";
    case SizeFormula::powerset: return "powerset";
    case SizeFormula::exception: return "exception";
  }
  return "?";
}

int64_t expected_size(SizeFormula f, int64_t x, int64_t s_param, int64_t a_param) {
  switch (f) {
    case SizeFormula::writer: return x * (1 + s_param);
    case SizeFormula::reader: return checked_pow(x, s_param);
    case SizeFormula::state: return checked_pow(x * s_param, s_param);
    case SizeFormula::identity: return x;
    case SizeFormula::nonempty_powerset: return checked_pow(2, x) - 1;
    case SizeFormula::powerset: return checked_pow(2, x);
    case SizeFormula::exception: return x + a_param;
  }
  return -1;
}

ModularityProfile modularity_profile(FactoredMonad& fact,
                                     const std::vector<int64_t>& sizes, SizeFormula f) {
  ModularityProfile profile;
  profile.formula = f;
  const Interpretation& interp = fact.interp();
  const int64_t s_param = interp.monad.spec().param;
  const int64_t a_param =
      interp.sig.ops.empty() ? 0 : interp.sig.ops.front().a.size;
  for (int64_t x : sizes) {
    ModularityRow row;
    row.object_size = x;
    row.r_size = fact.saturate(x).size();
    row.expected = expected_size(f, x, s_param, a_param);
    row.match = row.r_size == row.expected;
    profile.rows.push_back(row);
  }
  return profile;
}

StabilityReport stability_check(const Interpretation& a, const Interpretation& b,
                                int64_t nx, int depth, int64_t max_terms, Exec exec) {
  if (a.sig.ops.size() != b.sig.ops.size())
    throw std::invalid_argument("stability_check: signatures differ");
  for (size_t i = 0; i < a.sig.ops.size(); ++i) {
    const Operation &oa = a.sig.ops[i], &ob = b.sig.ops[i];
    if (oa.name != ob.name || oa.a.size != ob.a.size || oa.b.size != ob.b.size)
      throw std::invalid_argument("stability_check: signatures differ at " + oa.name);
  }

  StabilityReport rep;
  TermArena arena = enumerate_terms(a.sig, nx, depth, max_terms);
  std::vector<int64_t> va = eval_terms(arena, a, nx, exec);
  std::vector<int64_t> vb = eval_terms(arena, b, nx, exec);
  std::vector<int64_t> pa = canonical_blocks(va);
  std::vector<int64_t> pb = canonical_blocks(vb);
  rep.blocks_a = pa.empty() ? 0 : 1 + *std::max_element(pa.begin(), pa.end());
  rep.blocks_b = pb.empty() ? 0 : 1 + *std::max_element(pb.begin(), pb.end());
  if (pa != pb) {
    rep.equal = false;
    size_t j = 0, i = 0;
    if (first_disagreement(pa, pb, j, i)) {
      rep.term_a = render_term(arena, a.sig, static_cast<TermId>(j));
      rep.term_b = render_term(arena, a.sig, static_cast<TermId>(i));
      bool merged_in_b = pb[j] == pb[i];
      std::ostringstream os;
      os << "terms " << rep.term_a << " and " << rep.term_b << " are "
         << (merged_in_b ? "distinguished under A but merged under B"
                         : "merged under A but distinguished under B");
      rep.note = os.str();
    }
  }
  return rep;
}

} // namespace efx
