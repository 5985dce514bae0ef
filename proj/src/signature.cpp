#include "effectfactor/signature.hpp"

#include <sstream>
#include <unordered_set>

namespace efx {

Signature::Signature(std::vector<Operation> o) : ops(std::move(o)) {
  std::unordered_set<std::string> names;
  for (const auto& op : ops) {
    if (op.name.empty()) throw std::invalid_argument("operation name must be nonempty");
    if (!names.insert(op.name).second)
      throw std::invalid_argument("duplicate operation name: " + op.name);
  }
}

int64_t Signature::index_of(const std::string& name) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == name) return static_cast<int64_t>(i);
  return -1;
}

Interpretation::Interpretation(Monad m, Signature s, std::vector<std::vector<int64_t>> g)
    : monad(std::move(m)), sig(std::move(s)), gen(std::move(g)) {
  if (gen.size() != sig.ops.size())
    throw std::invalid_argument("interpretation must cover every operation");
  for (size_t i = 0; i < gen.size(); ++i) {
    const Operation& op = sig.ops[i];
    if (static_cast<int64_t>(gen[i].size()) != op.a.size)
      throw std::invalid_argument("generic effect table for " + op.name +
                                  " must have length |A|");
    int64_t ntb = monad.carrier_size(op.b.size);
    for (int64_t v : gen[i])
      if (v < 0 || v >= ntb)
        throw std::invalid_argument("generic effect entry for " + op.name +
                                    " is outside the carrier of B");
  }
}

int TermArena::depth_of(TermId t) const {
  for (size_t d = 0; d < layer_end.size(); ++d)
    if (t < layer_end[d]) return static_cast<int>(d);
  return -1;
}

int64_t count_terms(const Signature& sig, int64_t leaf_count, int depth) {
  int64_t c = leaf_count;
  for (int d = 0; d < depth; ++d) {
    int64_t next = leaf_count;
    for (const auto& op : sig.ops)
      next += checked_mul(op.a.size, checked_pow(c, op.b.size));
    c = next;
  }
  return c;
}

TermArena enumerate_terms(const Signature& sig, int64_t leaf_count, int depth,
                          int64_t max_terms) {
  TermArena arena;
  arena.leaf_count = leaf_count;
  arena.nodes.reserve(static_cast<size_t>(leaf_count));
  for (int64_t x = 0; x < leaf_count; ++x)
    arena.nodes.push_back({-1, x, 0, 0});
  arena.layer_end.push_back(arena.nodes.size());

  for (int d = 0; d < depth; ++d) {
    const size_t prev_end = d == 0 ? 0 : arena.layer_end[static_cast<size_t>(d) - 1];
    const size_t cur_end = arena.layer_end[static_cast<size_t>(d)];
    int64_t next_count = count_terms(sig, leaf_count, d + 1);
    if (next_count > max_terms)
      throw InstanceTooLarge("term enumeration at depth " + std::to_string(d + 1) +
                             " needs " + std::to_string(next_count) +
                             " terms, cap " + std::to_string(max_terms));
    arena.nodes.reserve(static_cast<size_t>(next_count));

    for (size_t oi = 0; oi < sig.ops.size(); ++oi) {
      const Operation& op = sig.ops[oi];
      const int64_t nb = op.b.size;
      std::vector<size_t> tuple(static_cast<size_t>(nb), 0);
      for (int64_t a = 0; a < op.a.size; ++a) {
        // odometer over children tuples below cur_end; a tuple whose
        // children all predate the newest layer was emitted earlier
        if (nb == 0) {
          if (d == 0) arena.nodes.push_back({static_cast<int32_t>(oi), a, 0, 0});
          continue;
        }
        if (cur_end == 0) continue;
        std::fill(tuple.begin(), tuple.end(), 0);
        while (true) {
          bool has_new = false;
          for (size_t c : tuple)
            if (c >= prev_end) { has_new = true; break; }
          if (has_new || d == 0) {
            TermArena::Node node{static_cast<int32_t>(oi), a,
                                 static_cast<uint32_t>(arena.children.size()),
                                 static_cast<uint32_t>(nb)};
            for (size_t c : tuple) arena.children.push_back(static_cast<TermId>(c));
            arena.nodes.push_back(node);
          }
          // lexicographic successor, last coordinate fastest
          size_t i = tuple.size();
          while (i > 0) {
            --i;
            if (++tuple[i] < cur_end) break;
            tuple[i] = 0;
            if (i == 0) goto done_tuples;
          }
        }
      done_tuples:;
      }
    }
    arena.layer_end.push_back(arena.nodes.size());
    if (arena.layer_end[arena.layer_end.size() - 1] ==
        arena.layer_end[arena.layer_end.size() - 2] &&
        d > 0)
      // no new terms can ever appear (e.g. empty signature)
      {
        for (int rest = d + 1; rest < depth; ++rest)
          arena.layer_end.push_back(arena.nodes.size());
        break;
      }
  }
  return arena;
}

std::string render_term(const TermArena& arena, const Signature& sig, TermId t,
                        const FinSet* x) {
  const TermArena::Node& n = arena.nodes[t];
  if (n.op < 0) {
    if (x && x->labels) return x->label(n.arg);
    return "x" + std::to_string(n.arg);
  }
  const Operation& op = sig.ops[static_cast<size_t>(n.op)];
  std::ostringstream os;
  os << op.name << "(" << op.a.label(n.arg);
  auto ch = arena.children_of(t);
  if (!ch.empty()) {
    os << ";";
    for (size_t i = 0; i < ch.size(); ++i)
      os << (i ? ", " : " ") << render_term(arena, sig, ch[i], x);
  }
  os << ")";
  return os.str();
}

namespace {

int64_t eval_node(const TermArena& arena, const Interpretation& interp, int64_t nx,
                  const TermArena::Node& n, const int64_t* values) {
  const Operation& op = interp.sig.ops[static_cast<size_t>(n.op)];
  const int64_t nb = op.b.size;
  std::vector<int64_t> k(static_cast<size_t>(nb));
  for (int64_t b = 0; b < nb; ++b)
    k[static_cast<size_t>(b)] = values[arena.children[n.child_begin + b]];
  return interp.monad.extend_at(nb, nx, k,
                                interp.gen[static_cast<size_t>(n.op)][static_cast<size_t>(n.arg)]);
}

} // namespace

std::vector<int64_t> eval_terms(const TermArena& arena, const Interpretation& interp,
                                int64_t nx, Exec exec) {
  std::vector<int64_t> values(arena.size());
  const bool par = exec == Exec::parallel;
  size_t begin = 0;
  for (size_t d = 0; d < arena.layer_end.size(); ++d) {
    const int64_t end = static_cast<int64_t>(arena.layer_end[d]);
#pragma omp parallel for schedule(static) if (par && end - static_cast<int64_t>(begin) > 512)
    for (int64_t i = static_cast<int64_t>(begin); i < end; ++i) {
      const TermArena::Node& n = arena.nodes[static_cast<size_t>(i)];
      values[static_cast<size_t>(i)] =
          n.op < 0 ? interp.monad.unit_at(nx, n.arg)
                   : eval_node(arena, interp, nx, n, values.data());
    }
    begin = arena.layer_end[d];
  }
  return values;
}

std::vector<int64_t> eval_terms_reference(const TermArena& arena,
                                          const Interpretation& interp, int64_t nx) {
  std::vector<int64_t> memo(arena.size(), -1);
  // children precede parents, so a simple backward recursion suffices
  auto eval = [&](auto&& self, TermId t) -> int64_t {
    int64_t& slot = memo[t];
    if (slot >= 0) return slot;
    const TermArena::Node& n = arena.nodes[t];
    if (n.op < 0) return slot = interp.monad.unit_at(nx, n.arg);
    const Operation& op = interp.sig.ops[static_cast<size_t>(n.op)];
    std::vector<int64_t> k(static_cast<size_t>(op.b.size));
    for (int64_t b = 0; b < op.b.size; ++b)
      k[static_cast<size_t>(b)] = self(self, arena.children[n.child_begin + b]);
    return slot = interp.monad.extend_at(op.b.size, nx, k,
                                         interp.gen[static_cast<size_t>(n.op)][static_cast<size_t>(n.arg)]);
  };
  for (TermId t = 0; t < arena.size(); ++t) eval(eval, t);
  return memo;
}

int64_t eval_term(const TermArena& arena, const Interpretation& interp, int64_t nx,
                  TermId t) {
  std::vector<int64_t> memo(arena.size(), -1);
  auto eval = [&](auto&& self, TermId id) -> int64_t {
    int64_t& slot = memo[id];
    if (slot >= 0) return slot;
    const TermArena::Node& n = arena.nodes[id];
    if (n.op < 0) return slot = interp.monad.unit_at(nx, n.arg);
    const Operation& op = interp.sig.ops[static_cast<size_t>(n.op)];
    std::vector<int64_t> k(static_cast<size_t>(op.b.size));
    for (int64_t b = 0; b < op.b.size; ++b)
      k[static_cast<size_t>(b)] = self(self, arena.children[n.child_begin + b]);
    return slot = interp.monad.extend_at(op.b.size, nx, k,
                                         interp.gen[static_cast<size_t>(n.op)][static_cast<size_t>(n.arg)]);
  };
  return eval(eval, t);
}

} // namespace efx
