#include "effectfactor/saturate.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace efx {

namespace {

struct Candidate {
  int64_t priority; // rank in the round's full lexicographic order
  int32_t op;
  int64_t arg;
  std::vector<uint32_t> children;
};

// value -> best candidate, minimum priority wins
using RoundHits = std::unordered_map<int64_t, Candidate>;

void note_hit(RoundHits& hits, int64_t value, int64_t priority, int32_t op, int64_t arg,
              std::span<const int64_t> tuple) {
  auto it = hits.find(value);
  if (it != hits.end() && it->second.priority <= priority) return;
  Candidate c;
  c.priority = priority;
  c.op = op;
  c.arg = arg;
  c.children.assign(tuple.begin(), tuple.end());
  hits.insert_or_assign(value, std::move(c));
}

void seed_units(const Interpretation& interp, int64_t nx, SaturatedObject& s) {
  s.object_size = nx;
  s.carrier = interp.monad.carrier_size(nx);
  s.t_to_r.assign(static_cast<size_t>(s.carrier), -1);
  for (int64_t x = 0; x < nx; ++x) {
    int64_t v = interp.monad.unit_at(nx, x);
    if (s.t_to_r[static_cast<size_t>(v)] >= 0) continue;
    s.t_to_r[static_cast<size_t>(v)] = s.size();
    s.elements.push_back(v);
    s.origins.push_back({-1, x, 0, 0});
  }
  s.layer_trace.push_back(s.size());
}

void append_new(SaturatedObject& s, RoundHits& hits) {
  std::vector<std::pair<int64_t, int64_t>> order; // (priority, value)
  order.reserve(hits.size());
  for (const auto& [value, cand] : hits) order.emplace_back(cand.priority, value);
  std::sort(order.begin(), order.end());
  for (const auto& [priority, value] : order) {
    const Candidate& c = hits.at(value);
    s.t_to_r[static_cast<size_t>(value)] = s.size();
    s.elements.push_back(value);
    SaturatedObject::Origin o;
    o.op = c.op;
    o.arg = c.arg;
    o.child_begin = static_cast<uint32_t>(s.child_pool.size());
    o.child_count = static_cast<uint32_t>(c.children.size());
    for (uint32_t ch : c.children) s.child_pool.push_back(ch);
    s.origins.push_back(o);
  }
}

// Enumeration strata for one round. Round 1 uses the full tuple space;
// later rounds only tuples with at least one child from the newest layer
// (everything older was enumerated before). A candidate's priority is its
// rank in the full lexicographic order, independent of the stratification,
// so witnesses do not depend on the execution policy.
struct Stratum {
  int32_t op;
  int64_t arg;
  int32_t first_new; // position forced into [p, m); -1 = unrestricted
  int64_t begin = 0;
  int64_t count = 0;
};

struct RoundPlan {
  std::vector<Stratum> strata;
  int64_t work = 0;
  // full-space priority offsets per (op, arg) block
  std::vector<int64_t> block_offset; // indexed by flattened (op, arg)
};

RoundPlan plan_round(const Signature& sig, int64_t m, int64_t p, bool first_round,
                     int64_t max_round_work) {
  RoundPlan plan;
  int64_t offset = 0;
  for (size_t oi = 0; oi < sig.ops.size(); ++oi) {
    const Operation& op = sig.ops[oi];
    const int64_t nb = op.b.size;
    int64_t full = checked_pow(m, nb);
    for (int64_t a = 0; a < op.a.size; ++a) {
      plan.block_offset.push_back(offset);
      offset += full;
      if (first_round) {
        Stratum st{static_cast<int32_t>(oi), a, -1, plan.work, full};
        if (full > 0) plan.strata.push_back(st);
        plan.work += full;
      } else {
        for (int64_t j = 0; j < nb; ++j) {
          int64_t cnt = checked_pow(p, j);
          cnt = checked_mul(cnt, m - p);
          cnt = checked_mul(cnt, checked_pow(m, nb - j - 1));
          if (cnt == 0) continue;
          plan.strata.push_back(
              {static_cast<int32_t>(oi), a, static_cast<int32_t>(j), plan.work, cnt});
          plan.work += cnt;
        }
      }
    }
  }
  if (plan.work > max_round_work)
    throw InstanceTooLarge("saturation round needs " + std::to_string(plan.work) +
                           " candidate evaluations, cap " +
                           std::to_string(max_round_work));
  return plan;
}

// Decodes the in-stratum index into a children tuple and returns the
// full-space lexicographic rank (the priority within the block).
int64_t decode_tuple(const Stratum& st, const Operation& op, int64_t m, int64_t p,
                     int64_t idx, std::vector<int64_t>& tuple) {
  const int64_t nb = op.b.size;
  tuple.resize(static_cast<size_t>(nb));
  if (st.first_new < 0) {
    for (int64_t i = nb; i-- > 0;) {
      tuple[static_cast<size_t>(i)] = idx % m;
      idx /= m;
    }
  } else {
    for (int64_t i = nb; i-- > st.first_new + 1;) {
      tuple[static_cast<size_t>(i)] = idx % m;
      idx /= m;
    }
    tuple[static_cast<size_t>(st.first_new)] = p + idx % (m - p);
    idx /= (m - p);
    for (int64_t i = st.first_new; i-- > 0;) {
      tuple[static_cast<size_t>(i)] = idx % p;
      idx /= p;
    }
  }
  int64_t rank = 0;
  for (int64_t i = 0; i < nb; ++i) rank = rank * m + tuple[static_cast<size_t>(i)];
  return rank;
}

bool run_round(const Interpretation& interp, SaturatedObject& s, int64_t p_prev,
               bool first_round, const SaturateOptions& opts) {
  const Signature& sig = interp.sig;
  const int64_t nx = s.object_size;
  const int64_t m = s.size();
  RoundPlan plan = plan_round(sig, m, p_prev, first_round, opts.max_round_work);
  if (plan.work == 0) return false;

  const bool par = opts.exec == Exec::parallel && plan.work > 1024;
  std::vector<RoundHits> per_thread(par ? max_threads() : 1);

#pragma omp parallel if (par)
  {
    RoundHits& hits = per_thread[par ? thread_id() : 0];
    std::vector<int64_t> tuple;
    std::vector<int64_t> k;
    // strata are contiguous index ranges; walk them per thread chunk
    size_t stratum = 0;
#pragma omp for schedule(static) nowait
    for (int64_t i = 0; i < plan.work; ++i) {
      while (i >= plan.strata[stratum].begin + plan.strata[stratum].count) ++stratum;
      while (i < plan.strata[stratum].begin) --stratum;
      const Stratum& st = plan.strata[stratum];
      const Operation& op = sig.ops[static_cast<size_t>(st.op)];
      int64_t rank = decode_tuple(st, op, m, p_prev, i - st.begin, tuple);
      const int64_t nb = op.b.size;
      k.resize(static_cast<size_t>(nb));
      for (int64_t b = 0; b < nb; ++b)
        k[static_cast<size_t>(b)] = s.elements[static_cast<size_t>(tuple[static_cast<size_t>(b)])];
      int64_t value = interp.monad.extend_at(
          nb, nx, k, interp.gen[static_cast<size_t>(st.op)][static_cast<size_t>(st.arg)]);
      if (s.t_to_r[static_cast<size_t>(value)] >= 0) continue;
      size_t block = 0;
      for (size_t oi = 0; oi < static_cast<size_t>(st.op); ++oi)
        block += sig.ops[oi].a.size;
      block += static_cast<size_t>(st.arg);
      int64_t priority = plan.block_offset[block] + rank;
      note_hit(hits, value, priority, st.op, st.arg,
               std::span<const int64_t>(tuple));
    }
  }

  RoundHits merged = std::move(per_thread[0]);
  for (size_t t = 1; t < per_thread.size(); ++t) {
    for (auto& [value, cand] : per_thread[t]) {
      auto it = merged.find(value);
      if (it == merged.end() || cand.priority < it->second.priority)
        merged[value] = std::move(cand);
    }
  }

  if (merged.empty()) return false;
  append_new(s, merged);
  return true;
}

} // namespace

SaturatedObject saturate_object(const Interpretation& interp, int64_t nx,
                                const SaturateOptions& opts) {
  SaturatedObject s;
  seed_units(interp, nx, s);
  int64_t p_prev = 0;
  bool first = true;
  while (!s.full()) {
    int64_t before = s.size();
    if (!run_round(interp, s, p_prev, first, opts)) break;
    p_prev = before;
    first = false;
    s.layer_trace.push_back(s.size());
    ++s.rounds;
  }
  return s;
}

SaturatedObject saturate_object_reference(const Interpretation& interp, int64_t nx,
                                          int64_t max_round_work) {
  SaturatedObject s;
  seed_units(interp, nx, s);
  const Signature& sig = interp.sig;
  bool first = true;
  while (!s.full()) {
    const int64_t m = s.size();
    // full-space work bound, mirroring the kernel's cap
    int64_t work = 0;
    for (const auto& op : sig.ops)
      work += checked_mul(op.a.size, checked_pow(m, op.b.size));
    if (work > max_round_work)
      throw InstanceTooLarge("saturation round needs " + std::to_string(work) +
                             " candidate evaluations, cap " +
                             std::to_string(max_round_work));
    RoundHits hits;
    int64_t offset = 0;
    for (size_t oi = 0; oi < sig.ops.size(); ++oi) {
      const Operation& op = sig.ops[oi];
      const int64_t nb = op.b.size;
      const int64_t full = checked_pow(m, nb);
      for (int64_t a = 0; a < op.a.size; ++a) {
        if (!first && nb == 0) { offset += full; continue; }
        std::vector<int64_t> tuple(static_cast<size_t>(nb), 0);
        std::vector<int64_t> k(static_cast<size_t>(nb));
        if (m == 0 && nb > 0) { offset += full; continue; }
        for (int64_t rank = 0; rank < full; ++rank) {
          int64_t rest = rank;
          for (int64_t i = nb; i-- > 0;) {
            tuple[static_cast<size_t>(i)] = rest % m;
            rest /= m;
          }
          for (int64_t b = 0; b < nb; ++b)
            k[static_cast<size_t>(b)] =
                s.elements[static_cast<size_t>(tuple[static_cast<size_t>(b)])];
          int64_t value = interp.monad.extend_at(nb, nx, k, interp.gen[oi][static_cast<size_t>(a)]);
          if (s.t_to_r[static_cast<size_t>(value)] >= 0) continue;
          note_hit(hits, value, offset + rank, static_cast<int32_t>(oi), a,
                   std::span<const int64_t>(tuple));
        }
        offset += full;
      }
    }
    if (hits.empty()) break;
    append_new(s, hits);
    s.layer_trace.push_back(s.size());
    ++s.rounds;
    first = false;
  }
  return s;
}

std::vector<int64_t> closure_round_additions(const Interpretation& interp,
                                             const SaturatedObject& s,
                                             int64_t max_round_work) {
  if (s.full()) return {};
  const Signature& sig = interp.sig;
  const int64_t m = s.size();
  int64_t work = 0;
  for (const auto& op : sig.ops)
    work += checked_mul(op.a.size, checked_pow(m, op.b.size));
  if (work > max_round_work)
    throw InstanceTooLarge("closure re-check needs " + std::to_string(work) +
                           " evaluations, cap " + std::to_string(max_round_work));
  std::vector<int64_t> added;
  std::vector<char> seen(static_cast<size_t>(s.carrier), 0);
  for (size_t oi = 0; oi < sig.ops.size(); ++oi) {
    const Operation& op = sig.ops[oi];
    const int64_t nb = op.b.size;
    const int64_t full = checked_pow(m, nb);
    if (m == 0 && nb > 0) continue;
    std::vector<int64_t> k(static_cast<size_t>(nb));
    for (int64_t a = 0; a < op.a.size; ++a) {
      for (int64_t rank = 0; rank < full; ++rank) {
        int64_t rest = rank;
        for (int64_t i = nb; i-- > 0;) {
          k[static_cast<size_t>(i)] = s.elements[static_cast<size_t>(rest % m)];
          rest /= m;
        }
        int64_t value = interp.monad.extend_at(nb, s.object_size, k,
                                               interp.gen[oi][static_cast<size_t>(a)]);
        if (s.t_to_r[static_cast<size_t>(value)] < 0 && !seen[static_cast<size_t>(value)]) {
          seen[static_cast<size_t>(value)] = 1;
          added.push_back(value);
        }
      }
    }
  }
  return added;
}

std::vector<int64_t> eval_witnesses(const SaturatedObject& s, const Interpretation& interp) {
  // children always have smaller R index, so one forward pass suffices
  std::vector<int64_t> values(s.elements.size());
  std::vector<int64_t> k;
  for (size_t r = 0; r < s.origins.size(); ++r) {
    const auto& o = s.origins[r];
    if (o.op < 0) {
      values[r] = interp.monad.unit_at(s.object_size, o.arg);
      continue;
    }
    const Operation& op = interp.sig.ops[static_cast<size_t>(o.op)];
    k.resize(static_cast<size_t>(op.b.size));
    for (uint32_t i = 0; i < o.child_count; ++i)
      k[i] = values[s.child_pool[o.child_begin + i]];
    values[r] = interp.monad.extend_at(op.b.size, s.object_size, k,
                                       interp.gen[static_cast<size_t>(o.op)][static_cast<size_t>(o.arg)]);
  }
  return values;
}

int witness_depth(const SaturatedObject& s, int64_t r) {
  const auto& o = s.origins[static_cast<size_t>(r)];
  if (o.op < 0) return 0;
  int d = 0;
  for (uint32_t i = 0; i < o.child_count; ++i)
    d = std::max(d, witness_depth(s, s.child_pool[o.child_begin + i]));
  return d + 1;
}

std::string render_witness(const SaturatedObject& s, const Signature& sig, int64_t r,
                           const FinSet* x) {
  const auto& o = s.origins[static_cast<size_t>(r)];
  if (o.op < 0) {
    if (x && x->labels) return x->label(o.arg);
    return "x" + std::to_string(o.arg);
  }
  const Operation& op = sig.ops[static_cast<size_t>(o.op)];
  std::ostringstream os;
  os << op.name << "(" << op.a.label(o.arg);
  if (o.child_count > 0) {
    os << ";";
    for (uint32_t i = 0; i < o.child_count; ++i)
      os << (i ? ", " : " ") << render_witness(s, sig, s.child_pool[o.child_begin + i], x);
  }
  os << ")";
  return os.str();
}

FactoredMonad::FactoredMonad(Interpretation interp, SaturateOptions opts)
    : interp_(std::move(interp)), opts_(opts) {}

const SaturatedObject& FactoredMonad::saturate(int64_t nx) {
  auto it = entries_.find(nx);
  if (it != entries_.end()) return it->second;
  return entries_.emplace(nx, saturate_object(interp_, nx, opts_)).first->second;
}

const SaturatedObject& FactoredMonad::entry(int64_t nx) const {
  auto it = entries_.find(nx);
  if (it == entries_.end())
    throw std::invalid_argument("object of size " + std::to_string(nx) +
                                " has not been saturated");
  return it->second;
}

SaturatedObject& FactoredMonad::entry_mut(int64_t nx) {
  return const_cast<SaturatedObject&>(entry(nx));
}

FinFun FactoredMonad::inclusion(int64_t nx) const {
  const SaturatedObject& s = entry(nx);
  return {FinSet(s.size()), FinSet(s.carrier), s.elements};
}

int64_t FactoredMonad::r_unit_at(int64_t nx, int64_t x) const {
  const SaturatedObject& s = entry(nx);
  int64_t r = s.r_of(interp_.monad.unit_at(nx, x));
  if (r < 0)
    throw FactorizationViolation("unit value at x=" + std::to_string(x) +
                           " lies outside R at |X|=" + std::to_string(nx));
  return r;
}

std::vector<int64_t> FactoredMonad::r_unit_table(int64_t nx) const {
  std::vector<int64_t> t(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x) t[static_cast<size_t>(x)] = r_unit_at(nx, x);
  return t;
}

int64_t FactoredMonad::r_extend_at(int64_t nx, int64_t ny, std::span<const int64_t> k,
                                   int64_t r) const {
  const SaturatedObject& sx = entry(nx);
  const SaturatedObject& sy = entry(ny);
  std::vector<int64_t> kt(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x)
    kt[static_cast<size_t>(x)] = sy.elements[static_cast<size_t>(k[static_cast<size_t>(x)])];
  int64_t v = interp_.monad.extend_at(nx, ny, kt, sx.elements[static_cast<size_t>(r)]);
  int64_t out = sy.r_of(v);
  if (out < 0) {
    std::ostringstream os;
    os << "bind left R: input witness " << render_witness(sx, interp_.sig, r)
       << " at |X|=" << nx << " maps to " << interp_.monad.decode(ny, v)
       << " outside R at |Y|=" << ny;
    throw FactorizationViolation(os.str());
  }
  return out;
}

std::vector<int64_t> FactoredMonad::r_bind_table(int64_t nx, int64_t ny,
                                                 std::span<const int64_t> k) const {
  const SaturatedObject& sx = entry(nx);
  std::vector<int64_t> t(static_cast<size_t>(sx.size()));
  for (int64_t r = 0; r < sx.size(); ++r)
    t[static_cast<size_t>(r)] = r_extend_at(nx, ny, k, r);
  return t;
}

std::vector<int64_t> FactoredMonad::r_map_table(int64_t nx, int64_t ny,
                                                std::span<const int64_t> f) const {
  const SaturatedObject& sx = entry(nx);
  const SaturatedObject& sy = entry(ny);
  std::vector<int64_t> kt(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x)
    kt[static_cast<size_t>(x)] = interp_.monad.unit_at(ny, f[static_cast<size_t>(x)]);
  std::vector<int64_t> t(static_cast<size_t>(sx.size()));
  for (int64_t r = 0; r < sx.size(); ++r) {
    int64_t v = interp_.monad.extend_at(nx, ny, kt, sx.elements[static_cast<size_t>(r)]);
    int64_t out = sy.r_of(v);
    if (out < 0)
      throw FactorizationViolation("functor action leaves R at |Y|=" + std::to_string(ny) +
                             ": " + interp_.monad.decode(ny, v));
    t[static_cast<size_t>(r)] = out;
  }
  return t;
}

int64_t FactoredMonad::r_strength_at(int64_t nx, int64_t ny, int64_t x, int64_t r) const {
  const SaturatedObject& sy = entry(ny);
  const SaturatedObject& sxy = entry(checked_mul(nx, ny));
  int64_t v = interp_.monad.strength_at(nx, ny, x, sy.elements[static_cast<size_t>(r)]);
  int64_t out = sxy.r_of(v);
  if (out < 0) {
    std::ostringstream os;
    os << "strength leaves R: st(" << x << ", " << render_witness(sy, interp_.sig, r)
       << ") = " << interp_.monad.decode(nx * ny, v) << " outside R at |XxY|="
       << nx * ny;
    throw FactorizationViolation(os.str());
  }
  return out;
}

int64_t FactoredMonad::r_gen(size_t op_index, int64_t a) const {
  const Operation& op = interp_.sig.ops[op_index];
  const SaturatedObject& sb = entry(op.b.size);
  int64_t r = sb.r_of(interp_.gen[op_index][static_cast<size_t>(a)]);
  if (r < 0)
    throw FactorizationViolation("generic effect of " + op.name + " at a=" + std::to_string(a) +
                           " lies outside R at |B|=" + std::to_string(op.b.size));
  return r;
}

StabilizationReport FactoredMonad::stabilization(int64_t nx) const {
  const SaturatedObject& s = entry(nx);
  StabilizationReport rep;
  rep.layer_trace = s.layer_trace;
  rep.rounds = s.rounds;
  rep.carrier = s.carrier;
  rep.monotone = true;
  for (size_t i = 1; i < s.layer_trace.size(); ++i)
    if (s.layer_trace[i] <= s.layer_trace[i - 1]) rep.monotone = false;
  rep.within_bound = s.rounds <= s.carrier;
  rep.closed = closure_round_additions(interp_, s, opts_.max_round_work).empty();
  rep.final_matches = !s.layer_trace.empty() && s.layer_trace.back() == s.size();
  return rep;
}

} // namespace efx
