#include "effectfactor/presets.hpp"

namespace efx {

namespace {

constexpr int64_t kDefaultParam = 2;

FinSet state_set(int64_t s) {
  std::vector<std::string> lbls;
  for (int64_t i = 0; i < s; ++i) lbls.push_back("s" + std::to_string(i));
  return {s, std::move(lbls)};
}

FinSet answer_set(int64_t a) {
  std::vector<std::string> lbls;
  for (int64_t i = 0; i < a; ++i) lbls.push_back("a" + std::to_string(i));
  return {a, std::move(lbls)};
}

FinSet unit_set() { return {1, {"()"}}; }

// s |-> (s, s) in the carrier of state at B = S
int64_t encode_read(int64_t s) {
  int64_t enc = 0, w = 1;
  const int64_t base = s * s;
  for (int64_t i = 0; i < s; ++i) { enc += (i * s + i) * w; w *= base; }
  return enc;
}

// s |-> ((), sp) in the carrier of state at B = 1
int64_t encode_write(int64_t s, int64_t sp) {
  int64_t enc = 0, w = 1;
  for (int64_t i = 0; i < s; ++i) { enc += sp * w; w *= s; }
  return enc;
}

// s |-> inl((), sp) in the carrier of state_exc at B = 1
int64_t encode_write_exc(int64_t s, int64_t sp) {
  int64_t enc = 0, w = 1;
  const int64_t base = s + 1;
  for (int64_t i = 0; i < s; ++i) { enc += sp * w; w *= base; }
  return enc;
}

} // namespace

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {
      "state-read-write", "state-write",      "state-read",
      "powerset-or",      "powerset-or-fail", "cont-abort",
      "stateexc-write",   "empty-signature",
  };
  return ids;
}

bool is_preset(const std::string& id) {
  for (const auto& s : preset_ids())
    if (s == id) return true;
  return false;
}

PresetInfo preset_info(const std::string& id, int64_t param) {
  const int64_t p = param > 0 ? param : kDefaultParam;
  if (id == "state-read-write")
    return {id, "global state, full signature {read, write}",
            {MonadKind::state, p}, SizeFormula::state, {2, 2, 2}};
  if (id == "state-write")
    return {id, "global state restricted to {write}; graded monad is the writer shape",
            {MonadKind::state, p}, SizeFormula::writer, {2, 2, 2}};
  if (id == "state-read")
    return {id, "global state restricted to {read}; graded monad is the reader shape",
            {MonadKind::state, p}, SizeFormula::reader, {2, 2, 2}};
  if (id == "powerset-or")
    return {id, "nondeterminism with binary choice only; nonempty subsets",
            {MonadKind::powerset, 0}, SizeFormula::nonempty_powerset, {2, 2, 2}};
  if (id == "powerset-or-fail")
    return {id, "nondeterminism with choice and failure; full powerset",
            {MonadKind::powerset, 0}, SizeFormula::powerset, {2, 2, 2}};
  if (id == "cont-abort")
    return {id, "continuations with abort; graded monad is the exception shape",
            {MonadKind::continuation, p}, SizeFormula::exception, {1, 2, 2}};
  if (id == "stateexc-write")
    return {id, "state with exceptions restricted to {write}",
            {MonadKind::state_exc, p}, SizeFormula::writer, {2, 2, 2}};
  if (id == "empty-signature")
    return {id, "no operations; graded monad collapses to the identity",
            {MonadKind::state, p}, SizeFormula::identity, {2, 2, 2}};
  throw ConfigError("unknown preset: " + id);
}

Interpretation make_preset(const std::string& id, int64_t param, int64_t max_carrier) {
  const PresetInfo info = preset_info(id, param);
  const int64_t p = info.monad.param;
  Monad monad(info.monad, max_carrier);

  if (id == "state-read-write" || id == "state-read" || id == "state-write") {
    Operation read{"read", unit_set(), state_set(p)};
    Operation write{"write", state_set(p), unit_set()};
    std::vector<Operation> ops;
    std::vector<std::vector<int64_t>> gen;
    if (id != "state-write") {
      ops.push_back(read);
      gen.push_back({encode_read(p)});
    }
    if (id != "state-read") {
      ops.push_back(write);
      std::vector<int64_t> g;
      for (int64_t s = 0; s < p; ++s) g.push_back(encode_write(p, s));
      gen.push_back(std::move(g));
    }
    return {std::move(monad), Signature(std::move(ops)), std::move(gen)};
  }
  if (id == "powerset-or" || id == "powerset-or-fail") {
    std::vector<Operation> ops{{"or", unit_set(), FinSet(2)}};
    std::vector<std::vector<int64_t>> gen{{3}}; // the full subset {0,1} of B
    if (id == "powerset-or-fail") {
      ops.push_back({"fail", unit_set(), FinSet(0)});
      gen.push_back({0}); // the empty subset, sole element of P(0)
    }
    return {std::move(monad), Signature(std::move(ops)), std::move(gen)};
  }
  if (id == "cont-abort") {
    std::vector<Operation> ops{{"abort", answer_set(p), FinSet(0)}};
    std::vector<int64_t> g;
    for (int64_t a = 0; a < p; ++a) g.push_back(a); // the constant run k |-> a
    return {std::move(monad), Signature(std::move(ops)), {std::move(g)}};
  }
  if (id == "stateexc-write") {
    std::vector<Operation> ops{{"write", state_set(p), unit_set()}};
    std::vector<int64_t> g;
    for (int64_t s = 0; s < p; ++s) g.push_back(encode_write_exc(p, s));
    return {std::move(monad), Signature(std::move(ops)), {std::move(g)}};
  }
  if (id == "empty-signature") return {std::move(monad), Signature{}, {}};
  throw ConfigError("unknown preset: " + id);
}

} // namespace efx
