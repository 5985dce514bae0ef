#pragma once

#include <span>
#include <string>
#include <vector>

#include "effectfactor/finset.hpp"

namespace efx {

enum class MonadKind {
  identity,
  exception,    // X + E
  reader,       // X^S
  state,        // (X x S)^S
  powerset,     // subsets of X as bitmasks
  continuation, // A^(A^X)
  state_exc,    // ((X x S) + 1)^S, error discards the state
};

/// Catalog entry: a kind plus its one set parameter (|E|, |S| or |A|;
/// ignored for identity and powerset).
struct MonadSpec {
  MonadKind kind = MonadKind::identity;
  int64_t param = 0;

  std::string name() const;
  bool has_param() const;

  friend bool operator==(const MonadSpec& a, const MonadSpec& b) {
    return a.kind == b.kind && (!a.has_param() || a.param == b.param);
  }
};

MonadKind monad_kind_from_string(const std::string& s);
std::string to_string(MonadKind k);

/// A concrete strong monad on finite sets. Carriers use the canonical
/// index encodings of the finset module; all operations are pure tables.
class Monad {
public:
  explicit Monad(MonadSpec spec, int64_t max_carrier = kDefaultCarrierCap);

  const MonadSpec& spec() const { return spec_; }
  int64_t max_carrier() const { return cap_; }

  /// |T X| for |X| = n, checked against the cap.
  int64_t carrier_size(int64_t n) const;
  FinSet carrier(const FinSet& x) const;

  int64_t unit_at(int64_t n, int64_t v) const;
  FinFun unit(const FinSet& x) const;

  /// Kleisli extension applied pointwise: k is the table of a map
  /// X -> T Y (length nx), t an element of T X.
  int64_t extend_at(int64_t nx, int64_t ny, std::span<const int64_t> k, int64_t t) const;

  /// k : X -> T Y as a FinFun (cod = carrier of Y); returns T X -> T Y.
  FinFun kleisli_extend(const FinFun& k, int64_t ny) const;

  /// Functor action, derived as extend(unit . f).
  int64_t fmap_at(int64_t nx, int64_t ny, std::span<const int64_t> f, int64_t t) const;
  FinFun fmap(const FinFun& f) const;

  /// Canonical strength X x T Y -> T (X x Y): st(x,t) = fmap(y |-> (x,y))(t).
  int64_t strength_at(int64_t nx, int64_t ny, int64_t x, int64_t t) const;
  FinFun strength(const FinSet& x, const FinSet& y) const;

  /// Human-readable decoding of an element of T X.
  std::string decode(int64_t n, int64_t v, const FinSet* x = nullptr) const;

  /// Units are distinct for every catalog kind except degenerate
  /// parameters (reader/state with |S| = 0, continuation with |A| < 2).
  bool unit_injective() const;

private:
  MonadSpec spec_;
  int64_t cap_;
};

} // namespace efx
