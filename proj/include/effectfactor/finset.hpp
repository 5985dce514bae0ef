#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effectfactor/errors.hpp"

namespace efx {

inline constexpr int64_t kDefaultCarrierCap = 1'000'000;

/// Multiply with overflow check; overflow signals instance-too-large.
int64_t checked_mul(int64_t a, int64_t b);

/// b^e with overflow check; 0^0 = 1.
int64_t checked_pow(int64_t b, int64_t e);

/// A finite set. Elements are the canonical indices 0..size-1; labels,
/// when present, are display strings only and do not affect identity.
struct FinSet {
  int64_t size = 0;
  std::optional<std::vector<std::string>> labels;

  FinSet() = default;
  explicit FinSet(int64_t n);
  FinSet(int64_t n, std::vector<std::string> lbls);

  std::string label(int64_t i) const;

  // Identity is cardinality; labels are presentation metadata.
  friend bool operator==(const FinSet& a, const FinSet& b) { return a.size == b.size; }
};

/// A total function as a table of codomain indices.
struct FinFun {
  FinSet dom;
  FinSet cod;
  std::vector<int64_t> table;

  FinFun() = default;
  FinFun(FinSet d, FinSet c, std::vector<int64_t> t);

  int64_t operator()(int64_t x) const { return table[static_cast<size_t>(x)]; }

  friend bool operator==(const FinFun& a, const FinFun& b) {
    return a.dom == b.dom && a.cod == b.cod && a.table == b.table;
  }
};

FinFun identity_fun(const FinSet& x);

/// g after f.
FinFun compose(const FinFun& g, const FinFun& f);

bool is_surjective(const FinFun& f);
bool is_injective(const FinFun& f);

/// X x Y with the lexicographic pairing (x,y) |-> x*|Y| + y.
struct Product {
  FinSet obj;
  FinFun proj1;
  FinFun proj2;
  int64_t pair(int64_t x, int64_t y) const { return x * proj2.cod.size + y; }
};
Product product(const FinSet& x, const FinSet& y, int64_t cap = kDefaultCarrierCap);

/// The mediating map <f,g> : Z -> X x Y.
FinFun pairing(const Product& p, const FinFun& f, const FinFun& g);

/// X + Y; left summand at 0..|X|-1, right offset by |X|.
struct Coproduct {
  FinSet obj;
  FinFun inl;
  FinFun inr;
};
Coproduct coproduct(const FinSet& x, const FinSet& y, int64_t cap = kDefaultCarrierCap);

/// The mediating map [f,g] : X + Y -> Z.
FinFun copairing(const Coproduct& c, const FinFun& f, const FinFun& g);

/// C^B: all functions B -> C. A function g is the base-|C| numeral with
/// digit g(b) at position b.
struct Exponential {
  FinSet obj;
  FinSet from; // B
  FinSet to;   // C

  int64_t apply(int64_t enc, int64_t b) const;
  int64_t tabulate(std::span<const int64_t> g) const;
};
Exponential exponential(const FinSet& b, const FinSet& c, int64_t cap = kDefaultCarrierCap);

/// f = n . e with e surjective onto the image and n injective.
/// mid elements are ordered by first occurrence in f's table.
struct Factorization {
  FinFun e;
  FinSet mid;
  FinFun n;
};
Factorization factorize(const FinFun& f);

/// The unique d with d.e = top and m.d = bottom for a commuting square
/// with e surjective and m injective. Preconditions are checked;
/// d is forced pointwise, so existence implies uniqueness.
FinFun diagonal_fill(const FinFun& e, const FinFun& m, const FinFun& top,
                     const FinFun& bottom);

} // namespace efx
