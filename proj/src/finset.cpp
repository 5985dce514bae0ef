#include "effectfactor/finset.hpp"

#include <algorithm>
#include <unordered_set>

namespace efx {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw InstanceTooLarge("index space overflow in product " + std::to_string(a) +
                           " * " + std::to_string(b));
  }
  return r;
}

int64_t checked_pow(int64_t b, int64_t e) {
  int64_t r = 1;
  for (int64_t i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

FinSet::FinSet(int64_t n) : size(n) {
  if (n < 0) throw std::invalid_argument("FinSet size must be non-negative");
}

FinSet::FinSet(int64_t n, std::vector<std::string> lbls) : FinSet(n) {
  if (static_cast<int64_t>(lbls.size()) != n)
    throw std::invalid_argument("FinSet labels must be exactly size-many");
  std::unordered_set<std::string> seen(lbls.begin(), lbls.end());
  if (static_cast<int64_t>(seen.size()) != n)
    throw std::invalid_argument("FinSet labels must be pairwise distinct");
  labels = std::move(lbls);
}

std::string FinSet::label(int64_t i) const {
  if (labels) return (*labels)[static_cast<size_t>(i)];
  return std::to_string(i);
}

FinFun::FinFun(FinSet d, FinSet c, std::vector<int64_t> t)
    : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
  if (static_cast<int64_t>(table.size()) != dom.size)
    throw std::invalid_argument("FinFun table length must equal |dom|");
  for (int64_t v : table)
    if (v < 0 || v >= cod.size)
      throw std::invalid_argument("FinFun table entry out of codomain range");
}

FinFun identity_fun(const FinSet& x) {
  std::vector<int64_t> t(static_cast<size_t>(x.size));
  for (int64_t i = 0; i < x.size; ++i) t[static_cast<size_t>(i)] = i;
  return {x, x, std::move(t)};
}

FinFun compose(const FinFun& g, const FinFun& f) {
  if (!(f.cod == g.dom))
    throw std::invalid_argument("compose: codomain of f must equal domain of g");
  std::vector<int64_t> t(f.table.size());
  for (size_t i = 0; i < f.table.size(); ++i)
    t[i] = g.table[static_cast<size_t>(f.table[i])];
  return {f.dom, g.cod, std::move(t)};
}

bool is_surjective(const FinFun& f) {
  std::vector<char> hit(static_cast<size_t>(f.cod.size), 0);
  int64_t count = 0;
  for (int64_t v : f.table) {
    if (!hit[static_cast<size_t>(v)]) {
      hit[static_cast<size_t>(v)] = 1;
      ++count;
    }
  }
  return count == f.cod.size;
}

bool is_injective(const FinFun& f) {
  std::vector<char> hit(static_cast<size_t>(f.cod.size), 0);
  for (int64_t v : f.table) {
    if (hit[static_cast<size_t>(v)]) return false;
    hit[static_cast<size_t>(v)] = 1;
  }
  return true;
}

Product product(const FinSet& x, const FinSet& y, int64_t cap) {
  int64_t n = checked_mul(x.size, y.size);
  if (n > cap)
    throw InstanceTooLarge("product carrier " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
  FinSet obj(n);
  std::vector<int64_t> p1(static_cast<size_t>(n)), p2(static_cast<size_t>(n));
  for (int64_t i = 0; i < x.size; ++i)
    for (int64_t j = 0; j < y.size; ++j) {
      p1[static_cast<size_t>(i * y.size + j)] = i;
      p2[static_cast<size_t>(i * y.size + j)] = j;
    }
  return {obj, FinFun(obj, x, std::move(p1)), FinFun(obj, y, std::move(p2))};
}

FinFun pairing(const Product& p, const FinFun& f, const FinFun& g) {
  if (!(f.dom == g.dom)) throw std::invalid_argument("pairing: domains differ");
  if (!(f.cod == p.proj1.cod && g.cod == p.proj2.cod))
    throw std::invalid_argument("pairing: codomains do not match the product");
  std::vector<int64_t> t(f.table.size());
  for (size_t i = 0; i < f.table.size(); ++i) t[i] = p.pair(f.table[i], g.table[i]);
  return {f.dom, p.obj, std::move(t)};
}

Coproduct coproduct(const FinSet& x, const FinSet& y, int64_t cap) {
  int64_t n = x.size + y.size;
  if (n > cap)
    throw InstanceTooLarge("coproduct carrier " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
  FinSet obj(n);
  std::vector<int64_t> l(static_cast<size_t>(x.size)), r(static_cast<size_t>(y.size));
  for (int64_t i = 0; i < x.size; ++i) l[static_cast<size_t>(i)] = i;
  for (int64_t j = 0; j < y.size; ++j) r[static_cast<size_t>(j)] = x.size + j;
  return {obj, FinFun(x, obj, std::move(l)), FinFun(y, obj, std::move(r))};
}

FinFun copairing(const Coproduct& c, const FinFun& f, const FinFun& g) {
  if (!(f.cod == g.cod)) throw std::invalid_argument("copairing: codomains differ");
  if (!(f.dom == c.inl.dom && g.dom == c.inr.dom))
    throw std::invalid_argument("copairing: domains do not match the coproduct");
  std::vector<int64_t> t(static_cast<size_t>(c.obj.size));
  for (size_t i = 0; i < f.table.size(); ++i) t[i] = f.table[i];
  for (size_t j = 0; j < g.table.size(); ++j) t[f.table.size() + j] = g.table[j];
  return {c.obj, f.cod, std::move(t)};
}

int64_t Exponential::apply(int64_t enc, int64_t b) const {
  int64_t base = to.size;
  for (int64_t i = 0; i < b; ++i) enc /= base;
  return enc % base;
}

int64_t Exponential::tabulate(std::span<const int64_t> g) const {
  if (static_cast<int64_t>(g.size()) != from.size)
    throw std::invalid_argument("tabulate: table length must equal |B|");
  int64_t enc = 0, w = 1;
  for (int64_t b = 0; b < from.size; ++b) {
    int64_t v = g[static_cast<size_t>(b)];
    if (v < 0 || v >= to.size)
      throw std::invalid_argument("tabulate: value out of range");
    enc += v * w;
    if (b + 1 < from.size) w = checked_mul(w, to.size);
  }
  return enc;
}

Exponential exponential(const FinSet& b, const FinSet& c, int64_t cap) {
  int64_t n = checked_pow(c.size, b.size);
  if (n > cap)
    throw InstanceTooLarge("exponential carrier " + std::to_string(c.size) + "^" +
                           std::to_string(b.size) + " = " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
  return {FinSet(n), b, c};
}

Factorization factorize(const FinFun& f) {
  std::vector<int64_t> cod_to_mid(static_cast<size_t>(f.cod.size), -1);
  std::vector<int64_t> e_table(f.table.size());
  std::vector<int64_t> n_table;
  for (size_t i = 0; i < f.table.size(); ++i) {
    int64_t v = f.table[i];
    if (cod_to_mid[static_cast<size_t>(v)] < 0) {
      cod_to_mid[static_cast<size_t>(v)] = static_cast<int64_t>(n_table.size());
      n_table.push_back(v);
    }
    e_table[i] = cod_to_mid[static_cast<size_t>(v)];
  }
  FinSet mid(static_cast<int64_t>(n_table.size()));
  if (f.cod.labels) {
    std::vector<std::string> lbls;
    lbls.reserve(n_table.size());
    for (int64_t v : n_table) lbls.push_back(f.cod.label(v));
    mid = FinSet(mid.size, std::move(lbls));
  }
  return {FinFun(f.dom, mid, std::move(e_table)), mid,
          FinFun(mid, f.cod, std::move(n_table))};
}

FinFun diagonal_fill(const FinFun& e, const FinFun& m, const FinFun& top,
                     const FinFun& bottom) {
  if (!is_surjective(e)) throw std::invalid_argument("diagonal_fill: e is not surjective");
  if (!is_injective(m)) throw std::invalid_argument("diagonal_fill: m is not injective");
  if (!(top.dom == e.dom && top.cod == m.dom))
    throw std::invalid_argument("diagonal_fill: top must map dom(e) -> dom(m)");
  if (!(bottom.dom == e.cod && bottom.cod == m.cod))
    throw std::invalid_argument("diagonal_fill: bottom must map cod(e) -> cod(m)");
  if (!(compose(m, top) == compose(bottom, e)))
    throw std::invalid_argument("diagonal_fill: square does not commute");

  // d(e(a)) = top(a) is forced; surjectivity of e covers all of cod(e),
  // and commutativity with m injective makes it well-defined.
  std::vector<int64_t> d(static_cast<size_t>(e.cod.size), -1);
  for (size_t a = 0; a < e.table.size(); ++a) {
    int64_t b = e.table[a];
    int64_t v = top.table[a];
    if (d[static_cast<size_t>(b)] >= 0 && d[static_cast<size_t>(b)] != v)
      throw std::invalid_argument("diagonal_fill: top not constant on a fiber of e");
    d[static_cast<size_t>(b)] = v;
  }
  return {e.cod, m.dom, std::move(d)};
}

} // namespace efx
