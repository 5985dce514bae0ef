#include "effectfactor/monad.hpp"

#include <sstream>

namespace efx {

namespace {

int64_t digit(int64_t enc, int64_t pos, int64_t base) {
  for (int64_t i = 0; i < pos; ++i) enc /= base;
  return enc % base;
}

} // namespace

std::string to_string(MonadKind k) {
  switch (k) {
    case MonadKind::identity: return "identity";
    case MonadKind::exception: return "exception";
    case MonadKind::reader: return "reader";
    case MonadKind::state: return "state";
    case MonadKind::powerset: return "powerset";
    case MonadKind::continuation: return "continuation";
    case MonadKind::state_exc: return "state_exc";
  }
  return "?";
}

MonadKind monad_kind_from_string(const std::string& s) {
  if (s == "identity") return MonadKind::identity;
  if (s == "exception") return MonadKind::exception;
  if (s == "reader") return MonadKind::reader;
  if (s == "state") return MonadKind::state;
  if (s == "powerset") return MonadKind::powerset;
  if (s == "continuation") return MonadKind::continuation;
  if (s == "state_exc") return MonadKind::state_exc;
  throw ConfigError("unknown monad kind: " + s);
}

bool MonadSpec::has_param() const {
  return kind == MonadKind::exception || kind == MonadKind::reader ||
         kind == MonadKind::state || kind == MonadKind::continuation ||
         kind == MonadKind::state_exc;
}

std::string MonadSpec::name() const {
  if (!has_param()) return to_string(kind);
  return to_string(kind) + "(" + std::to_string(param) + ")";
}

Monad::Monad(MonadSpec spec, int64_t max_carrier) : spec_(spec), cap_(max_carrier) {
  if (spec_.has_param() && spec_.param < 0)
    throw std::invalid_argument("monad parameter must be non-negative");
}

int64_t Monad::carrier_size(int64_t n) const {
  const int64_t p = spec_.param;
  int64_t size = 0;
  switch (spec_.kind) {
    case MonadKind::identity: size = n; break;
    case MonadKind::exception: size = n + p; break;
    case MonadKind::reader: size = checked_pow(n, p); break;
    case MonadKind::state: size = checked_pow(checked_mul(n, p), p); break;
    case MonadKind::powerset: size = checked_pow(2, n); break;
    case MonadKind::continuation:
      size = checked_pow(p, checked_pow(p, n));
      break;
    case MonadKind::state_exc:
      size = checked_pow(checked_mul(n, p) + 1, p);
      break;
  }
  if (size > cap_)
    throw InstanceTooLarge(spec_.name() + " carrier at |X|=" + std::to_string(n) +
                           " has " + std::to_string(size) + " elements, cap " +
                           std::to_string(cap_));
  return size;
}

FinSet Monad::carrier(const FinSet& x) const { return FinSet(carrier_size(x.size)); }

int64_t Monad::unit_at(int64_t n, int64_t v) const {
  const int64_t p = spec_.param;
  switch (spec_.kind) {
    case MonadKind::identity:
    case MonadKind::exception:
      return v;
    case MonadKind::reader: {
      // constant function s |-> v
      int64_t enc = 0, w = 1;
      for (int64_t s = 0; s < p; ++s) { enc += v * w; w *= n; }
      return enc;
    }
    case MonadKind::state: {
      // s |-> (v, s)
      int64_t enc = 0, w = 1;
      const int64_t base = n * p;
      for (int64_t s = 0; s < p; ++s) { enc += (v * p + s) * w; w *= base; }
      return enc;
    }
    case MonadKind::powerset:
      return int64_t{1} << v;
    case MonadKind::continuation: {
      // k |-> k(v); k ranges over A^X, encoded base p with digit k(x) at x.
      const int64_t nk = checked_pow(p, n);
      int64_t enc = 0, w = 1;
      for (int64_t kidx = 0; kidx < nk; ++kidx) {
        enc += digit(kidx, v, p) * w;
        if (kidx + 1 < nk) w = checked_mul(w, p);
      }
      return enc;
    }
    case MonadKind::state_exc: {
      // s |-> inl(v, s)
      int64_t enc = 0, w = 1;
      const int64_t base = n * p + 1;
      for (int64_t s = 0; s < p; ++s) { enc += (v * p + s) * w; w *= base; }
      return enc;
    }
  }
  return 0;
}

FinFun Monad::unit(const FinSet& x) const {
  FinSet tx = carrier(x);
  std::vector<int64_t> t(static_cast<size_t>(x.size));
  for (int64_t v = 0; v < x.size; ++v)
    t[static_cast<size_t>(v)] = unit_at(x.size, v);
  return {x, tx, std::move(t)};
}

int64_t Monad::extend_at(int64_t nx, int64_t ny, std::span<const int64_t> k,
                         int64_t t) const {
  const int64_t p = spec_.param;
  switch (spec_.kind) {
    case MonadKind::identity:
      return k[static_cast<size_t>(t)];
    case MonadKind::exception:
      return t < nx ? k[static_cast<size_t>(t)] : ny + (t - nx);
    case MonadKind::reader: {
      // result(s) = k(t(s))(s)
      int64_t enc = 0, w = 1, rest = t;
      for (int64_t s = 0; s < p; ++s) {
        int64_t x = rest % nx;
        rest /= nx;
        enc += digit(k[static_cast<size_t>(x)], s, ny) * w;
        w *= ny;
      }
      return enc;
    }
    case MonadKind::state: {
      // result(s) = k(x)(s') where t(s) = (x, s')
      const int64_t bin = nx * p, bout = ny * p;
      int64_t enc = 0, w = 1, rest = t;
      for (int64_t s = 0; s < p; ++s) {
        int64_t d = rest % bin;
        rest /= bin;
        int64_t x = d / p, s2 = d % p;
        enc += digit(k[static_cast<size_t>(x)], s2, bout) * w;
        w *= bout;
      }
      return enc;
    }
    case MonadKind::powerset: {
      int64_t out = 0;
      for (int64_t x = 0; x < nx; ++x)
        if (t & (int64_t{1} << x)) out |= k[static_cast<size_t>(x)];
      return out;
    }
    case MonadKind::continuation: {
      // result(h) = t(x |-> k(x)(h)) for h : Y -> A
      const int64_t nh = checked_pow(p, ny);
      int64_t enc = 0, w = 1;
      for (int64_t h = 0; h < nh; ++h) {
        int64_t kx = 0, kw = 1;
        for (int64_t x = 0; x < nx; ++x) {
          kx += digit(k[static_cast<size_t>(x)], h, p) * kw;
          kw *= p;
        }
        enc += digit(t, kx, p) * w;
        if (h + 1 < nh) w = checked_mul(w, p);
      }
      return enc;
    }
    case MonadKind::state_exc: {
      // error short-circuits and discards the state
      const int64_t bin = nx * p + 1, bout = ny * p + 1;
      const int64_t err_in = nx * p, err_out = ny * p;
      int64_t enc = 0, w = 1, rest = t;
      for (int64_t s = 0; s < p; ++s) {
        int64_t d = rest % bin;
        rest /= bin;
        int64_t out;
        if (d == err_in) {
          out = err_out;
        } else {
          int64_t x = d / p, s2 = d % p;
          out = digit(k[static_cast<size_t>(x)], s2, bout);
        }
        enc += out * w;
        w *= bout;
      }
      return enc;
    }
  }
  return 0;
}

FinFun Monad::kleisli_extend(const FinFun& k, int64_t ny) const {
  const int64_t nx = k.dom.size;
  if (k.cod.size != carrier_size(ny))
    throw std::invalid_argument("kleisli_extend: codomain is not the carrier of Y");
  FinSet tx(carrier_size(nx)), ty(carrier_size(ny));
  std::vector<int64_t> t(static_cast<size_t>(tx.size));
  for (int64_t i = 0; i < tx.size; ++i)
    t[static_cast<size_t>(i)] = extend_at(nx, ny, k.table, i);
  return {tx, ty, std::move(t)};
}

int64_t Monad::fmap_at(int64_t nx, int64_t ny, std::span<const int64_t> f,
                       int64_t t) const {
  std::vector<int64_t> k(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x)
    k[static_cast<size_t>(x)] = unit_at(ny, f[static_cast<size_t>(x)]);
  return extend_at(nx, ny, k, t);
}

FinFun Monad::fmap(const FinFun& f) const {
  const int64_t nx = f.dom.size, ny = f.cod.size;
  std::vector<int64_t> k(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x)
    k[static_cast<size_t>(x)] = unit_at(ny, f.table[static_cast<size_t>(x)]);
  FinSet tx(carrier_size(nx)), ty(carrier_size(ny));
  std::vector<int64_t> t(static_cast<size_t>(tx.size));
  for (int64_t i = 0; i < tx.size; ++i)
    t[static_cast<size_t>(i)] = extend_at(nx, ny, k, i);
  return {tx, ty, std::move(t)};
}

int64_t Monad::strength_at(int64_t nx, int64_t ny, int64_t x, int64_t t) const {
  // fmap(y |-> (x, y)) applied to t
  std::vector<int64_t> f(static_cast<size_t>(ny));
  for (int64_t y = 0; y < ny; ++y) f[static_cast<size_t>(y)] = x * ny + y;
  return fmap_at(ny, checked_mul(nx, ny), f, t);
}

FinFun Monad::strength(const FinSet& x, const FinSet& y) const {
  const int64_t nx = x.size, ny = y.size;
  const int64_t nxy = checked_mul(nx, ny);
  FinSet ty(carrier_size(ny)), txy(carrier_size(nxy));
  Product dom = product(x, ty, cap_);
  std::vector<int64_t> t(static_cast<size_t>(dom.obj.size));
  for (int64_t xi = 0; xi < nx; ++xi) {
    std::vector<int64_t> k(static_cast<size_t>(ny));
    for (int64_t yi = 0; yi < ny; ++yi)
      k[static_cast<size_t>(yi)] = unit_at(nxy, xi * ny + yi);
    for (int64_t ti = 0; ti < ty.size; ++ti)
      t[static_cast<size_t>(xi * ty.size + ti)] = extend_at(ny, nxy, k, ti);
  }
  return {dom.obj, txy, std::move(t)};
}

bool Monad::unit_injective() const {
  switch (spec_.kind) {
    case MonadKind::identity:
    case MonadKind::exception:
    case MonadKind::powerset:
      return true;
    case MonadKind::reader:
    case MonadKind::state:
    case MonadKind::state_exc:
      return spec_.param >= 1;
    case MonadKind::continuation:
      return spec_.param >= 2;
  }
  return false;
}

std::string Monad::decode(int64_t n, int64_t v, const FinSet* x) const {
  const int64_t p = spec_.param;
  auto lbl = [&](int64_t i) { return x ? x->label(i) : "x" + std::to_string(i); };
  std::ostringstream out;
  switch (spec_.kind) {
    case MonadKind::identity:
      out << lbl(v);
      break;
    case MonadKind::exception:
      if (v < n) out << "ok " << lbl(v);
      else out << "err e" << (v - n);
      break;
    case MonadKind::reader: {
      out << "{";
      for (int64_t s = 0; s < p; ++s) {
        if (s) out << ", ";
        out << "s" << s << "->" << lbl(digit(v, s, n));
      }
      out << "}";
      break;
    }
    case MonadKind::state: {
      out << "{";
      const int64_t base = n * p;
      for (int64_t s = 0; s < p; ++s) {
        if (s) out << ", ";
        int64_t d = digit(v, s, base);
        out << "s" << s << "->(" << lbl(d / p) << ",s" << d % p << ")";
      }
      out << "}";
      break;
    }
    case MonadKind::powerset: {
      out << "{";
      bool first = true;
      for (int64_t i = 0; i < n; ++i)
        if (v & (int64_t{1} << i)) {
          if (!first) out << ", ";
          out << lbl(i);
          first = false;
        }
      out << "}";
      break;
    }
    case MonadKind::continuation: {
      // digit list in k-index order
      const int64_t nk = checked_pow(p, n);
      out << "cont[";
      for (int64_t kidx = 0; kidx < nk; ++kidx) {
        if (kidx) out << ",";
        out << "a" << digit(v, kidx, p);
      }
      out << "]";
      break;
    }
    case MonadKind::state_exc: {
      out << "{";
      const int64_t base = n * p + 1;
      for (int64_t s = 0; s < p; ++s) {
        if (s) out << ", ";
        int64_t d = digit(v, s, base);
        out << "s" << s << "->";
        if (d == n * p) out << "err";
        else out << "(" << lbl(d / p) << ",s" << d % p << ")";
      }
      out << "}";
      break;
    }
  }
  return out.str();
}

} // namespace efx
