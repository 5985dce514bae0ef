#pragma once

#include <concepts>
#include <sstream>
#include <string>
#include <vector>

#include "effectfactor/finset.hpp"
#include "effectfactor/monad.hpp"
#include "effectfactor/sweep.hpp"

namespace efx {

/// One verified law or property, with the evidence volume behind it.
struct CheckItem {
  std::string name;
  bool pass = true;
  bool skipped = false;    // instance exceeded a cap; not a failure
  int64_t cases = 0;
  bool exhaustive = true;
  std::string note;        // counterexample or skip reason
};

struct LawReport {
  std::string subject;
  std::vector<CheckItem> items;

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.skipped && !it.pass) return false;
    return true;
  }
  bool any_skipped() const {
    for (const auto& it : items)
      if (it.skipped) return true;
    return false;
  }
};

/// Anything with carrier sizes, unit and Kleisli extension. Fault-injection
/// fixtures wrap a Monad and perturb extend_at through this surface.
template <typename M>
concept MonadLike = requires(const M& m, int64_t n, std::span<const int64_t> k) {
  { m.carrier_size(n) } -> std::convertible_to<int64_t>;
  { m.unit_at(n, n) } -> std::convertible_to<int64_t>;
  { m.extend_at(n, n, k, n) } -> std::convertible_to<int64_t>;
  { m.spec().name() } -> std::convertible_to<std::string>;
};

/// Functor action derived from the monad structure: extend(unit . f).
template <MonadLike M>
int64_t generic_fmap_at(const M& m, int64_t nx, int64_t ny,
                        std::span<const int64_t> f, int64_t t) {
  std::vector<int64_t> k(static_cast<size_t>(nx));
  for (int64_t x = 0; x < nx; ++x)
    k[static_cast<size_t>(x)] = m.unit_at(ny, f[static_cast<size_t>(x)]);
  return m.extend_at(nx, ny, k, t);
}

/// Canonical strength st(x, t) = fmap(y |-> (x,y))(t).
template <MonadLike M>
int64_t generic_strength_at(const M& m, int64_t nx, int64_t ny, int64_t x, int64_t t) {
  std::vector<int64_t> f(static_cast<size_t>(ny));
  for (int64_t y = 0; y < ny; ++y) f[static_cast<size_t>(y)] = x * ny + y;
  return generic_fmap_at(m, ny, nx * ny, f, t);
}

template <MonadLike M>
int64_t generic_mult_at(const M& m, int64_t ny, int64_t tt) {
  const int64_t nty = m.carrier_size(ny);
  std::vector<int64_t> id(static_cast<size_t>(nty));
  for (int64_t i = 0; i < nty; ++i) id[static_cast<size_t>(i)] = i;
  return m.extend_at(nty, ny, id, tt);
}

namespace lawdetail {

template <typename Setup>
void run_law_instance(std::vector<CheckItem>& items, const std::string& name,
                      const std::string& where, Setup&& setup) {
  CheckItem item;
  item.name = name;
  try {
    setup(item);
  } catch (const InstanceTooLarge& e) {
    item.skipped = true;
    item.note = std::string("skipped at ") + where + ": " + e.what();
  }
  if (!item.note.empty() && !item.skipped && !item.pass)
    item.note = "at " + where + ": " + item.note;
  items.push_back(std::move(item));
}

inline std::string objs(std::initializer_list<int64_t> sizes) {
  std::string s = "|X|=";
  bool first = true;
  for (int64_t n : sizes) {
    if (!first) s += ",";
    s += std::to_string(n);
    first = false;
  }
  return s;
}

} // namespace lawdetail

/// Checks unit laws, associativity, functoriality and the four strength
/// axioms. Exhaustive whenever the case space fits the budget, otherwise
/// seeded sampling. Oversized instances (nested carriers past the cap)
/// are reported as skipped.
template <MonadLike M>
LawReport check_monad_laws(const M& m, const std::vector<int64_t>& objects,
                           int64_t budget, uint64_t seed, Exec exec = Exec::parallel) {
  LawReport report;
  report.subject = m.spec().name();
  using lawdetail::run_law_instance;

  auto counterexample = [&](std::span<const int64_t> coords, auto&& render) {
    std::ostringstream os;
    render(os, coords);
    return os.str();
  };

  for (int64_t nx : objects) {
    for (int64_t ny : objects) {
      // left unit: extend(k)(unit x) = k x
      run_law_instance(report.items, "left-unit", lawdetail::objs({nx, ny}), [&](CheckItem& item) {
        const int64_t nty = m.carrier_size(ny);
        m.carrier_size(nx);
        std::vector<int64_t> radix(static_cast<size_t>(nx), nty);
        radix.push_back(nx);
        auto fails = [&](std::span<const int64_t> c) {
          std::span<const int64_t> k = c.subspan(0, static_cast<size_t>(nx));
          int64_t x = c[static_cast<size_t>(nx)];
          return m.extend_at(nx, ny, k, m.unit_at(nx, x)) != k[static_cast<size_t>(x)];
        };
        SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
        item.cases = r.cases;
        item.exhaustive = r.exhaustive;
        if (r.first_fail) {
          item.pass = false;
          auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
          item.note = counterexample(c, [&](std::ostringstream& os, std::span<const int64_t> cc) {
            os << "x=" << cc[static_cast<size_t>(nx)] << ", k=[";
            for (int64_t i = 0; i < nx; ++i) os << (i ? "," : "") << cc[static_cast<size_t>(i)];
            os << "] (" << lawdetail::objs({nx, ny}) << ")";
          });
        }
      });
    }
  }

  for (int64_t nx : objects) {
    // right unit: extend(unit) = id
    run_law_instance(report.items, "right-unit", lawdetail::objs({nx}), [&](CheckItem& item) {
      const int64_t ntx = m.carrier_size(nx);
      std::vector<int64_t> unit_k(static_cast<size_t>(nx));
      for (int64_t x = 0; x < nx; ++x) unit_k[static_cast<size_t>(x)] = m.unit_at(nx, x);
      std::vector<int64_t> radix{ntx};
      auto fails = [&](std::span<const int64_t> c) {
        return m.extend_at(nx, nx, unit_k, c[0]) != c[0];
      };
      SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
      item.cases = r.cases;
      item.exhaustive = r.exhaustive;
      if (r.first_fail) {
        item.pass = false;
        auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
        item.note = "t=" + std::to_string(c[0]) + " (" + lawdetail::objs({nx}) + ")";
      }
    });
  }

  for (int64_t nx : objects)
    for (int64_t ny : objects)
      for (int64_t nz : objects) {
        // associativity: extend(l)(extend(k)(t)) = extend(extend(l) . k)(t)
        run_law_instance(report.items, "associativity", lawdetail::objs({nx, ny, nz}),
                         [&](CheckItem& item) {
          const int64_t ntx = m.carrier_size(nx);
          const int64_t nty = m.carrier_size(ny);
          const int64_t ntz = m.carrier_size(nz);
          std::vector<int64_t> radix(static_cast<size_t>(nx), nty);
          radix.insert(radix.end(), static_cast<size_t>(ny), ntz);
          radix.push_back(ntx);
          auto fails = [&](std::span<const int64_t> c) {
            std::span<const int64_t> k = c.subspan(0, static_cast<size_t>(nx));
            std::span<const int64_t> l = c.subspan(static_cast<size_t>(nx), static_cast<size_t>(ny));
            int64_t t = c[static_cast<size_t>(nx + ny)];
            int64_t lhs = m.extend_at(ny, nz, l, m.extend_at(nx, ny, k, t));
            std::vector<int64_t> lk(static_cast<size_t>(nx));
            for (int64_t x = 0; x < nx; ++x)
              lk[static_cast<size_t>(x)] = m.extend_at(ny, nz, l, k[static_cast<size_t>(x)]);
            return lhs != m.extend_at(nx, nz, lk, t);
          };
          SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
          item.cases = r.cases;
          item.exhaustive = r.exhaustive;
          if (r.first_fail) {
            item.pass = false;
            auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
            std::ostringstream os;
            os << "t=" << c[static_cast<size_t>(nx + ny)] << ", k=[";
            for (int64_t i = 0; i < nx; ++i) os << (i ? "," : "") << c[static_cast<size_t>(i)];
            os << "], l=[";
            for (int64_t i = 0; i < ny; ++i) os << (i ? "," : "") << c[static_cast<size_t>(nx + i)];
            os << "] (" << lawdetail::objs({nx, ny, nz}) << ")";
            item.note = os.str();
          }
        });
      }

  for (int64_t nx : objects) {
    // fmap(id) = id
    run_law_instance(report.items, "functor-identity", lawdetail::objs({nx}), [&](CheckItem& item) {
      const int64_t ntx = m.carrier_size(nx);
      std::vector<int64_t> id(static_cast<size_t>(nx));
      for (int64_t x = 0; x < nx; ++x) id[static_cast<size_t>(x)] = x;
      std::vector<int64_t> radix{ntx};
      auto fails = [&](std::span<const int64_t> c) {
        return generic_fmap_at(m, nx, nx, id, c[0]) != c[0];
      };
      SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
      item.cases = r.cases;
      item.exhaustive = r.exhaustive;
      if (r.first_fail) {
        item.pass = false;
        item.note = "t=" + std::to_string(sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed)[0]);
      }
    });
  }

  for (int64_t nx : objects)
    for (int64_t ny : objects)
      for (int64_t nz : objects) {
        // fmap(g . f) = fmap(g) . fmap(f)
        run_law_instance(report.items, "functor-composition", lawdetail::objs({nx, ny, nz}),
                         [&](CheckItem& item) {
          const int64_t ntx = m.carrier_size(nx);
          m.carrier_size(ny);
          m.carrier_size(nz);
          std::vector<int64_t> radix(static_cast<size_t>(nx), ny);
          radix.insert(radix.end(), static_cast<size_t>(ny), nz);
          radix.push_back(ntx);
          auto fails = [&](std::span<const int64_t> c) {
            std::span<const int64_t> f = c.subspan(0, static_cast<size_t>(nx));
            std::span<const int64_t> g = c.subspan(static_cast<size_t>(nx), static_cast<size_t>(ny));
            int64_t t = c[static_cast<size_t>(nx + ny)];
            std::vector<int64_t> gf(static_cast<size_t>(nx));
            for (int64_t x = 0; x < nx; ++x)
              gf[static_cast<size_t>(x)] = g[static_cast<size_t>(f[static_cast<size_t>(x)])];
            return generic_fmap_at(m, nx, nz, gf, t) !=
                   generic_fmap_at(m, ny, nz, g, generic_fmap_at(m, nx, ny, f, t));
          };
          SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
          item.cases = r.cases;
          item.exhaustive = r.exhaustive;
          if (r.first_fail) {
            item.pass = false;
            item.note = "case " + std::to_string(*r.first_fail) + " (" +
                        lawdetail::objs({nx, ny, nz}) + ")";
          }
        });
      }

  for (int64_t nx : objects)
    for (int64_t ny : objects) {
      // st(x, unit y) = unit (x,y)
      run_law_instance(report.items, "strength-unit", lawdetail::objs({nx, ny}), [&](CheckItem& item) {
        m.carrier_size(ny);
        const int64_t nxy = checked_mul(nx, ny);
        m.carrier_size(nxy);
        std::vector<int64_t> radix{nx, ny};
        auto fails = [&](std::span<const int64_t> c) {
          return generic_strength_at(m, nx, ny, c[0], m.unit_at(ny, c[1])) !=
                 m.unit_at(nxy, c[0] * ny + c[1]);
        };
        SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
        item.cases = r.cases;
        item.exhaustive = r.exhaustive;
        if (r.first_fail) {
          item.pass = false;
          auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
          item.note = "x=" + std::to_string(c[0]) + ", y=" + std::to_string(c[1]);
        }
      });
    }

  for (int64_t ny : objects) {
    // unitor: st over 1 x Y is the identity under canonical pairing
    run_law_instance(report.items, "strength-unitor", lawdetail::objs({ny}), [&](CheckItem& item) {
      const int64_t nty = m.carrier_size(ny);
      std::vector<int64_t> radix{nty};
      auto fails = [&](std::span<const int64_t> c) {
        return generic_strength_at(m, 1, ny, 0, c[0]) != c[0];
      };
      SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
      item.cases = r.cases;
      item.exhaustive = r.exhaustive;
      if (r.first_fail) {
        item.pass = false;
        item.note = "t=" + std::to_string(sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed)[0]);
      }
    });
  }

  for (int64_t nx : objects)
    for (int64_t ny : objects)
      for (int64_t nz : objects) {
        // associator: st_{XxY,Z} agrees with st_{X,YxZ} . (id x st_{Y,Z})
        run_law_instance(report.items, "strength-associativity", lawdetail::objs({nx, ny, nz}),
                         [&](CheckItem& item) {
          const int64_t ntz = m.carrier_size(nz);
          const int64_t nyz = checked_mul(ny, nz);
          const int64_t nxyz = checked_mul(nx, nyz);
          m.carrier_size(nyz);
          m.carrier_size(nxyz);
          std::vector<int64_t> radix{nx, ny, ntz};
          auto fails = [&](std::span<const int64_t> c) {
            int64_t lhs = generic_strength_at(m, nx * ny, nz, c[0] * ny + c[1], c[2]);
            int64_t rhs = generic_strength_at(m, nx, nyz, c[0],
                                              generic_strength_at(m, ny, nz, c[1], c[2]));
            return lhs != rhs;
          };
          SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
          item.cases = r.cases;
          item.exhaustive = r.exhaustive;
          if (r.first_fail) {
            item.pass = false;
            auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
            item.note = "x=" + std::to_string(c[0]) + ", y=" + std::to_string(c[1]) +
                        ", t=" + std::to_string(c[2]);
          }
        });
      }

  for (int64_t nx : objects)
    for (int64_t ny : objects) {
      // st . (id x mult) = mult . T(st) . st over X x TTY
      run_law_instance(report.items, "strength-multiplication", lawdetail::objs({nx, ny}),
                       [&](CheckItem& item) {
        const int64_t nty = m.carrier_size(ny);
        const int64_t ntty = m.carrier_size(nty);
        const int64_t nxy = checked_mul(nx, ny);
        const int64_t nxty = checked_mul(nx, nty);
        m.carrier_size(nxy);
        m.carrier_size(nxty);
        // st_{X,Y} as a Kleisli map (X x TY) -> T(X x Y)
        std::vector<int64_t> st_k(static_cast<size_t>(nxty));
        for (int64_t x = 0; x < nx; ++x)
          for (int64_t t = 0; t < nty; ++t)
            st_k[static_cast<size_t>(x * nty + t)] = generic_strength_at(m, nx, ny, x, t);
        std::vector<int64_t> radix{nx, ntty};
        auto fails = [&](std::span<const int64_t> c) {
          int64_t lhs = generic_strength_at(m, nx, ny, c[0], generic_mult_at(m, ny, c[1]));
          int64_t inner = generic_strength_at(m, nx, nty, c[0], c[1]);
          int64_t rhs = m.extend_at(nxty, nxy, st_k, inner);
          return lhs != rhs;
        };
        SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
        item.cases = r.cases;
        item.exhaustive = r.exhaustive;
        if (r.first_fail) {
          item.pass = false;
          auto c = sweep_case_coords(radix, *r.first_fail, r.exhaustive, seed);
          item.note = "x=" + std::to_string(c[0]) + ", tt=" + std::to_string(c[1]);
        }
      });
    }

  return report;
}

struct SurjectionReport {
  bool fmap_surjective = false;
  bool product_surjective = false;
  bool pass() const { return fmap_surjective && product_surjective; }
};

/// Precondition probe: the functor action preserves surjections,
/// and so does pairing with an identity.
template <MonadLike M>
SurjectionReport check_preserves_surjections(const M& m, const FinFun& e, int64_t nz = 2) {
  if (!is_surjective(e))
    throw std::invalid_argument("check_preserves_surjections: e is not surjective");
  SurjectionReport rep;
  const int64_t nx = e.dom.size, ny = e.cod.size;
  const int64_t ntx = m.carrier_size(nx), nty = m.carrier_size(ny);
  std::vector<char> hit(static_cast<size_t>(nty), 0);
  int64_t count = 0;
  for (int64_t t = 0; t < ntx; ++t) {
    int64_t v = generic_fmap_at(m, nx, ny, e.table, t);
    if (!hit[static_cast<size_t>(v)]) { hit[static_cast<size_t>(v)] = 1; ++count; }
  }
  rep.fmap_surjective = count == nty;

  FinSet z(nz);
  Product pd = product(e.dom, z);
  Product pc = product(e.cod, z);
  std::vector<int64_t> table(static_cast<size_t>(pd.obj.size));
  for (int64_t x = 0; x < nx; ++x)
    for (int64_t i = 0; i < nz; ++i)
      table[static_cast<size_t>(pd.pair(x, i))] = pc.pair(e(x), i);
  rep.product_surjective = is_surjective(FinFun(pd.obj, pc.obj, std::move(table)));
  return rep;
}

} // namespace efx
