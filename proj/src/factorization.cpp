#include "effectfactor/factorization.hpp"

#include <sstream>

namespace efx {

namespace {

std::string at_objects(std::initializer_list<int64_t> sizes) {
  std::string s = " |X|=";
  bool first = true;
  for (int64_t n : sizes) {
    if (!first) s += ",";
    s += std::to_string(n);
    first = false;
  }
  return s;
}

// Non-throwing corestricted extension for use inside parallel sweeps:
// -1 signals a membership violation.
int64_t r_ext(const Monad& m, const SaturatedObject& sx, const SaturatedObject& sy,
              std::span<const int64_t> k_r, int64_t r) {
  std::vector<int64_t> k(k_r.size());
  for (size_t x = 0; x < k_r.size(); ++x)
    k[x] = sy.elements[static_cast<size_t>(k_r[x])];
  int64_t v = m.extend_at(sx.object_size, sy.object_size, k,
                          sx.elements[static_cast<size_t>(r)]);
  return sy.r_of(v);
}

} // namespace

FactorizationReport verify_factorization(FactoredMonad& fact, int64_t nx, int64_t ny, int64_t nz,
                               int64_t budget, uint64_t seed, int term_depth,
                               int64_t max_terms, Exec exec) {
  FactorizationReport rep;
  rep.nx = nx;
  rep.ny = ny;
  rep.nz = nz;
  const Interpretation& interp = fact.interp();
  const Monad& monad = interp.monad;

  auto run = [&](std::string name, auto&& body) {
    CheckItem item;
    item.name = std::move(name);
    try {
      body(item);
    } catch (const InstanceTooLarge& e) {
      item.skipped = true;
      item.note = e.what();
    } catch (const FactorizationViolation& e) {
      item.pass = false;
      item.note = e.what();
    }
    rep.items.push_back(std::move(item));
  };

  auto finish = [&](CheckItem& item, const SweepResult& r, auto&& describe) {
    item.cases = r.cases;
    item.exhaustive = r.exhaustive;
    if (r.first_fail) {
      item.pass = false;
      item.note = describe(*r.first_fail, r.exhaustive);
    }
  };

  // ---- monad laws for (R, r_unit, r_bind) ----

  run("r-monad-left-unit" + at_objects({nx, ny}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    const SaturatedObject& sx = fact.entry(nx);
    const SaturatedObject& sy = fact.entry(ny);
    const auto runit = fact.r_unit_table(nx);
    std::vector<int64_t> radix(static_cast<size_t>(nx), sy.size());
    radix.push_back(nx);
    auto fails = [&](std::span<const int64_t> c) {
      std::span<const int64_t> k = c.subspan(0, static_cast<size_t>(nx));
      int64_t x = c[static_cast<size_t>(nx)];
      int64_t lhs = r_ext(monad, sx, sy, k, runit[static_cast<size_t>(x)]);
      return lhs != k[static_cast<size_t>(x)];
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "x=" + std::to_string(c[static_cast<size_t>(nx)]);
    });
  });

  {
    std::vector<int64_t> objs{nx, ny, nz};
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    for (int64_t no : objs) {
      run("r-monad-right-unit" + at_objects({no}), [&](CheckItem& item) {
        fact.saturate(no);
        const SaturatedObject& so = fact.entry(no);
        const auto runit = fact.r_unit_table(no);
        std::vector<int64_t> radix{so.size()};
        auto fails = [&](std::span<const int64_t> c) {
          return r_ext(monad, so, so, runit, c[0]) != c[0];
        };
        SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
        finish(item, r, [&](int64_t fail, bool ex) {
          auto c = sweep_case_coords(radix, fail, ex, seed);
          return "element " + render_witness(so, interp.sig, c[0]);
        });
      });

      run("n-morphism-unit" + at_objects({no}), [&](CheckItem& item) {
        fact.saturate(no);
        const SaturatedObject& so = fact.entry(no);
        const auto runit = fact.r_unit_table(no);
        std::vector<int64_t> radix{no};
        auto fails = [&](std::span<const int64_t> c) {
          return so.elements[static_cast<size_t>(runit[static_cast<size_t>(c[0])])] !=
                 monad.unit_at(no, c[0]);
        };
        SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
        finish(item, r, [&](int64_t fail, bool ex) {
          auto c = sweep_case_coords(radix, fail, ex, seed);
          return "x=" + std::to_string(c[0]);
        });
      });
    }
  }

  run("r-monad-associativity" + at_objects({nx, ny, nz}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    fact.saturate(nz);
    const SaturatedObject& sx = fact.entry(nx);
    const SaturatedObject& sy = fact.entry(ny);
    const SaturatedObject& sz = fact.entry(nz);
    std::vector<int64_t> radix(static_cast<size_t>(nx), sy.size());
    radix.insert(radix.end(), static_cast<size_t>(ny), sz.size());
    radix.push_back(sx.size());
    auto fails = [&](std::span<const int64_t> c) {
      std::span<const int64_t> k = c.subspan(0, static_cast<size_t>(nx));
      std::span<const int64_t> l = c.subspan(static_cast<size_t>(nx), static_cast<size_t>(ny));
      int64_t rho = c[static_cast<size_t>(nx + ny)];
      int64_t mid = r_ext(monad, sx, sy, k, rho);
      if (mid < 0) return true;
      int64_t lhs = r_ext(monad, sy, sz, l, mid);
      std::vector<int64_t> lk(static_cast<size_t>(nx));
      for (int64_t x = 0; x < nx; ++x) {
        // extension of l applied pointwise to k(x)
        std::vector<int64_t> kt(static_cast<size_t>(ny));
        for (int64_t y = 0; y < ny; ++y)
          kt[static_cast<size_t>(y)] =
              sz.elements[static_cast<size_t>(l[static_cast<size_t>(y)])];
        int64_t v = monad.extend_at(ny, nz, kt,
                                    sy.elements[static_cast<size_t>(k[static_cast<size_t>(x)])]);
        int64_t out = sz.r_of(v);
        if (out < 0) return true;
        lk[static_cast<size_t>(x)] = out;
      }
      return lhs < 0 || lhs != r_ext(monad, sx, sz, lk, rho);
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "element " + render_witness(sx, interp.sig, c[static_cast<size_t>(nx + ny)]);
    });
  });

  // ---- n is a monad morphism: R is closed under bind along n ----

  run("n-morphism-bind-closure" + at_objects({nx, ny}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    const SaturatedObject& sx = fact.entry(nx);
    const SaturatedObject& sy = fact.entry(ny);
    std::vector<int64_t> radix(static_cast<size_t>(nx), sy.size());
    radix.push_back(sx.size());
    auto fails = [&](std::span<const int64_t> c) {
      return r_ext(monad, sx, sy, c.subspan(0, static_cast<size_t>(nx)),
                   c[static_cast<size_t>(nx)]) < 0;
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      std::ostringstream os;
      os << "bind of " << render_witness(sx, interp.sig, c[static_cast<size_t>(nx)])
         << " along k=[";
      for (int64_t x = 0; x < nx; ++x)
        os << (x ? "," : "") << render_witness(sy, interp.sig, c[static_cast<size_t>(x)]);
      os << "] escapes R";
      return os.str();
    });
  });

  // ---- e is a monad morphism: evaluation respects substitution ----

  run("e-morphism-substitution" + at_objects({nx, ny}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    TermArena ax = enumerate_terms(interp.sig, nx, term_depth, max_terms);
    TermArena ay = enumerate_terms(interp.sig, ny, term_depth, max_terms);
    const std::vector<int64_t> evx = eval_terms(ax, interp, nx, exec);
    const std::vector<int64_t> evy = eval_terms(ay, interp, ny, exec);
    std::vector<int64_t> radix(static_cast<size_t>(nx), static_cast<int64_t>(ay.size()));
    radix.push_back(static_cast<int64_t>(ax.size()));
    auto eval_subst = [&](std::span<const int64_t> u, int64_t t) {
      // evaluate t with each leaf x replaced by the denotation of u_x
      std::vector<int64_t> memo(ax.size(), -1);
      auto go = [&](auto&& self, TermId id) -> int64_t {
        int64_t& slot = memo[id];
        if (slot >= 0) return slot;
        const TermArena::Node& n = ax.nodes[id];
        if (n.op < 0) return slot = evy[static_cast<size_t>(u[static_cast<size_t>(n.arg)])];
        const Operation& op = interp.sig.ops[static_cast<size_t>(n.op)];
        std::vector<int64_t> k(static_cast<size_t>(op.b.size));
        for (int64_t b = 0; b < op.b.size; ++b)
          k[static_cast<size_t>(b)] = self(self, ax.children[n.child_begin + b]);
        return slot = monad.extend_at(op.b.size, ny, k,
                                      interp.gen[static_cast<size_t>(n.op)][static_cast<size_t>(n.arg)]);
      };
      return go(go, static_cast<TermId>(t));
    };
    auto fails = [&](std::span<const int64_t> c) {
      std::span<const int64_t> u = c.subspan(0, static_cast<size_t>(nx));
      int64_t t = c[static_cast<size_t>(nx)];
      std::vector<int64_t> ku(static_cast<size_t>(nx));
      for (int64_t x = 0; x < nx; ++x)
        ku[static_cast<size_t>(x)] = evy[static_cast<size_t>(u[static_cast<size_t>(x)])];
      int64_t rhs = monad.extend_at(nx, ny, ku, evx[static_cast<size_t>(t)]);
      return eval_subst(u, t) != rhs;
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      std::ostringstream os;
      os << "term " << render_term(ax, interp.sig, static_cast<TermId>(c[static_cast<size_t>(nx)]))
         << " under substitution [";
      for (int64_t x = 0; x < nx; ++x)
        os << (x ? "," : "")
           << render_term(ay, interp.sig, static_cast<TermId>(c[static_cast<size_t>(x)]));
      os << "]";
      return os.str();
    });
  });

  // ---- strength: closure and the axioms on R ----

  run("strength-closure" + at_objects({nx, ny}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    const int64_t nxy = checked_mul(nx, ny);
    fact.saturate(nxy);
    const SaturatedObject& sy = fact.entry(ny);
    const SaturatedObject& sxy = fact.entry(nxy);
    std::vector<int64_t> radix{nx, sy.size()};
    auto fails = [&](std::span<const int64_t> c) {
      int64_t v = monad.strength_at(nx, ny, c[0], sy.elements[static_cast<size_t>(c[1])]);
      return sxy.r_of(v) < 0;
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "st(" + std::to_string(c[0]) + ", " +
             render_witness(sy, interp.sig, c[1]) + ") escapes R";
    });
  });

  run("r-strength-unit" + at_objects({nx, ny}), [&](CheckItem& item) {
    fact.saturate(nx);
    fact.saturate(ny);
    const int64_t nxy = checked_mul(nx, ny);
    fact.saturate(nxy);
    const SaturatedObject& sy = fact.entry(ny);
    const SaturatedObject& sxy = fact.entry(nxy);
    const auto runit_y = fact.r_unit_table(ny);
    const auto runit_xy = fact.r_unit_table(nxy);
    std::vector<int64_t> radix{nx, ny};
    auto fails = [&](std::span<const int64_t> c) {
      int64_t v = monad.strength_at(
          nx, ny, c[0], sy.elements[static_cast<size_t>(runit_y[static_cast<size_t>(c[1])])]);
      return sxy.r_of(v) != runit_xy[static_cast<size_t>(c[0] * ny + c[1])];
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "x=" + std::to_string(c[0]) + ", y=" + std::to_string(c[1]);
    });
  });

  run("r-strength-unitor" + at_objects({ny}), [&](CheckItem& item) {
    fact.saturate(ny);
    const SaturatedObject& sy = fact.entry(ny);
    std::vector<int64_t> radix{sy.size()};
    auto fails = [&](std::span<const int64_t> c) {
      int64_t v = monad.strength_at(1, ny, 0, sy.elements[static_cast<size_t>(c[0])]);
      return sy.r_of(v) != c[0];
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "element " + render_witness(sy, interp.sig, c[0]);
    });
  });

  run("r-strength-associativity" + at_objects({nx, ny, nz}), [&](CheckItem& item) {
    fact.saturate(nz);
    const int64_t nyz = checked_mul(ny, nz);
    const int64_t nxyz = checked_mul(nx, nyz);
    fact.saturate(nyz);
    fact.saturate(nxyz);
    const SaturatedObject& sz = fact.entry(nz);
    const SaturatedObject& syz = fact.entry(nyz);
    const SaturatedObject& sxyz = fact.entry(nxyz);
    std::vector<int64_t> radix{nx, ny, sz.size()};
    auto fails = [&](std::span<const int64_t> c) {
      int64_t zt = sz.elements[static_cast<size_t>(c[2])];
      int64_t lhs = sxyz.r_of(monad.strength_at(nx * ny, nz, c[0] * ny + c[1], zt));
      int64_t mid = syz.r_of(monad.strength_at(ny, nz, c[1], zt));
      if (mid < 0) return true;
      int64_t rhs = sxyz.r_of(
          monad.strength_at(nx, nyz, c[0], syz.elements[static_cast<size_t>(mid)]));
      return lhs < 0 || lhs != rhs;
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "x=" + std::to_string(c[0]) + ", y=" + std::to_string(c[1]) +
             ", z-element " + render_witness(sz, interp.sig, c[2]);
    });
  });

  run("r-strength-multiplication" + at_objects({nx, ny}), [&](CheckItem& item) {
    // st' . (id x mult') = bind'(st') . st' over X x R(R Y), with the
    // right side in extension form, exactly as in the base-level law
    fact.saturate(nx);
    fact.saturate(ny);
    const int64_t nxy = checked_mul(nx, ny);
    fact.saturate(nxy);
    const SaturatedObject& sy = fact.entry(ny);
    const SaturatedObject& sxy = fact.entry(nxy);

    // R Y becomes an object in its own right
    const int64_t n_ry = sy.size();
    fact.saturate(n_ry);
    const int64_t n_x_ry = checked_mul(nx, n_ry);
    fact.saturate(n_x_ry);
    const SaturatedObject& s_rry = fact.entry(n_ry);
    const SaturatedObject& s_x_ry = fact.entry(n_x_ry);

    // mult' as the bind along the identity correspondence R Y -> R Y
    std::vector<int64_t> id_y(static_cast<size_t>(n_ry));
    for (int64_t i = 0; i < n_ry; ++i) id_y[static_cast<size_t>(i)] = i;
    const auto mult_y = fact.r_bind_table(n_ry, ny, id_y);

    // st'_{X,Y} as a Kleisli map out of the object X x RY
    std::vector<int64_t> st_xy(static_cast<size_t>(n_x_ry));
    for (int64_t x = 0; x < nx; ++x)
      for (int64_t rh = 0; rh < n_ry; ++rh)
        st_xy[static_cast<size_t>(x * n_ry + rh)] = fact.r_strength_at(nx, ny, x, rh);

    std::vector<int64_t> radix{nx, s_rry.size()};
    auto fails = [&](std::span<const int64_t> c) {
      int64_t x = c[0], zeta = c[1];
      int64_t lhs = sxy.r_of(monad.strength_at(
          nx, ny, x, sy.elements[static_cast<size_t>(mult_y[static_cast<size_t>(zeta)])]));
      // st'_{X,RY}(x, zeta) lands in R(X x RY)
      int64_t st1 = s_x_ry.r_of(monad.strength_at(
          nx, n_ry, x, s_rry.elements[static_cast<size_t>(zeta)]));
      if (st1 < 0) return true;
      int64_t rhs = r_ext(monad, s_x_ry, sxy, st_xy, st1);
      return lhs < 0 || lhs != rhs;
    };
    SweepResult r = sweep_cases(std::span<const int64_t>(radix), budget, seed, exec, fails);
    finish(item, r, [&](int64_t fail, bool ex) {
      auto c = sweep_case_coords(radix, fail, ex, seed);
      return "x=" + std::to_string(c[0]) + ", double element index " +
             std::to_string(c[1]);
    });
  });

  return rep;
}

} // namespace efx
