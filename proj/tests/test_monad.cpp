#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effectfactor/lawcheck.hpp"

using namespace efx;

namespace {

const std::vector<MonadSpec> kCatalog = {
    {MonadKind::identity, 0},  {MonadKind::exception, 1}, {MonadKind::exception, 2},
    {MonadKind::reader, 2},    {MonadKind::state, 2},     {MonadKind::powerset, 0},
    {MonadKind::continuation, 2}, {MonadKind::state_exc, 2},
};

int64_t digit(int64_t enc, int64_t pos, int64_t base) {
  for (int64_t i = 0; i < pos; ++i) enc /= base;
  return enc % base;
}

// deliberately corrupted extension: drops the union when binding the
// full two-element subset through a map whose first value is {0}
struct CorruptedPowerset {
  Monad inner{MonadSpec{MonadKind::powerset, 0}};
  const MonadSpec& spec() const { return inner.spec(); }
  int64_t carrier_size(int64_t n) const { return inner.carrier_size(n); }
  int64_t unit_at(int64_t n, int64_t v) const { return inner.unit_at(n, v); }
  int64_t extend_at(int64_t nx, int64_t ny, std::span<const int64_t> k, int64_t t) const {
    if (nx == 2 && t == 3 && !k.empty() && k[0] == 1) return k[0];
    return inner.extend_at(nx, ny, k, t);
  }
};

} // namespace

TEST_CASE("carrier sizes") {
  CHECK(Monad({MonadKind::state, 2}).carrier_size(1) == 4);
  CHECK(Monad({MonadKind::identity, 0}).carrier_size(7) == 7);
  // nested exponential |A|^(|A|^|X|)
  CHECK(Monad({MonadKind::continuation, 2}).carrier_size(2) ==
        checked_pow(2, checked_pow(2, 2)));
  CHECK(Monad({MonadKind::powerset, 0}).carrier_size(3) == 8);
  CHECK(Monad({MonadKind::exception, 2}).carrier_size(3) == 5);
  CHECK(Monad({MonadKind::reader, 2}).carrier_size(3) == 9);
  CHECK(Monad({MonadKind::state_exc, 2}).carrier_size(2) == 25);

  CHECK_THROWS_AS(Monad({MonadKind::continuation, 2}).carrier_size(8), InstanceTooLarge);
  CHECK_THROWS_AS(Monad({MonadKind::state, 5}).carrier_size(5), InstanceTooLarge);
}

TEST_CASE("unit encodings") {
  CHECK(Monad({MonadKind::powerset, 0}).unit_at(3, 1) == 2);
  CHECK(Monad({MonadKind::identity, 0}).unit_at(5, 3) == 3);

  // state: s |-> (x, s), decoded digit by digit
  Monad st({MonadKind::state, 2});
  int64_t u = st.unit_at(3, 0);
  for (int64_t s = 0; s < 2; ++s) {
    int64_t d = digit(u, s, 6);
    CHECK(d / 2 == 0);
    CHECK(d % 2 == s);
  }

  // continuation: k |-> k(x)
  Monad cont({MonadKind::continuation, 2});
  int64_t ux = cont.unit_at(2, 1);
  for (int64_t kidx = 0; kidx < 4; ++kidx)
    CHECK(digit(ux, kidx, 2) == digit(kidx, 1, 2));
}

TEST_CASE("kleisli extension basics") {
  // extend(unit) = id for every catalog monad at |X| <= 3
  for (const auto& spec : kCatalog) {
    Monad m(spec);
    for (int64_t nx = 0; nx <= 3; ++nx) {
      std::vector<int64_t> unit_k(static_cast<size_t>(nx));
      for (int64_t x = 0; x < nx; ++x) unit_k[static_cast<size_t>(x)] = m.unit_at(nx, x);
      const int64_t ntx = m.carrier_size(nx);
      for (int64_t t = 0; t < ntx; ++t)
        CHECK(m.extend_at(nx, nx, unit_k, t) == t);
    }
  }

  // powerset union of one image
  Monad pw({MonadKind::powerset, 0});
  std::vector<int64_t> k(3);
  for (int64_t x = 0; x < 3; ++x)
    k[static_cast<size_t>(x)] = (1 << x) | (1 << ((x + 1) % 3));
  CHECK(pw.extend_at(3, 3, k, 1) == 3); // {0} |-> {0,1}

  // left unit at state
  Monad st({MonadKind::state, 2});
  const int64_t nty = st.carrier_size(2);
  for (int64_t ke = 0; ke < nty * nty; ++ke) {
    std::vector<int64_t> kt{ke % nty, ke / nty};
    for (int64_t x = 0; x < 2; ++x)
      CHECK(st.extend_at(2, 2, kt, st.unit_at(2, x)) == kt[static_cast<size_t>(x)]);
  }
}

TEST_CASE("table forms of unit and extension") {
  Monad pw({MonadKind::powerset, 0});
  FinSet x(3);
  FinFun u = pw.unit(x);
  CHECK(u.cod.size == 8);
  for (int64_t v = 0; v < 3; ++v) CHECK(u(v) == pw.unit_at(3, v));

  // k(x) = {x, x+1 mod 3} extended over the whole carrier
  std::vector<int64_t> kt(3);
  for (int64_t v = 0; v < 3; ++v) kt[static_cast<size_t>(v)] = (1 << v) | (1 << ((v + 1) % 3));
  FinFun k(x, pw.carrier(x), kt);
  FinFun ext = pw.kleisli_extend(k, 3);
  CHECK(ext.dom.size == 8);
  for (int64_t t = 0; t < 8; ++t) CHECK(ext(t) == pw.extend_at(3, 3, kt, t));
  CHECK_THROWS_AS(pw.kleisli_extend(k, 2), std::invalid_argument);
}

TEST_CASE("fmap") {
  for (const auto& spec : kCatalog) {
    Monad m(spec);
    for (int64_t nx = 0; nx <= 3; ++nx)
      CHECK(m.fmap(identity_fun(FinSet(nx))) == identity_fun(m.carrier(FinSet(nx))));
  }

  // exception permutes the value summand, fixes the error
  Monad ex({MonadKind::exception, 1});
  FinFun swp(FinSet(2), FinSet(2), {1, 0});
  CHECK(ex.fmap(swp).table == std::vector<int64_t>{1, 0, 2});

  // powerset direct image against brute force
  Monad pw({MonadKind::powerset, 0});
  FinFun collapse(FinSet(2), FinSet(1), {0, 0});
  FinFun img = pw.fmap(collapse);
  for (int64_t t = 0; t < 4; ++t) {
    int64_t expect = 0;
    for (int64_t x = 0; x < 2; ++x)
      if (t & (1 << x)) expect |= 1; // both map to 0
    CHECK(img(t) == expect);
  }
}

TEST_CASE("strength examples") {
  Monad id({MonadKind::identity, 0});
  FinFun st_id = id.strength(FinSet(2), FinSet(3));
  for (int64_t x = 0; x < 2; ++x)
    for (int64_t y = 0; y < 3; ++y)
      CHECK(st_id(x * 3 + y) == x * 3 + y);

  // powerset: st(x, S) = {x} x S
  Monad pw({MonadKind::powerset, 0});
  CHECK(pw.strength_at(2, 2, 1, 3) == ((1 << (1 * 2 + 0)) | (1 << (1 * 2 + 1))));

  // strength-unit instance at state
  Monad st({MonadKind::state, 2});
  for (int64_t x = 0; x < 2; ++x)
    for (int64_t y = 0; y < 2; ++y)
      CHECK(st.strength_at(2, 2, x, st.unit_at(2, y)) == st.unit_at(4, x * 2 + y));
}

TEST_CASE("monad and strength laws for the whole catalog") {
  for (const auto& spec : kCatalog) {
    // the law sweeps never materialize carrier-sized tables, so a large
    // index-space cap is safe here; nested powerset carriers need 2^27
    Monad m(spec, int64_t{1} << 33);
    LawReport rep = check_monad_laws(m, {0, 1, 2, 3}, 20'000, 1);
    INFO(rep.subject);
    CHECK(rep.all_pass());
    // only the continuation monad overflows the index space itself
    if (spec.kind != MonadKind::continuation) {
      for (const auto& it : rep.items) {
        INFO(it.name, " ", it.note);
        CHECK(!it.skipped);
      }
    } else {
      CHECK(rep.any_skipped());
    }
  }
}

TEST_CASE("kleisli map spaces under the budget are fully enumerated") {
  // powerset at |X|=|Y|=2: (2^2)^2 = 16 maps, each tried at both points
  Monad pw({MonadKind::powerset, 0});
  LawReport rep = check_monad_laws(pw, {2}, 100'000, 0);
  bool found = false;
  for (const auto& it : rep.items)
    if (it.name.rfind("left-unit", 0) == 0) {
      found = true;
      CHECK(it.exhaustive);
      CHECK(it.cases == 16 * 2);
    }
  CHECK(found);
}

TEST_CASE("corrupted extension fails associativity with a counterexample") {
  CorruptedPowerset bad;
  LawReport rep = check_monad_laws(bad, {1, 2}, 100'000, 1);
  CHECK(!rep.all_pass());
  bool assoc_failed = false;
  for (const auto& it : rep.items)
    if (it.name.rfind("associativity", 0) == 0 && !it.pass) {
      assoc_failed = true;
      CHECK(!it.note.empty());
    }
  CHECK(assoc_failed);
}

TEST_CASE("surjection preservation") {
  // fmap image count against the codomain carrier, per catalog entry
  FinFun e1(FinSet(2), FinSet(1), {0, 0});
  FinFun e2(FinSet(3), FinSet(2), {0, 1, 1});
  for (const auto& spec : kCatalog) {
    Monad m(spec);
    for (const FinFun* e : {&e1, &e2}) {
      SurjectionReport rep = check_preserves_surjections(m, *e);
      INFO(m.spec().name());
      CHECK(rep.fmap_surjective);
      CHECK(rep.product_surjective);
    }
  }
  Monad id({MonadKind::identity, 0});
  CHECK_THROWS_AS(check_preserves_surjections(id, FinFun(FinSet(1), FinSet(2), {0})),
                  std::invalid_argument);
}

TEST_CASE("structured encodings round-trip") {
  // positional digits decode and re-encode to the same index
  Monad st({MonadKind::state, 2});
  for (int64_t t = 0; t < st.carrier_size(2); ++t) {
    int64_t enc = 0, w = 1;
    for (int64_t s = 0; s < 2; ++s) { enc += digit(t, s, 4) * w; w *= 4; }
    CHECK(enc == t);
  }
  Monad se({MonadKind::state_exc, 2});
  for (int64_t t = 0; t < se.carrier_size(2); ++t) {
    int64_t enc = 0, w = 1;
    for (int64_t s = 0; s < 2; ++s) { enc += digit(t, s, 5) * w; w *= 5; }
    CHECK(enc == t);
  }
}

TEST_CASE("decode strings") {
  Monad pw({MonadKind::powerset, 0});
  CHECK(pw.decode(3, 5) == "{x0, x2}");
  Monad ex({MonadKind::exception, 2});
  CHECK(ex.decode(2, 1) == "ok x1");
  CHECK(ex.decode(2, 3) == "err e1");
  Monad st({MonadKind::state, 2});
  CHECK(st.decode(2, st.unit_at(2, 1)) == "{s0->(x1,s0), s1->(x1,s1)}");
}
