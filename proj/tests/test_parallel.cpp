// The OpenMP kernels must agree bit for bit with their serial runs: the
// same R sets in the same order, the same witnesses, counterexamples and
// sampled verdicts regardless of thread count.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effectfactor/presets.hpp"
#include "effectfactor/factorization.hpp"

using namespace efx;

namespace {

bool same_items(const std::vector<CheckItem>& a, const std::vector<CheckItem>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].pass != b[i].pass ||
        a[i].skipped != b[i].skipped || a[i].cases != b[i].cases ||
        a[i].exhaustive != b[i].exhaustive || a[i].note != b[i].note)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("sweep: first failure is the least case index under both policies") {
  std::vector<int64_t> radix{7, 11, 5};
  auto fails = [](std::span<const int64_t> c) {
    return (c[0] * 3 + c[1] * 5 + c[2]) % 97 == 13;
  };
  SweepResult ser = sweep_cases(std::span<const int64_t>(radix), 10'000, 9, Exec::serial, fails);
  SweepResult par = sweep_cases(std::span<const int64_t>(radix), 10'000, 9, Exec::parallel, fails);
  CHECK(ser.exhaustive);
  REQUIRE(ser.first_fail.has_value());
  CHECK(ser.first_fail == par.first_fail);
  CHECK(ser.cases == par.cases);

  // sampled path: same draws, same verdict
  SweepResult ss = sweep_cases(std::span<const int64_t>(radix), 100, 9, Exec::serial, fails);
  SweepResult ps = sweep_cases(std::span<const int64_t>(radix), 100, 9, Exec::parallel, fails);
  CHECK(!ss.exhaustive);
  CHECK(ss.first_fail == ps.first_fail);
}

TEST_CASE("saturation kernel agrees with the reference on a larger object") {
  Interpretation rw = make_preset("state-read-write");
  SaturatedObject par = saturate_object(rw, 8, {Exec::parallel, 100'000'000});
  SaturatedObject ser = saturate_object(rw, 8, {Exec::serial, 100'000'000});
  SaturatedObject ref = saturate_object_reference(rw, 8, 100'000'000);
  CHECK(par.size() == 256);
  CHECK(par.full());
  CHECK(par.elements == ref.elements);
  CHECK(ser.elements == ref.elements);
  CHECK(par.layer_trace == ref.layer_trace);
  REQUIRE(par.origins.size() == ref.origins.size());
  for (size_t r = 0; r < ref.origins.size(); ++r) {
    CHECK(par.origins[r].op == ref.origins[r].op);
    CHECK(par.origins[r].arg == ref.origins[r].arg);
  }
  CHECK(par.child_pool == ref.child_pool);
}

TEST_CASE("law report is policy-independent, including sampled instances") {
  Monad st({MonadKind::state, 2});
  LawReport ser = check_monad_laws(st, {0, 1, 2}, 5'000, 42, Exec::serial);
  LawReport par = check_monad_laws(st, {0, 1, 2}, 5'000, 42, Exec::parallel);
  CHECK(same_items(ser.items, par.items));
  bool any_sampled = false;
  for (const auto& it : ser.items) any_sampled |= !it.exhaustive;
  CHECK(any_sampled);
}

TEST_CASE("factorization report is policy-independent") {
  Interpretation w = make_preset("state-write");
  FactoredMonad fs(w, {Exec::serial, 50'000'000});
  FactoredMonad fp(w, {Exec::parallel, 50'000'000});
  FactorizationReport rs = verify_factorization(fs, 2, 2, 2, 5'000, 3, 2, 1'000'000, Exec::serial);
  FactorizationReport rp = verify_factorization(fp, 2, 2, 2, 5'000, 3, 2, 1'000'000, Exec::parallel);
  CHECK(same_items(rs.items, rp.items));
}

TEST_CASE("batch evaluation is policy-independent on a large arena") {
  Interpretation rw = make_preset("state-read-write");
  TermArena a = enumerate_terms(rw.sig, 3, 3, 200'000);
  CHECK(a.size() > 100'000);
  std::vector<int64_t> par = eval_terms(a, rw, 3, Exec::parallel);
  std::vector<int64_t> ser = eval_terms(a, rw, 3, Exec::serial);
  CHECK(par == ser);
}
