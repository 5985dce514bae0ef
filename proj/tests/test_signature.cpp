#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effectfactor/presets.hpp"
#include "effectfactor/signature.hpp"

using namespace efx;

namespace {

int64_t digit(int64_t enc, int64_t pos, int64_t base) {
  for (int64_t i = 0; i < pos; ++i) enc /= base;
  return enc % base;
}

} // namespace

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature({{"", FinSet(1), FinSet(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(Signature({{"op", FinSet(1), FinSet(1)}, {"op", FinSet(2), FinSet(1)}}),
                  std::invalid_argument);
  Signature sig({{"read", FinSet(1), FinSet(2)}, {"write", FinSet(2), FinSet(1)}});
  CHECK(sig.index_of("write") == 1);
  CHECK(sig.index_of("missing") == -1);
}

TEST_CASE("interpretation validation") {
  Monad st({MonadKind::state, 2});
  Signature sig({{"write", FinSet(2), FinSet(1)}});
  CHECK_THROWS_AS(Interpretation(st, sig, {}), std::invalid_argument);
  CHECK_THROWS_AS(Interpretation(st, sig, {{0}}), std::invalid_argument);      // wrong length
  CHECK_THROWS_AS(Interpretation(st, sig, {{0, 99}}), std::invalid_argument);  // out of range
  CHECK_NOTHROW(Interpretation(st, sig, {{0, 3}}));
}

TEST_CASE("term counts match the layer recurrence") {
  // empty signature: only leaves, at any depth
  Signature empty;
  TermArena a0 = enumerate_terms(empty, 4, 5);
  CHECK(a0.size() == 4);

  // write : S -> 1 with |S|=2, |X|=1, depth 1: 1 leaf + 2 nodes
  Signature wr({{"write", FinSet(2), FinSet(1)}});
  TermArena a1 = enumerate_terms(wr, 1, 1);
  CHECK(a1.size() == 3);

  // read : 1 -> S with |S|=2, |X|=2, depth 1: 2 + 1*2^2
  Signature rd({{"read", FinSet(1), FinSet(2)}});
  TermArena a2 = enumerate_terms(rd, 2, 1);
  CHECK(a2.size() == 6);

  // the recurrence against the actual enumeration
  Interpretation rw = make_preset("state-read-write");
  for (int d = 0; d <= 3; ++d) {
    TermArena a = enumerate_terms(rw.sig, 2, d);
    CHECK(static_cast<int64_t>(a.size()) == count_terms(rw.sig, 2, d));
    CHECK(a.layer_end.size() == static_cast<size_t>(d) + 1);
  }
}

TEST_CASE("an operation with an empty parameter set contributes nothing") {
  Monad st({MonadKind::state, 2});
  Signature sig({{"ghost", FinSet(0), FinSet(1)}});
  Interpretation interp(st, sig, {{}});
  TermArena a = enumerate_terms(sig, 2, 3);
  CHECK(a.size() == 2); // leaves only
  SaturatedObject s = saturate_object(interp, 2);
  CHECK(s.size() == 2);
}

TEST_CASE("nullary operations produce terms even over the empty object") {
  Interpretation pf = make_preset("powerset-or-fail");
  TermArena a = enumerate_terms(pf.sig, 0, 2);
  // fail() is the only depth-1 term; or(fail,fail) the only depth-2 term
  CHECK(a.size() == 2);
  CHECK(render_term(a, pf.sig, 0) == "fail(())");
  CHECK(render_term(a, pf.sig, 1) == "or((); fail(()), fail(()))");
}

TEST_CASE("enumeration is deterministic and prefix-stable across depths") {
  Interpretation rw = make_preset("state-read-write");
  TermArena shallow = enumerate_terms(rw.sig, 2, 2);
  TermArena deep = enumerate_terms(rw.sig, 2, 3);
  REQUIRE(shallow.size() <= deep.size());
  for (TermId t = 0; t < shallow.size(); ++t) {
    CHECK(shallow.nodes[t].op == deep.nodes[t].op);
    CHECK(shallow.nodes[t].arg == deep.nodes[t].arg);
    CHECK(render_term(shallow, rw.sig, t) == render_term(deep, rw.sig, t));
  }
  // leaves first
  for (int64_t x = 0; x < 2; ++x) CHECK(shallow.nodes[static_cast<size_t>(x)].op == -1);
}

TEST_CASE("term cap") {
  Interpretation rw = make_preset("state-read-write");
  CHECK_THROWS_AS(enumerate_terms(rw.sig, 3, 4, 100'000), InstanceTooLarge);
}

TEST_CASE("evaluation of leaves and single operations") {
  Interpretation rw = make_preset("state-read-write");
  const Monad& st = rw.monad;
  TermArena a = enumerate_terms(rw.sig, 2, 1);
  std::vector<int64_t> v = eval_terms(a, rw, 2);

  // leaves evaluate through the unit
  for (int64_t x = 0; x < 2; ++x) CHECK(v[static_cast<size_t>(x)] == st.unit_at(2, x));

  for (TermId t = 2; t < a.size(); ++t) {
    const auto& n = a.nodes[t];
    auto ch = a.children_of(t);
    if (rw.sig.ops[static_cast<size_t>(n.op)].name == "write") {
      // write(sp; leaf x): s |-> (x, sp), constant in s
      int64_t x = a.nodes[ch[0]].arg;
      for (int64_t s = 0; s < 2; ++s) {
        int64_t d = digit(v[t], s, 4);
        CHECK(d / 2 == x);
        CHECK(d % 2 == n.arg);
      }
    } else {
      // read((); leaf x0', leaf x1'): s |-> (x_s, s)
      for (int64_t s = 0; s < 2; ++s) {
        int64_t d = digit(v[t], s, 4);
        CHECK(d / 2 == a.nodes[ch[s]].arg);
        CHECK(d % 2 == s);
      }
    }
  }
}

TEST_CASE("kernel evaluation matches the reference on every preset") {
  for (const auto& id : preset_ids()) {
    Interpretation interp = make_preset(id);
    for (int64_t nx : {0, 1, 2}) {
      TermArena a = enumerate_terms(interp.sig, nx, 3, 200'000);
      std::vector<int64_t> par = eval_terms(a, interp, nx, Exec::parallel);
      std::vector<int64_t> ser = eval_terms(a, interp, nx, Exec::serial);
      std::vector<int64_t> ref = eval_terms_reference(a, interp, nx);
      INFO(id, " |X|=", nx);
      CHECK(par == ref);
      CHECK(ser == ref);
      if (!a.nodes.empty())
        CHECK(eval_term(a, interp, nx, static_cast<TermId>(a.size() - 1)) == ref.back());
    }
  }
}

TEST_CASE("render terms") {
  Interpretation rw = make_preset("state-read-write");
  TermArena a = enumerate_terms(rw.sig, 2, 2);
  CHECK(render_term(a, rw.sig, 0) == "x0");
  // first depth-1 node follows signature order: read, parameter ()
  CHECK(render_term(a, rw.sig, 2) == "read((); x0, x0)");
  CHECK(a.depth_of(0) == 0);
  CHECK(a.depth_of(2) == 1);
}
