#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "effectfactor/analysis.hpp"
#include "effectfactor/presets.hpp"

using namespace efx;

TEST_CASE("kernel partition block counts") {
  // writer theory: pure x, or x with a last write
  {
    Interpretation w = make_preset("state-write");
    TermArena a = enumerate_terms(w.sig, 2, 2);
    KernelPartition p = kernel_partition(w, a, 2);
    CHECK(p.blocks() == 6);
  }
  // empty signature: one block per leaf
  {
    Interpretation e = make_preset("empty-signature");
    TermArena a = enumerate_terms(e.sig, 3, 3);
    KernelPartition p = kernel_partition(e, a, 3);
    CHECK(p.blocks() == 3);
  }
  // or is associative, commutative, idempotent in the kernel
  {
    Interpretation po = make_preset("powerset-or");
    TermArena a = enumerate_terms(po.sig, 2, 2);
    KernelPartition p = kernel_partition(po, a, 2);
    CHECK(p.blocks() == 3);
  }
}

TEST_CASE("block count equals the number of distinct denotations") {
  for (const auto& id : preset_ids()) {
    Interpretation interp = make_preset(id);
    for (int64_t nx : {0, 1, 2}) {
      TermArena a = enumerate_terms(interp.sig, nx, 3, 200'000);
      KernelPartition p = kernel_partition(interp, a, nx);
      std::set<int64_t> distinct(p.denotation.begin(), p.denotation.end());
      std::vector<int64_t> values = eval_terms_reference(a, interp, nx);
      std::set<int64_t> oracle(values.begin(), values.end());
      INFO(id, " |X|=", nx);
      CHECK(p.blocks() == static_cast<int64_t>(oracle.size()));
      CHECK(distinct == oracle);
      // blocks cover the enumeration
      int64_t covered = 0;
      for (int64_t b : p.block_size) covered += b;
      CHECK(covered == static_cast<int64_t>(a.size()));
    }
  }
}

TEST_CASE("deeper enumeration only refines or extends, never merges") {
  for (const auto& id : {"state-write", "powerset-or", "state-read-write"}) {
    Interpretation interp = make_preset(id);
    TermArena shallow = enumerate_terms(interp.sig, 2, 2);
    TermArena deep = enumerate_terms(interp.sig, 2, 3);
    KernelPartition ps = kernel_partition(interp, shallow, 2);
    KernelPartition pd = kernel_partition(interp, deep, 2);
    // restricted to the shared prefix the partitions are identical
    for (size_t i = 0; i < shallow.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        CHECK((ps.block_of[i] == ps.block_of[j]) == (pd.block_of[i] == pd.block_of[j]));
  }
}

TEST_CASE("correctness: both evaluation routes induce the same partition") {
  for (const auto& id : preset_ids()) {
    Interpretation interp = make_preset(id);
    FactoredMonad fact(interp);
    for (int64_t nx : {0, 1, 2}) {
      CorrectnessReport rep = correctness_check(fact, nx, 3, 200'000);
      INFO(id, " |X|=", nx, " ", rep.note);
      CHECK(rep.match);
      CHECK(rep.blocks_base == rep.blocks_factored);
    }
  }
  // empty signature: the leaf partition on both sides
  Interpretation e = make_preset("empty-signature");
  FactoredMonad fe(e);
  CorrectnessReport rep = correctness_check(fe, 3, 3);
  CHECK(rep.match);
  CHECK(rep.blocks_base == 3);
}

TEST_CASE("correctness: a merged inclusion is detected with offending terms") {
  Interpretation po = make_preset("powerset-or");
  FactoredMonad fact(po);
  fact.saturate(2);
  SaturatedObject& s = fact.entry_mut(2);
  // merge {1} into {0}: the factored route now identifies terms the base
  // route distinguishes
  s.t_to_r[static_cast<size_t>(s.elements[1])] = 0;
  s.elements[1] = s.elements[0];
  CorrectnessReport rep = correctness_check(fact, 2, 2);
  CHECK(!rep.match);
  CHECK(!rep.term_a.empty());
  CHECK(!rep.term_b.empty());
  CHECK(rep.term_a != rep.term_b);
}

TEST_CASE("modularity profiles match their closed forms") {
  struct Case { const char* preset; SizeFormula formula; };
  const Case cases[] = {
      {"state-write", SizeFormula::writer},
      {"state-read", SizeFormula::reader},
      {"powerset-or", SizeFormula::nonempty_powerset},
      {"powerset-or-fail", SizeFormula::powerset},
      {"cont-abort", SizeFormula::exception},
      {"state-read-write", SizeFormula::state},
      {"stateexc-write", SizeFormula::writer},
      {"empty-signature", SizeFormula::identity},
  };
  for (const auto& c : cases) {
    Interpretation interp = make_preset(c.preset);
    FactoredMonad fact(interp);
    ModularityProfile prof = modularity_profile(fact, {0, 1, 2, 3}, c.formula);
    INFO(c.preset);
    CHECK(prof.all_match());
  }
  // expected values are frozen for the writer profile
  Interpretation w = make_preset("state-write");
  FactoredMonad fw(w);
  ModularityProfile prof = modularity_profile(fw, {0, 1, 2, 3}, SizeFormula::writer);
  std::vector<int64_t> rs;
  for (const auto& r : prof.rows) rs.push_back(r.r_size);
  CHECK(rs == std::vector<int64_t>{0, 3, 6, 9});
}

TEST_CASE("modularity detects a wrong formula") {
  Interpretation w = make_preset("state-write");
  FactoredMonad fact(w);
  ModularityProfile prof = modularity_profile(fact, {1, 2}, SizeFormula::state);
  CHECK(!prof.all_match());
}

TEST_CASE("formula parsing and evaluation") {
  CHECK(formula_from_string("nonempty-powerset") == SizeFormula::nonempty_powerset);
  CHECK_THROWS_AS(formula_from_string("nope"), ConfigError);
  CHECK(expected_size(SizeFormula::writer, 3, 2, 0) == 9);
  CHECK(expected_size(SizeFormula::reader, 3, 2, 0) == 9);
  CHECK(expected_size(SizeFormula::state, 2, 2, 0) == 16);
  CHECK(expected_size(SizeFormula::exception, 2, 0, 2) == 4);
  CHECK(to_string(SizeFormula::powerset) == "powerset");
}

TEST_CASE("stability: write keeps the writer theory when exceptions join the monad") {
  Interpretation a = make_preset("state-write");
  Interpretation b = make_preset("stateexc-write");
  for (int64_t nx : {0, 1, 2}) {
    StabilityReport rep = stability_check(a, b, nx, 3);
    INFO("|X|=", nx, " ", rep.note);
    CHECK(rep.equal);
  }
}

TEST_CASE("stability: the empty signature is always stable") {
  Interpretation a = make_preset("empty-signature");
  Interpretation b{Monad({MonadKind::powerset, 0}), Signature{}, {}};
  StabilityReport rep = stability_check(a, b, 3, 3);
  CHECK(rep.equal);
}

TEST_CASE("stability: left-biased choice is distinguished from true choice") {
  Interpretation a = make_preset("powerset-or");
  // or interpreted as first-branch projection in the identity monad
  Interpretation b{Monad({MonadKind::identity, 0}),
                   Signature({{"or", FinSet(1, {"()"}), FinSet(2)}}),
                   {{0}}};
  StabilityReport rep = stability_check(a, b, 2, 2);
  CHECK(!rep.equal);
  // or(x0, x1) collapses to x0 on the biased side only
  CHECK(!rep.term_a.empty());
  CHECK(!rep.term_b.empty());
  CHECK(rep.note.find("merged under B") != std::string::npos);
}

TEST_CASE("stability rejects mismatched signatures") {
  Interpretation a = make_preset("state-write");
  Interpretation b = make_preset("powerset-or");
  CHECK_THROWS_AS(stability_check(a, b, 2, 2), std::invalid_argument);
}
