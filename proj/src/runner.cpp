#include <algorithm>

#include "effectfactor/report.hpp"
#include "effectfactor/factorization.hpp"

namespace efx {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json item_to_json(const CheckItem& it) {
  ordered_json j;
  j["name"] = it.name;
  j["pass"] = it.pass;
  j["skipped"] = it.skipped;
  j["cases"] = it.cases;
  j["exhaustive"] = it.exhaustive;
  j["note"] = it.note;
  return j;
}

// one row per law name, instances folded together
std::vector<CheckItem> aggregate_items(const std::vector<CheckItem>& items,
                                       bool strip_suffix) {
  std::vector<CheckItem> out;
  auto base_name = [&](const std::string& name) {
    if (!strip_suffix) return name;
    size_t pos = name.find(" |X|=");
    return pos == std::string::npos ? name : name.substr(0, pos);
  };
  for (const auto& it : items) {
    std::string name = base_name(it.name);
    CheckItem* slot = nullptr;
    for (auto& o : out)
      if (o.name == name) { slot = &o; break; }
    if (!slot) {
      out.push_back(CheckItem{name, true, false, 0, true, ""});
      slot = &out.back();
    }
    if (it.skipped) {
      slot->skipped = true; // at least one instance skipped
      if (slot->note.empty()) slot->note = it.note;
      continue;
    }
    slot->cases += it.cases;
    slot->exhaustive = slot->exhaustive && it.exhaustive;
    if (!it.pass && slot->pass) {
      slot->pass = false;
      slot->note = it.name + ": " + it.note;
    }
  }
  for (auto& o : out)
    if (o.skipped && !o.pass) o.skipped = false; // a failure outranks a skip
  return out;
}

ordered_json stabilization_to_json(const StabilizationReport& st) {
  ordered_json j;
  j["layer_trace"] = st.layer_trace;
  j["rounds"] = st.rounds;
  j["monotone"] = st.monotone;
  j["within_carrier_bound"] = st.within_bound;
  j["closed_under_one_more_round"] = st.closed;
  j["final_matches_r_size"] = st.final_matches;
  j["pass"] = st.pass();
  return j;
}

RunReport run_factor(const RunConfig& config) {
  RunReport rep;
  Interpretation interp = build_interpretation(config.primary, config.max_carrier);
  FactoredMonad fact(interp, {config.exec(), config.max_round_work});

  ordered_json objects = ordered_json::array();
  ordered_json cardinalities = ordered_json::array();
  bool pass = true;
  for (int64_t nx : config.objects) {
    const SaturatedObject& s = fact.saturate(nx);
    StabilizationReport st = fact.stabilization(nx);
    pass = pass && st.pass();
    ordered_json o;
    o["size"] = nx;
    o["carrier"] = s.carrier;
    o["r_size"] = s.size();
    o["n_bijective"] = s.full();
    o["stabilization"] = stabilization_to_json(st);
    ordered_json witnesses = ordered_json::array();
    const int64_t shown = std::min<int64_t>(s.size(), 32);
    for (int64_t r = 0; r < shown; ++r) {
      ordered_json w;
      w["element"] = interp.monad.decode(nx, s.elements[static_cast<size_t>(r)]);
      w["witness"] = render_witness(s, interp.sig, r);
      w["depth"] = witness_depth(s, r);
      witnesses.push_back(std::move(w));
    }
    o["witnesses"] = std::move(witnesses);
    o["witnesses_truncated"] = shown < s.size();
    objects.push_back(std::move(o));
    cardinalities.push_back(ordered_json::array({nx, s.size()}));
  }

  std::vector<int64_t> law = resolve_law_objects(config);
  FactorizationReport thm = verify_factorization(fact, law[0], law[1], law[2], config.budget,
                                       config.seed, 2, config.max_terms, config.exec());
  pass = pass && thm.all_pass();

  ordered_json tj;
  tj["objects"] = ordered_json::array({thm.nx, thm.ny, thm.nz});
  tj["checks"] = ordered_json::array();
  for (const auto& it : thm.items) tj["checks"].push_back(item_to_json(it));
  tj["all_pass"] = thm.all_pass();
  tj["any_skipped"] = thm.any_skipped();

  rep.body["objects"] = std::move(objects);
  rep.body["cardinalities"] = std::move(cardinalities);
  rep.body["factorization"] = std::move(tj);
  rep.all_pass = pass;
  return rep;
}

RunReport run_laws(const RunConfig& config) {
  RunReport rep;
  Interpretation interp = build_interpretation(config.primary, config.max_carrier);
  const Monad& monad = interp.monad;
  LawReport laws = check_monad_laws(monad, config.objects, config.budget, config.seed,
                                    config.exec());
  rep.body["monad"] = laws.subject;
  rep.body["objects"] = config.objects;
  rep.body["laws"] = ordered_json::array();
  for (const auto& it : aggregate_items(laws.items, true))
    rep.body["laws"].push_back(item_to_json(it));
  ordered_json failed = ordered_json::array();
  for (const auto& it : laws.items)
    if (!it.skipped && !it.pass) failed.push_back(item_to_json(it));
  rep.body["failed_instances"] = std::move(failed);

  // precondition probe: surjections between small objects
  ordered_json surj = ordered_json::array();
  bool surj_pass = true;
  for (int64_t nx : config.objects) {
    if (nx > 3) continue;
    for (int64_t ny : config.objects) {
      if (ny < 1 || ny > nx) continue;
      const int64_t total = checked_pow(ny, nx);
      for (int64_t enc = 0; enc < total; ++enc) {
        std::vector<int64_t> table(static_cast<size_t>(nx));
        int64_t rest = enc;
        for (int64_t i = 0; i < nx; ++i) { table[static_cast<size_t>(i)] = rest % ny; rest /= ny; }
        FinFun e(FinSet(nx), FinSet(ny), std::move(table));
        if (!is_surjective(e)) continue;
        try {
          SurjectionReport sr = check_preserves_surjections(monad, e);
          surj_pass = surj_pass && sr.pass();
          if (!sr.pass()) {
            ordered_json bad;
            bad["from"] = nx;
            bad["to"] = ny;
            bad["e"] = e.table;
            bad["fmap_surjective"] = sr.fmap_surjective;
            bad["product_surjective"] = sr.product_surjective;
            surj.push_back(std::move(bad));
          }
        } catch (const InstanceTooLarge&) {
          // oversized probes are skipped silently; the law items cover them
        }
      }
    }
  }
  rep.body["surjection_preservation"] = ordered_json::object();
  rep.body["surjection_preservation"]["pass"] = surj_pass;
  rep.body["surjection_preservation"]["failures"] = std::move(surj);

  rep.all_pass = laws.all_pass() && surj_pass;
  return rep;
}

RunReport run_theory(const RunConfig& config) {
  RunReport rep;
  Interpretation interp = build_interpretation(config.primary, config.max_carrier);
  FactoredMonad fact(interp, {config.exec(), config.max_round_work});
  ordered_json objects = ordered_json::array();
  bool pass = true;
  for (int64_t nx : config.objects) {
    FinSet x(nx);
    TermArena arena = enumerate_terms(interp.sig, nx, config.depth, config.max_terms);
    KernelPartition part = kernel_partition(interp, arena, nx, config.exec());
    CorrectnessReport corr = correctness_check(fact, nx, config.depth,
                                               config.max_terms, config.exec());
    pass = pass && corr.match;
    ordered_json o;
    o["size"] = nx;
    o["depth"] = config.depth;
    o["terms"] = arena.size();
    o["blocks"] = part.blocks();
    ordered_json blocks = ordered_json::array();
    const int64_t shown = std::min<int64_t>(part.blocks(), 64);
    for (int64_t b = 0; b < shown; ++b) {
      ordered_json bj;
      bj["block"] = b;
      bj["size"] = part.block_size[static_cast<size_t>(b)];
      bj["representative"] =
          render_term(arena, interp.sig, part.representative[static_cast<size_t>(b)]);
      bj["denotation"] = interp.monad.decode(nx, part.denotation[static_cast<size_t>(b)]);
      blocks.push_back(std::move(bj));
    }
    o["partition"] = std::move(blocks);
    o["partition_truncated"] = shown < part.blocks();
    ordered_json cj;
    cj["match"] = corr.match;
    cj["blocks_base"] = corr.blocks_base;
    cj["blocks_factored"] = corr.blocks_factored;
    if (!corr.match) {
      cj["term_a"] = corr.term_a;
      cj["term_b"] = corr.term_b;
      cj["note"] = corr.note;
    }
    o["correctness"] = std::move(cj);
    objects.push_back(std::move(o));
  }
  rep.body["objects"] = std::move(objects);
  rep.all_pass = pass;
  return rep;
}

RunReport run_modularity(const RunConfig& config) {
  RunReport rep;
  Interpretation interp = build_interpretation(config.primary, config.max_carrier);
  FactoredMonad fact(interp, {config.exec(), config.max_round_work});
  SizeFormula f = resolve_formula(config);
  ModularityProfile prof = modularity_profile(fact, config.objects, f);
  rep.body["formula"] = to_string(prof.formula);
  ordered_json rows = ordered_json::array();
  for (const auto& r : prof.rows) {
    ordered_json rj;
    rj["size"] = r.object_size;
    rj["r_size"] = r.r_size;
    rj["expected"] = r.expected;
    rj["match"] = r.match;
    rows.push_back(std::move(rj));
  }
  rep.body["rows"] = std::move(rows);
  rep.body["all_match"] = prof.all_match();
  rep.all_pass = prof.all_match();
  return rep;
}

RunReport run_stability(const RunConfig& config) {
  if (!config.other)
    throw ConfigError("stability requires an \"other\" interpretation");
  RunReport rep;
  Interpretation a = build_interpretation(config.primary, config.max_carrier);
  Interpretation b = build_interpretation(*config.other, config.max_carrier);
  ordered_json objects = ordered_json::array();
  bool pass = true;
  for (int64_t nx : config.objects) {
    StabilityReport sr;
    try {
      sr = stability_check(a, b, nx, config.depth, config.max_terms, config.exec());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    pass = pass && sr.equal;
    ordered_json o;
    o["size"] = nx;
    o["equal"] = sr.equal;
    o["blocks_a"] = sr.blocks_a;
    o["blocks_b"] = sr.blocks_b;
    if (!sr.equal) {
      o["term_a"] = sr.term_a;
      o["term_b"] = sr.term_b;
      o["note"] = sr.note;
    }
    objects.push_back(std::move(o));
  }
  rep.body["objects"] = std::move(objects);
  rep.body["all_equal"] = pass;
  rep.all_pass = pass;
  return rep;
}

RunReport run_presets(const RunConfig& config) {
  RunReport rep;
  ordered_json list = ordered_json::array();
  for (const auto& id : preset_ids()) {
    PresetInfo info = preset_info(id);
    Interpretation interp = make_preset(id, 0, config.max_carrier);
    ordered_json p;
    p["id"] = info.id;
    p["description"] = info.description;
    p["monad"] = info.monad.name();
    p["formula"] = to_string(info.formula);
    p["law_objects"] = info.law_objects;
    ordered_json ops = ordered_json::array();
    for (size_t i = 0; i < interp.sig.ops.size(); ++i) {
      const Operation& op = interp.sig.ops[i];
      ordered_json oj;
      oj["name"] = op.name;
      oj["a"] = op.a.size;
      oj["b"] = op.b.size;
      oj["table"] = interp.gen[i];
      ordered_json decoded = ordered_json::array();
      for (int64_t v : interp.gen[i])
        decoded.push_back(interp.monad.decode(op.b.size, v, &op.b));
      oj["decoded"] = std::move(decoded);
      ops.push_back(std::move(oj));
    }
    p["ops"] = std::move(ops);
    list.push_back(std::move(p));
  }
  rep.body["presets"] = std::move(list);
  rep.all_pass = true;
  return rep;
}

} // namespace

RunReport run_subcommand(const std::string& subcommand, const RunConfig& config) {
  RunReport rep;
  if (subcommand == "factor") rep = run_factor(config);
  else if (subcommand == "laws") rep = run_laws(config);
  else if (subcommand == "theory") rep = run_theory(config);
  else if (subcommand == "modularity") rep = run_modularity(config);
  else if (subcommand == "stability") rep = run_stability(config);
  else if (subcommand == "presets") rep = run_presets(config);
  else throw ConfigError("unknown subcommand: " + subcommand);
  rep.subcommand = subcommand;
  rep.config = config;
  return rep;
}

} // namespace efx
