#include "effectfactor/config.hpp"

#include <json.hpp>

namespace efx {

using ordered_json = nlohmann::ordered_json;

bool operator==(const InterpConfig& a, const InterpConfig& b) {
  auto op_eq = [](const Operation& x, const Operation& y) {
    return x.name == y.name && x.a.size == y.a.size && x.b.size == y.b.size;
  };
  if (a.ops.size() != b.ops.size()) return false;
  for (size_t i = 0; i < a.ops.size(); ++i)
    if (!op_eq(a.ops[i], b.ops[i])) return false;
  return a.preset == b.preset && a.param == b.param && a.monad == b.monad &&
         a.tables == b.tables;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.version == b.version && a.primary == b.primary && a.other == b.other &&
         a.objects == b.objects && a.depth == b.depth && a.budget == b.budget &&
         a.seed == b.seed && a.max_carrier == b.max_carrier &&
         a.max_round_work == b.max_round_work && a.max_terms == b.max_terms &&
         a.law_objects == b.law_objects && a.formula == b.formula &&
         a.parallel == b.parallel;
}

namespace {

void reject_unknown_keys(const ordered_json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (!key.empty() && key[0] == '_') continue; // comment block
    bool ok = false;
    for (const char* k : known)
      if (key == k) { ok = true; break; }
    if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

InterpConfig parse_interp(const ordered_json& j, const std::string& where) {
  reject_unknown_keys(j, {"preset", "param", "monad", "ops", "tables"}, where);
  InterpConfig ic;
  if (j.contains("preset") && !j["preset"].is_null()) {
    ic.preset = j["preset"].get<std::string>();
    if (!is_preset(*ic.preset)) throw ConfigError("unknown preset: " + *ic.preset);
  }
  if (j.contains("param") && !j["param"].is_null()) {
    ic.param = j["param"].get<int64_t>();
    if (*ic.param < 1) throw ConfigError("param must be >= 1 in " + where);
  }
  if (j.contains("monad") && !j["monad"].is_null()) {
    const auto& m = j["monad"];
    reject_unknown_keys(m, {"kind", "param"}, where + ".monad");
    MonadSpec spec;
    spec.kind = monad_kind_from_string(m.at("kind").get<std::string>());
    spec.param = m.value("param", int64_t{0});
    ic.monad = spec;
  }
  if (j.contains("ops")) {
    for (const auto& o : j["ops"]) {
      reject_unknown_keys(o, {"name", "a", "b"}, where + ".ops");
      Operation op;
      op.name = o.at("name").get<std::string>();
      op.a = FinSet(o.at("a").get<int64_t>());
      op.b = FinSet(o.at("b").get<int64_t>());
      ic.ops.push_back(std::move(op));
    }
  }
  if (j.contains("tables")) {
    for (auto it = j["tables"].begin(); it != j["tables"].end(); ++it)
      ic.tables[it.key()] = it.value().get<std::vector<int64_t>>();
  }
  if (ic.preset && (ic.monad || !ic.ops.empty() || !ic.tables.empty()))
    throw ConfigError(where + ": preset and explicit interpretation are exclusive");
  if (!ic.preset && !ic.monad)
    throw ConfigError(where + ": either preset or monad is required");
  return ic;
}

ordered_json interp_to_json(const InterpConfig& ic) {
  ordered_json j;
  j["preset"] = ic.preset ? ordered_json(*ic.preset) : ordered_json(nullptr);
  j["param"] = ic.param ? ordered_json(*ic.param) : ordered_json(nullptr);
  if (ic.monad) {
    j["monad"] = {{"kind", to_string(ic.monad->kind)}, {"param", ic.monad->param}};
  } else {
    j["monad"] = nullptr;
  }
  j["ops"] = ordered_json::array();
  for (const auto& op : ic.ops)
    j["ops"].push_back({{"name", op.name}, {"a", op.a.size}, {"b", op.b.size}});
  j["tables"] = ordered_json::object();
  for (const auto& [name, table] : ic.tables) j["tables"][name] = table;
  return j;
}

} // namespace

RunConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(j,
                        {"version", "interpretation", "other", "objects", "depth",
                         "budget", "seed", "max_carrier", "max_round_work",
                         "max_terms", "law_objects", "formula", "exec"},
                        "config");
    RunConfig c;
    c.version = j.value("version", 1);
    if (c.version != 1)
      throw ConfigError("unsupported config version " + std::to_string(c.version));
    if (!j.contains("interpretation"))
      throw ConfigError("config requires an \"interpretation\" block");
    c.primary = parse_interp(j["interpretation"], "interpretation");
    if (j.contains("other") && !j["other"].is_null())
      c.other = parse_interp(j["other"], "other");
    if (j.contains("objects")) c.objects = j["objects"].get<std::vector<int64_t>>();
    for (int64_t n : c.objects)
      if (n < 0) throw ConfigError("objects must be non-negative sizes");
    c.depth = j.value("depth", 3);
    if (c.depth < 0) throw ConfigError("depth must be >= 0");
    c.budget = j.value("budget", int64_t{100'000});
    if (c.budget < 1) throw ConfigError("budget must be >= 1");
    c.seed = j.value("seed", uint64_t{0});
    c.max_carrier = j.value("max_carrier", kDefaultCarrierCap);
    c.max_round_work = j.value("max_round_work", int64_t{50'000'000});
    c.max_terms = j.value("max_terms", int64_t{1'000'000});
    if (j.contains("law_objects"))
      c.law_objects = j["law_objects"].get<std::vector<int64_t>>();
    if (j.contains("formula") && !j["formula"].is_null()) {
      c.formula = j["formula"].get<std::string>();
      formula_from_string(*c.formula); // validate
    }
    std::string exec = j.value("exec", "parallel");
    if (exec == "parallel") c.parallel = true;
    else if (exec == "serial") c.parallel = false;
    else throw ConfigError("exec must be \"parallel\" or \"serial\"");
    return c;
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string emit_config(const RunConfig& c) {
  ordered_json j;
  j["version"] = c.version;
  j["interpretation"] = interp_to_json(c.primary);
  j["other"] = c.other ? interp_to_json(*c.other) : ordered_json(nullptr);
  j["objects"] = c.objects;
  j["depth"] = c.depth;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["max_carrier"] = c.max_carrier;
  j["max_round_work"] = c.max_round_work;
  j["max_terms"] = c.max_terms;
  j["law_objects"] = c.law_objects;
  j["formula"] = c.formula ? ordered_json(*c.formula) : ordered_json(nullptr);
  j["exec"] = c.parallel ? "parallel" : "serial";
  return j.dump(2) + "\n";
}

Interpretation build_interpretation(const InterpConfig& ic, int64_t max_carrier) {
  try {
    if (ic.preset) return make_preset(*ic.preset, ic.param.value_or(0), max_carrier);
    MonadSpec spec = *ic.monad;
    if (ic.param) spec.param = *ic.param;
    Monad monad(spec, max_carrier);
    std::vector<std::vector<int64_t>> gen;
    for (const auto& op : ic.ops) {
      auto it = ic.tables.find(op.name);
      if (it == ic.tables.end())
        throw ConfigError("missing generic-effect table for operation " + op.name);
      gen.push_back(it->second);
    }
    for (const auto& [name, _] : ic.tables) {
      bool found = false;
      for (const auto& op : ic.ops) found |= op.name == name;
      if (!found) throw ConfigError("table for unknown operation " + name);
    }
    return {std::move(monad), Signature(ic.ops), std::move(gen)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<int64_t> resolve_law_objects(const RunConfig& c) {
  if (!c.law_objects.empty()) {
    if (c.law_objects.size() != 3)
      throw ConfigError("law_objects must list exactly three sizes");
    return c.law_objects;
  }
  if (c.primary.preset)
    return preset_info(*c.primary.preset, c.primary.param.value_or(0)).law_objects;
  return {2, 2, 2};
}

SizeFormula resolve_formula(const RunConfig& c) {
  if (c.formula) return formula_from_string(*c.formula);
  if (c.primary.preset)
    return preset_info(*c.primary.preset, c.primary.param.value_or(0)).formula;
  throw ConfigError("modularity needs a \"formula\" (no preset default available)");
}

} // namespace efx
