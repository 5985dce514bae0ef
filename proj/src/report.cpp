#include "effectfactor/report.hpp"

#include <iomanip>
#include <sstream>

namespace efx {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string pass_str(bool b) { return b ? "pass" : "FAIL"; }

void render_check_rows(std::ostringstream& os, const ordered_json& checks) {
  size_t width = 4;
  for (const auto& c : checks)
    width = std::max(width, c["name"].get<std::string>().size());
  for (const auto& c : checks) {
    // an aggregate row can be partly skipped yet pass on the instances
    // that ran; "skip" is shown only when nothing ran at all
    std::string status = !c["pass"].get<bool>() ? "FAIL"
                         : c["skipped"].get<bool>() && c["cases"].get<int64_t>() == 0
                             ? "skip"
                             : "pass";
    os << "  " << std::left << std::setw(static_cast<int>(width) + 2)
       << c["name"].get<std::string>() << status << "  cases=" << c["cases"].get<int64_t>()
       << (c["exhaustive"].get<bool>() ? " (exhaustive)" : " (sampled)");
    std::string note = c["note"].get<std::string>();
    if (!note.empty()) os << "  -- " << note;
    os << "\n";
  }
}

void render_factor(std::ostringstream& os, const ordered_json& body) {
  os << "objects:\n";
  os << "  |X|  |T X|  |R X|  n bijective  rounds  layer trace\n";
  for (const auto& o : body["objects"]) {
    const auto& st = o["stabilization"];
    os << "  " << std::left << std::setw(5) << o["size"].get<int64_t>() << std::setw(7)
       << o["carrier"].get<int64_t>() << std::setw(7) << o["r_size"].get<int64_t>()
       << std::setw(13) << (o["n_bijective"].get<bool>() ? "yes" : "no") << std::setw(8)
       << st["rounds"].get<int64_t>();
    os << "[";
    const auto& trace = st["layer_trace"];
    for (size_t i = 0; i < trace.size(); ++i) os << (i ? ", " : "") << trace[i].get<int64_t>();
    os << "]" << (st["pass"].get<bool>() ? "" : "  FAIL") << "\n";
  }
  os << "witnesses (first object with elements):\n";
  for (const auto& o : body["objects"]) {
    if (o["witnesses"].empty()) continue;
    for (const auto& w : o["witnesses"])
      os << "  " << w["element"].get<std::string>() << "  <-  "
         << w["witness"].get<std::string>() << "  (depth " << w["depth"].get<int>()
         << ")\n";
    if (o["witnesses_truncated"].get<bool>()) os << "  ...\n";
    break;
  }
  const auto& thm = body["factorization"];
  os << "factorization suite at (|X|,|Y|,|Z|) = (" << thm["objects"][0].get<int64_t>() << ","
     << thm["objects"][1].get<int64_t>() << "," << thm["objects"][2].get<int64_t>()
     << "): " << pass_str(thm["all_pass"].get<bool>()) << "\n";
  render_check_rows(os, thm["checks"]);
}

void render_laws(std::ostringstream& os, const ordered_json& body) {
  os << "monad: " << body["monad"].get<std::string>() << "\n";
  render_check_rows(os, body["laws"]);
  const auto& surj = body["surjection_preservation"];
  os << "  surjection preservation: " << pass_str(surj["pass"].get<bool>()) << "\n";
}

void render_theory(std::ostringstream& os, const ordered_json& body) {
  for (const auto& o : body["objects"]) {
    os << "|X| = " << o["size"].get<int64_t>() << ": " << o["terms"].get<int64_t>()
       << " terms of depth <= " << o["depth"].get<int>() << ", "
       << o["blocks"].get<int64_t>() << " blocks; correctness "
       << pass_str(o["correctness"]["match"].get<bool>()) << "\n";
    for (const auto& b : o["partition"])
      os << "  block " << b["block"].get<int64_t>() << " (" << b["size"].get<int64_t>()
         << " terms): " << b["representative"].get<std::string>() << "  |->  "
         << b["denotation"].get<std::string>() << "\n";
    if (o["partition_truncated"].get<bool>()) os << "  ...\n";
    if (!o["correctness"]["match"].get<bool>())
      os << "  mismatch: " << o["correctness"]["note"].get<std::string>() << "\n";
  }
}

void render_modularity(std::ostringstream& os, const ordered_json& body) {
  os << "formula: " << body["formula"].get<std::string>() << "\n";
  os << "  |X|  |R X|  expected  verdict\n";
  for (const auto& r : body["rows"])
    os << "  " << std::left << std::setw(5) << r["size"].get<int64_t>() << std::setw(7)
       << r["r_size"].get<int64_t>() << std::setw(10) << r["expected"].get<int64_t>()
       << (r["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
}

void render_stability(std::ostringstream& os, const ordered_json& body) {
  for (const auto& o : body["objects"]) {
    os << "|X| = " << o["size"].get<int64_t>() << ": "
       << (o["equal"].get<bool>() ? "partitions identical" : "partitions DIFFER")
       << " (" << o["blocks_a"].get<int64_t>() << " vs " << o["blocks_b"].get<int64_t>()
       << " blocks)\n";
    if (!o["equal"].get<bool>()) os << "  " << o["note"].get<std::string>() << "\n";
  }
}

void render_presets(std::ostringstream& os, const ordered_json& body) {
  for (const auto& p : body["presets"]) {
    os << p["id"].get<std::string>() << "  [" << p["monad"].get<std::string>() << ", "
       << p["formula"].get<std::string>() << "]\n";
    os << "  " << p["description"].get<std::string>() << "\n";
    for (const auto& op : p["ops"]) {
      os << "  " << op["name"].get<std::string>() << " : " << op["a"].get<int64_t>()
         << " -> " << op["b"].get<int64_t>() << ", table [";
      const auto& t = op["table"];
      for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i].get<int64_t>();
      os << "] = ";
      const auto& d = op["decoded"];
      for (size_t i = 0; i < d.size(); ++i)
        os << (i ? ", " : "") << d[i].get<std::string>();
      os << "\n";
    }
  }
}

} // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::machine) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["schema"] = kReportSchema;
    j["subcommand"] = report.subcommand;
    j["all_pass"] = report.all_pass;
    j["timing_ms"] =
        report.timing_ms ? ordered_json(*report.timing_ms) : ordered_json(nullptr);
    j["config"] = ordered_json::parse(emit_config(report.config));
    j["body"] = report.body;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << kToolName << " " << kToolVersion << " -- " << report.subcommand << "\n";
  os << "seed " << report.config.seed << ", budget " << report.config.budget << "\n";
  if (report.subcommand == "factor") render_factor(os, report.body);
  else if (report.subcommand == "laws") render_laws(os, report.body);
  else if (report.subcommand == "theory") render_theory(os, report.body);
  else if (report.subcommand == "modularity") render_modularity(os, report.body);
  else if (report.subcommand == "stability") render_stability(os, report.body);
  else if (report.subcommand == "presets") render_presets(os, report.body);
  os << "result: " << (report.all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  if (report.timing_ms) os << "elapsed: " << *report.timing_ms << " ms\n";
  return os.str();
}

} // namespace efx
