#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "effectfactor/report.hpp"

namespace {

// exit codes: 0 all checks pass, 1 check failures, 2 config errors,
// 3 instance too large
constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTooLarge = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw efx::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"effect-graded monad workbench: factorize, verify, compare"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "human";
  bool serial = false;
  bool timings = false;
  std::optional<uint64_t> seed;
  std::optional<int64_t> budget;
  std::optional<int64_t> max_carrier;
  std::optional<int> depth;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "run configuration (JSON)");
    if (config_required) opt->required();
    sub->add_option("--format", format, "report format: human|machine")
        ->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--seed", seed, "override the sampling seed");
    sub->add_option("--budget", budget, "override the exhaustiveness budget");
    sub->add_option("--max-carrier", max_carrier, "override the carrier cap");
    sub->add_option("--depth", depth, "override the term depth");
    sub->add_flag("--serial", serial, "disable the parallel kernels");
    sub->add_flag("--timings", timings, "attach wall time (breaks byte-identical output)");
  };

  add_common(app.add_subcommand("factor", "saturate R, verify the factorization"), true);
  add_common(app.add_subcommand("laws", "check the monad and strength laws of T"), true);
  add_common(app.add_subcommand("theory", "kernel partition of the term enumeration"), true);
  add_common(app.add_subcommand("stability", "compare theories across two base monads"), true);
  add_common(app.add_subcommand("modularity", "compare |R X| against a closed form"), true);
  add_common(app.add_subcommand("presets", "list the built-in presets"), false);

  CLI11_PARSE(app, argc, argv);
  const std::string subcommand = app.get_subcommands().front()->get_name();

  try {
    efx::RunConfig config;
    if (!config_path.empty()) {
      config = efx::parse_config(read_file(config_path));
    } else if (subcommand != "presets") {
      throw efx::ConfigError("subcommand requires --config");
    }
    if (seed) config.seed = *seed;
    if (budget) config.budget = *budget;
    if (max_carrier) config.max_carrier = *max_carrier;
    if (depth) config.depth = *depth;
    if (serial) config.parallel = false;

    auto t0 = std::chrono::steady_clock::now();
    efx::RunReport report = efx::run_subcommand(subcommand, config);
    auto t1 = std::chrono::steady_clock::now();
    if (timings)
      report.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::cout << emit_report(report, format == "machine" ? efx::ReportFormat::machine
                                                         : efx::ReportFormat::human);
    return report.all_pass ? 0 : kExitFailures;
  } catch (const efx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const efx::InstanceTooLarge& e) {
    std::cerr << "instance too large: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
