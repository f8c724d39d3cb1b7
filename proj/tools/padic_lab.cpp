#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/serialize.hpp"
#include "padiclab/suites.hpp"

using namespace padiclab;

namespace {

constexpr int kConfigError = 3;

int run(const SuiteConfig& cfg, const std::string& out, bool as_json) {
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "padic_lab: cannot write " << out << "\n";
      return kConfigError;
    }
  }
  const SuiteReport report = run_suite(cfg);
  const auto j = to_json(report);
  if (file) file << j.dump(2) << "\n";
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << summary(report);
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized and exhaustive checks of twisted descent over p-adic fields.", "padic_lab"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Flat key = value file with the same keys as the flags; flags win");
  app.fallthrough();
  app.require_subcommand(0, 1);

  SuiteConfig cfg;
  std::string ext = "trivial";
  std::string group;
  std::string prec = "12";
  std::string out;
  bool as_json = false;
  app.add_option("--suite", cfg.suite, "Suite to run (see the list subcommand)");
  app.add_option("--p", cfg.p, "Residue characteristic, an odd prime");
  app.add_option("--ext", ext, "Extension E/F: trivial, unram or ram");
  app.add_option("--group", group, "family:size, e.g. GL:3, U:2, Sp:4; default is the suite's sweep");
  app.add_option("--prec", prec, "Precision in valuation units, a fraction");
  app.add_option("--samples", cfg.samples, "Trials per check; 0 uses the suite default");
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("PADIC_LAB_SEED");
  app.add_option("--cap", cfg.cap, "Largest graded quotient to enumerate");
  app.add_option("--threads", cfg.threads, "Worker threads; results do not depend on it");
  app.add_option("--out", out, "Write the JSON report here");
  app.add_flag("--json", as_json, "Print the JSON report instead of the summary");

  auto* list = app.add_subcommand("list", "Print the suite names");
  auto* roots = app.add_subcommand("roots", "Print the simple affine roots of --group as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    cfg.ext = parse_extension_kind(ext);
    if (list->parsed()) {
      for (const auto& name : list_suites()) std::cout << name << "\n";
      return 0;
    }
    if (roots->parsed()) {
      if (group.empty()) throw ConfigError("roots needs --group");
      std::cout << roots_json(parse_group(group, cfg.ext)).dump(2) << "\n";
      return 0;
    }
    if (cfg.suite.empty()) throw ConfigError("--suite is required");
    if (!group.empty()) cfg.group = group;
    cfg.precision = parse_rational(prec);
    if (cfg.precision <= 0) throw ConfigError("--prec must be positive");
    return run(cfg, out, as_json);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "padic_lab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "padic_lab: " << e.what() << "\n";
    return kConfigError;
  }
}
