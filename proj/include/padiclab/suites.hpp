#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padiclab/local_field.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

struct SuiteConfig {
  std::string suite;
  int p = 5;
  ExtensionKind ext = ExtensionKind::trivial;
  /// "family:size"; unset means the suite's default sweep.
  std::optional<std::string> group;
  Rational precision = 12;
  /// 0 selects the suite default.
  int samples = 0;
  std::uint64_t seed = 1;
  std::uint64_t cap = 100000;
  /// Worker threads for trials; the report does not depend on it.
  int threads = 1;
};

struct Counterexample {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct CheckRecord {
  std::string id;
  std::string statement;
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  std::uint64_t precision_exhausted = 0;
  /// At most a handful are kept; failures counts them all.
  std::vector<Counterexample> counterexamples;
  std::uint64_t failures = 0;
  double wall_ms = 0;
};

enum class SuiteVerdict { pass, counterexample, precision_exhausted };
std::string to_string(SuiteVerdict v);

struct SuiteReport {
  SuiteConfig config;
  std::vector<std::string> annotations;
  std::vector<CheckRecord> checks;
  nlohmann::json attachments = nlohmann::json::object();
  double wall_ms = 0;

  SuiteVerdict verdict() const;
  /// 0 pass, 1 counterexample, 2 precision exhausted.
  int exit_code() const;
};

/// The ten suite names in their fixed order.
const std::vector<std::string>& list_suites();

/// ConfigError on an unknown suite, bad group spec or a field that cannot
/// be constructed.  Deterministic in (config, seed).
SuiteReport run_suite(const SuiteConfig& cfg);

/// Report with "schema": 1.  Timing fields are left out unless requested.
nlohmann::json to_json(const SuiteReport& report, bool with_timing = true);
/// One line per check and a verdict line.
std::string summary(const SuiteReport& report);

}  // namespace padiclab
