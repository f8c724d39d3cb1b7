// Runs the nine acceptance criteria at full size and prints one line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "padiclab/building.hpp"
#include "padiclab/suites.hpp"
#include "padiclab/twisted.hpp"

using namespace padiclab;

namespace {

const ExtensionKind kKinds[] = {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified};

struct Tally {
  std::uint64_t runs = 0;
  std::uint64_t trials = 0;
  double max_run_s = 0;
  double total_s = 0;
  std::string failure;

  SuiteReport add(const SuiteConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const SuiteReport rep = run_suite(cfg);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ++runs;
    max_run_s = std::max(max_run_s, s);
    total_s += s;
    for (const auto& c : rep.checks) trials += c.trials;
    if (rep.verdict() != SuiteVerdict::pass && failure.empty()) {
      failure = cfg.suite + " p=" + std::to_string(cfg.p) + " " + to_string(cfg.ext) + " " + cfg.group.value_or("default");
      for (const auto& c : rep.checks)
        if (c.failures > 0 || c.precision_exhausted > 0) {
          failure += ": " + c.id;
          if (!c.counterexamples.empty()) failure += " (" + c.counterexamples.front().detail + ")";
          break;
        }
    }
    return rep;
  }
};

SuiteConfig config(const std::string& suite, int p, ExtensionKind kind, std::optional<std::string> group, int samples) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.p = p;
  cfg.ext = kind;
  cfg.group = std::move(group);
  cfg.samples = samples;
  cfg.seed = 20240601;
  return cfg;
}

int failures = 0;

void report(const char* id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void criterion(const char* id, const std::string& name, const std::function<std::string(bool&)>& body) {
  bool ok = true;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  report(id, name, ok, detail);
}

std::string describe(const Tally& t, double limit_s, const char* limit_what) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu runs, %llu trials, %s %.2f s (limit %.0f s)", static_cast<unsigned long long>(t.runs),
                static_cast<unsigned long long>(t.trials), limit_what,
                std::string(limit_what) == "max per run" ? t.max_run_s : t.total_s, limit_s);
  return t.failure.empty() ? buf : std::string(buf) + "; first failure " + t.failure;
}

}  // namespace

int main() {
  // Time limits are the stated budgets for this suite size.
  criterion("C1", "cayley", [](bool& ok) {
    Tally t;
    for (int p : {3, 5, 7})
      for (auto kind : kKinds)
        for (int n : {2, 3, 4}) t.add(config("cayley", p, kind, "GL:" + std::to_string(n), 500));
    ok = t.failure.empty() && t.runs == 27 && t.max_run_s < 10;
    return describe(t, 10, "max per run");
  });

  criterion("C2", "filtration", [](bool& ok) {
    Tally t;
    for (auto kind : kKinds)
      for (int n : {2, 3, 4}) t.add(config("filtration", 5, kind, "GL:" + std::to_string(n), 1000));
    ok = t.failure.empty();
    return describe(t, 60, "total");
  });

  criterion("C3", "alcove", [](bool& ok) {
    Tally t;
    auto cfg = config("alcove", 5, ExtensionKind::trivial, std::nullopt, 10000);
    // Every case, every rank up to 5, both quadratic kinds for the unitary case.
    const SuiteReport rep = t.add(cfg);
    std::set<std::string> pairs;
    bool quarter = false;
    for (const auto& c : rep.attachments.at("certificates")) {
      pairs.insert(c.at("pair").get<std::string>());
      if (!c.at("valid").get<bool>()) ok = false;
    }
    for (const auto& pair : {GroupPair::make(4, 3, ExtensionKind::ramified), GroupPair::make(4, 5, ExtensionKind::ramified)})
      for (const auto& a : simple_affine_roots(pair.g_theta()))
        quarter = quarter || a.constant.denominator() == 4;
    ok = ok && t.failure.empty() && pairs.size() == 37 && quarter && t.max_run_s < 5;
    return describe(t, 5, "max per run") + ", " + std::to_string(pairs.size()) + " certificates";
  });

  criterion("C4", "theta-compat", [](bool& ok) {
    Tally t;
    for (auto kind : kKinds)
      for (int n : {2, 3, 4}) t.add(config("theta-compat", 5, kind, "GL:" + std::to_string(n), 20));
    ok = t.failure.empty();
    return describe(t, 60, "total");
  });

  criterion("C5", "descent", [](bool& ok) {
    Tally t;
    for (auto kind : {ExtensionKind::trivial, ExtensionKind::ramified})
      for (int n : {2, 3}) t.add(config("descent", 5, kind, "GL:" + std::to_string(n), 100));
    ok = t.failure.empty() && t.total_s < 60;
    return describe(t, 60, "total");
  });

  criterion("C6", "coset/partition", [](bool& ok) {
    Tally t;
    for (auto kind : kKinds) {
      t.add(config("partition", 3, kind, "GL:2", 0));
      t.add(config("coset", 3, kind, "GL:2", 2000));
    }
    ok = t.failure.empty() && t.total_s < 30;
    return describe(t, 30, "total");
  });

  criterion("C7", "norm", [](bool& ok) {
    Tally t;
    for (auto kind : kKinds) t.add(config("norm", 5, kind, std::nullopt, 1000));
    ok = t.failure.empty();
    return describe(t, 60, "total");
  });

  criterion("C8", "hypothesis", [](bool& ok) {
    Tally t;
    t.add(config("hypothesis", 5, ExtensionKind::trivial, std::nullopt, 0));
    // Smallest admissible prime per case and rank 1..6.
    const int smallest[4][6] = {{5, 7, 11, 11, 13, 17}, {5, 7, 11, 11, 13, 17}, {5, 7, 11, 11, 13, 17}, {3, 5, 5, 7, 7, 11}};
    int checked = 0;
    for (int which = 1; which <= 4; ++which)
      for (int n = 1; n <= 6; ++n)
        for (int p = 2; p < 30; ++p) {
          if (!is_prime(p)) continue;
          const auto pair = GroupPair::make(which, n, which == 4 ? ExtensionKind::unramified : ExtensionKind::trivial);
          ok = ok && hypothesis_check(pair, p) == (p >= smallest[which - 1][n - 1]);
          ++checked;
        }
    ok = ok && t.failure.empty() && checked == 240;
    return describe(t, 60, "total") + ", " + std::to_string(checked) + " table entries";
  });

  criterion("C9", "transfer-pair", [](bool& ok) {
    Tally t;
    for (auto kind : {ExtensionKind::unramified, ExtensionKind::ramified}) {
      t.add(config("transfer-pair", 3, kind, "U:2", 200));
      t.add(config("transfer-pair", 5, kind, "U:3", 200));
    }
    ok = t.failure.empty();
    return describe(t, 60, "total");
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
