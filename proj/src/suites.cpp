#include "padiclab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "padiclab/cayley.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/lattice.hpp"
#include "padiclab/serialize.hpp"
#include "padiclab/twisted.hpp"

namespace padiclab {

namespace {

using nlohmann::json;
using Outcome = std::optional<std::string>;
using TrialFn = std::function<std::vector<Outcome>(std::uint64_t, std::mt19937_64&)>;

constexpr std::size_t kKeptCounterexamples = 5;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, so phase seeds do not depend on the standard library's hash.
std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

struct Check {
  std::string id;
  std::string statement;
};

struct TrialResult {
  std::vector<Outcome> outcomes;
  bool exhausted = false;
};

class Runner {
 public:
  Runner(SuiteReport& rep) : rep_(rep) {}

  // Runs trials 0..n-1 of fn, possibly on several threads, and merges the
  // results into the records of checks in trial order.
  void phase(const std::string& name, const std::vector<Check>& checks, std::uint64_t n, const TrialFn& fn) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t base = splitmix64(rep_.config.seed ^ name_hash(rep_.config.suite + "/" + name));
    std::vector<TrialResult> results(n);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr config_error;
    std::mutex error_lock;
    auto work = [&] {
      for (std::uint64_t t; (t = next++) < n;) {
        std::mt19937_64 rng(splitmix64(base + t));
        auto& res = results[t];
        try {
          res.outcomes = fn(t, rng);
          res.outcomes.resize(checks.size());
        } catch (const PrecisionExhausted&) {
          res.exhausted = true;
        } catch (const ConfigError&) {
          const std::lock_guard<std::mutex> hold(error_lock);
          if (!config_error) config_error = std::current_exception();
        } catch (const std::exception& e) {
          res.outcomes.assign(checks.size(), std::string("error: ") + e.what());
        }
      }
    };
    const int threads = std::max(1, std::min<int>(rep_.config.threads, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (config_error) std::rethrow_exception(config_error);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    for (std::size_t c = 0; c < checks.size(); ++c) {
      CheckRecord& rec = record(checks[c]);
      rec.wall_ms += ms;
      for (std::uint64_t t = 0; t < n; ++t) {
        const auto& res = results[t];
        ++rec.trials;
        if (res.exhausted) {
          ++rec.precision_exhausted;
          continue;
        }
        const auto& out = res.outcomes[c];
        if (!out) {
          ++rec.passes;
          continue;
        }
        ++rec.failures;
        if (rec.counterexamples.size() < kKeptCounterexamples)
          rec.counterexamples.push_back({t, splitmix64(base + t), name + ": " + *out});
      }
    }
  }

 private:
  CheckRecord& record(const Check& c) {
    for (auto& r : rep_.checks)
      if (r.id == c.id) return r;
    CheckRecord& rec = rep_.checks.emplace_back();
    rec.id = c.id;
    rec.statement = c.statement;
    return rec;
  }

  SuiteReport& rep_;
};

Outcome expect(bool ok, const std::string& why) {
  if (ok) return std::nullopt;
  return why;
}

// ---------------------------------------------------------------- samplers

Matrix random_unimodular(const LocalField& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix a = Matrix::random(f, n, rng);
    if (charpoly(a)[0].ord() == 0) return a;
  }
}

// Conjugate of a strictly upper triangular matrix plus a deep perturbation.
Matrix random_tn(const LocalField& f, int n, std::mt19937_64& rng) {
  Matrix u = Matrix::random(f, n, rng, f.e());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = f.random_integral(rng);
  Matrix a = random_unimodular(f, n, rng);
  return a * u * a.inverse();
}

Rational random_rational(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> den(1, 48);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  return Rational(num(rng), d);
}

ApartmentPoint random_point(std::mt19937_64& rng, int n) {
  ApartmentPoint x;
  for (int i = 0; i < n; ++i) x.push_back(random_rational(rng, -1, 1));
  return x;
}

ApartmentPoint random_fixed_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::vector<Rational> t;
  for (int i = 0; i < n / 2; ++i) t.push_back(Rational(num(rng), 24));
  return fixed_point(t, n);
}

Matrix random_in_filtration(const LocalField& f, const ApartmentPoint& x, const Rational& r, std::mt19937_64& rng) {
  const int n = static_cast<int>(x.size());
  const auto t = mp_thresholds(x, r, f.e());
  Matrix m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = f.random_integral(rng, t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
  auto inv_mod = [p](int a) {
    int r = 1;
    for (int e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const int inv = inv_mod(rows[rank][c]);
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int k = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = ((rows[r][j] - k * rows[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

// ------------------------------------------------------------ config helpers

LocalField make_field(const SuiteConfig& cfg, ExtensionKind kind) {
  try {
    return LocalField::make(cfg.p, kind, cfg.precision);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

// Matrix sizes to sweep: the configured group, or the default list.
std::vector<int> sizes_for(const SuiteConfig& cfg, std::vector<int> defaults) {
  if (!cfg.group) return defaults;
  GroupType g;
  try {
    g = parse_group(*cfg.group, cfg.ext);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (g.family != Family::GL && g.family != Family::U)
    throw ConfigError("suite " + cfg.suite + " works with GL:N or U:N, not " + *cfg.group);
  if (g.size < 1 || g.size > 8) throw ConfigError("matrix size must be between 1 and 8");
  return {g.size};
}

int samples_or(const SuiteConfig& cfg, int fallback) { return cfg.samples > 0 ? cfg.samples : fallback; }

// The endoscopic pair whose hypothesis covers matrices of size n over cfg.ext.
std::optional<GroupPair> pair_for(int n, ExtensionKind kind) {
  if (kind != ExtensionKind::trivial) return GroupPair::make(4, n, kind);
  if (n % 2 == 1) {
    if (n == 1) return std::nullopt;
    return GroupPair::make(1, (n - 1) / 2);
  }
  return GroupPair::make(2, n / 2);
}

void annotate_hypothesis(SuiteReport& rep, const std::vector<int>& sizes) {
  for (int n : sizes) {
    const auto pair = pair_for(n, rep.config.ext);
    if (pair && !hypothesis_check(*pair, rep.config.p))
      rep.annotations.push_back("outside the hypothesis on p for " + pair->to_string());
  }
}

// ------------------------------------------------------------------ suites

void cayley_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2, 3, 4});
  Runner run(rep);
  run.phase("cayley",
            {{"roundtrip", "c^-1(c(X)) = X and c(c^-1(g)) = g"},
             {"conjugation", "A c(X) A^-1 = c(A X A^-1)"},
             {"theta", "theta(c(X)) = c(dtheta X)"},
             {"series", "c(X) equals 1 + 2 sum (X/2)^k"}},
            static_cast<std::uint64_t>(samples_or(cfg, 500)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const Matrix x = t % 2 == 0 ? Matrix::random(f, n, rng, 1) : random_tn(f, n, rng);
              const Matrix a = random_unimodular(f, n, rng);
              const Matrix g = cayley(x);
              const auto eq = verify_equivariance(a, x);
              return std::vector<Outcome>{
                  expect(agree(cayley_inv(g), x) && agree(cayley(cayley_inv(g)), g), "roundtrip differs"),
                  expect(eq.conjugation_ok, "conjugation equivariance fails"),
                  expect(eq.theta_ok, "theta equivariance fails"),
                  expect(agree(cayley_series(x), g), "series differs")};
            });
}

void filtration_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {3});
  const auto probes = static_cast<std::uint64_t>(samples_or(cfg, 1000));
  const int e = f.e();
  std::map<int, Lattice> iwahori;
  for (int n : sizes) iwahori.emplace(n, mp_lattice(f, gl_barycenter(n, e), 0));
  Runner run(rep);

  run.phase("iwahori", {{"iwahori", "barycenter level-0 lattice is the Iwahori pattern"}}, probes,
            [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              std::uniform_int_distribution<int> coin(0, 1);
              Matrix m(f, n);
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = f.random_integral(rng, coin(rng));
              bool pattern = true;
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) pattern = pattern && m(i, j).ord() >= 1;
              const auto bary = gl_barycenter(n, e);
              bool thresholds = true;
              const auto th = mp_thresholds(bary, 0, e);
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) thresholds = thresholds && th[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == (i > j ? 1 : 0);
              return std::vector<Outcome>{expect(thresholds && mp_membership(m, bary, 0) == pattern &&
                                                     iwahori.at(n).contains(m) == pattern,
                                                 "membership disagrees with the pattern")};
            });

  run.phase("phi-shift",
            {{"phi-shift", "phi i_{s-1} = i_{s-1+} and phi^{eN} i_{s-1} = i_s"}},
            3 * sizes.size(), [&](std::uint64_t t, std::mt19937_64&) {
              const int n = sizes[t / 3];
              const int s = static_cast<int>(t % 3) + 1;
              const auto bary = gl_barycenter(n, e);
              const Matrix phi = phi_matrix(f, n);
              Matrix phi_power = Matrix::identity(f, n);
              for (int k = 0; k < e * n; ++k) phi_power = phi_power * phi;
              const Lattice prev = mp_lattice(f, bary, s - 1);
              return std::vector<Outcome>{
                  expect(prev.left_multiplied(phi) == mp_lattice(f, bary, s - 1, true) &&
                             prev.left_multiplied(phi_power) == mp_lattice(f, bary, s),
                         "shift law fails at s = " + std::to_string(s))};
            });

  run.phase("uniformizer-shift", {{"uniformizer-shift", "g_{x,r+1} = p g_{x,r}"}}, probes,
            [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const auto x = random_point(rng, n);
              const Rational r = random_rational(rng, -1, 2);
              const Matrix m = Matrix::random(f, n, rng, 2);
              return std::vector<Outcome>{expect(
                  mp_membership(m * f.uniformizer_f(), x, r + 1) == mp_membership(m, x, r), "shift by p changes membership")};
            });

  run.phase("product-stability", {{"product-stability", "g_{x,r} g_{x,r} lies in g_{x,r} for r >= 0"}}, probes,
            [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const auto x = random_point(rng, n);
              const Rational r = random_rational(rng, 0, 2);
              const Matrix a = random_in_filtration(f, x, r, rng);
              const Matrix b = random_in_filtration(f, x, r, rng);
              bool ok = mp_membership(a * b, x, r);
              if (t % 10 == 0) ok = ok && mp_lattice(f, x, r).contains(mp_lattice(f, x, r).power(2));
              return std::vector<Outcome>{expect(ok, "product leaves the lattice")};
            });

  run.phase("nesting", {{"nesting", "g_{x,s} lies in g_{x,r+} lies in g_{x,r} for s > r"}}, probes,
            [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const auto x = random_point(rng, n);
              const Rational r = random_rational(rng, -1, 2);
              const Rational s = r + random_rational(rng, 0, 1);
              const Matrix m = random_in_filtration(f, x, s, rng);
              bool ok = mp_membership(m, x, r);
              if (s > r) ok = ok && mp_membership_strict(m, x, r);
              return std::vector<Outcome>{expect(ok, "filtration is not decreasing")};
            });
}

std::vector<GroupPair> all_pairs(int max_rank) {
  std::vector<GroupPair> out;
  for (int which = 1; which <= 3; ++which)
    for (int n = 1; n <= max_rank; ++n) out.push_back(GroupPair::make(which, n));
  for (auto kind : {ExtensionKind::unramified, ExtensionKind::ramified})
    for (int n = 1; n <= 2 * max_rank + 1; ++n) out.push_back(GroupPair::make(4, n, kind));
  return out;
}

void alcove_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  if (cfg.group) rep.annotations.push_back("all four cases are swept; the group option is ignored");
  const auto pairs = all_pairs(5);
  std::vector<InclusionCertificate> certs;
  json attached = json::array();
  for (const auto& pair : pairs) {
    certs.push_back(inclusion_certificate(pair));
    attached.push_back(to_json(certs.back()));
  }
  rep.attachments["certificates"] = attached;
  std::vector<std::vector<ApartmentPoint>> verts;
  for (const auto& pair : pairs) verts.push_back(alcove_vertices(pair.g_theta()));

  Runner run(rep);
  run.phase("certificates", {{"certificates", "every simple affine root of G restricts to a nonnegative combination of roots of G_theta"}},
            pairs.size(), [&](std::uint64_t t, std::mt19937_64&) {
              return std::vector<Outcome>{expect(validate(certs[t]), "certificate for " + pairs[t].to_string() + " is invalid")};
            });

  const auto per_pair = static_cast<std::uint64_t>(samples_or(cfg, 10000));
  std::vector<std::atomic<std::uint64_t>> inside(pairs.size());
  run.phase("random-points", {{"random-points", "the alcove of G_theta lies in the alcove of G"}}, per_pair * pairs.size(),
            [&](std::uint64_t t, std::mt19937_64& rng) {
              const std::size_t k = t % pairs.size();
              const GroupType h = pairs[k].g_theta();
              const GroupType g = pairs[k].g();
              const int n = h.size / 2;
              ApartmentPoint x;
              if ((t / pairs.size()) % 2 == 0) {
                std::vector<Rational> half;
                for (int i = 0; i < n; ++i) half.push_back(random_rational(rng, -1, 1));
                x = fixed_point(half, h.size);
              } else {
                // Convex combination of the alcove vertices.
                std::uniform_int_distribution<int> w(0, 9);
                x.assign(static_cast<std::size_t>(h.size), Rational(0));
                Rational total = 0;
                for (const auto& v : verts[k]) {
                  const Rational c = w(rng);
                  total += c;
                  for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * v[i];
                }
                if (total == Rational(0)) total = 1;
                for (auto& v : x) v /= total;
              }
              if (!alcove_contains(x, h)) return std::vector<Outcome>{std::nullopt};
              ++inside[k];
              std::string where;
              for (const auto& c : x) where += (where.empty() ? "" : ",") + to_string(c);
              return std::vector<Outcome>{
                  expect(alcove_contains(x, g), pairs[k].to_string() + " point (" + where + ") leaves the alcove of G")};
            });
  json counts = json::object();
  for (std::size_t k = 0; k < pairs.size(); ++k) counts[pairs[k].to_string()] = inside[k].load();
  rep.attachments["points_inside"] = counts;
}

void theta_compat_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2, 3, 4});
  annotate_hypothesis(rep, sizes);
  const int p = f.p();
  const bool unram = f.kind() == ExtensionKind::unramified;
  const Rational levels[] = {Rational(1, 2), Rational(1), Rational(3, 2)};
  Runner run(rep);
  run.phase("points",
            {{"graded-dimension", "dim of the dtheta-fixed graded piece matches the position-by-position count"},
             {"fixed-basis-span", "fixed parts of a basis span a space of that dimension"},
             {"theta-stable", "dtheta preserves g_{x,r} and induces theta* on the graded piece"}},
            static_cast<std::uint64_t>(samples_or(cfg, 20)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const auto x = random_fixed_point(rng, n);
              bool dim_ok = true, span_ok = true, stable_ok = true;
              std::string where;
              for (const auto& r : levels) {
                const GradedQuotient q(f, x, r);
                const auto split = graded_theta_split(f, x, r);
                const bool d = q.fixed_fp_dimension() == split.fixed && q.anti_fp_dimension() == split.anti &&
                               split.fixed + split.anti == q.fp_dimension();
                std::vector<std::vector<int>> rows;
                for (const auto& b : q.fp_basis()) {
                  std::vector<int> v;
                  for (int code : q.class_of(decompose_dtheta(q.lift(b)).fixed_part)) {
                    v.push_back(code % p);
                    if (unram) v.push_back(code / p);
                  }
                  rows.push_back(std::move(v));
                }
                const bool s = rows.empty() ? split.fixed == 0 : rank_mod_p(rows, p) == split.fixed;
                const Matrix m = random_in_filtration(f, x, r, rng);
                const bool st = mp_membership(dtheta(m), x, r) && q.class_of(dtheta(m)) == q.theta_star(q.class_of(m));
                if (!(d && s && st)) where = "r = " + to_string(r);
                dim_ok = dim_ok && d;
                span_ok = span_ok && s;
                stable_ok = stable_ok && st;
              }
              return std::vector<Outcome>{expect(dim_ok, "dimension mismatch at " + where),
                                          expect(span_ok, "span mismatch at " + where),
                                          expect(stable_ok, "dtheta mismatch at " + where)};
            });
}

void descent_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2, 3});
  annotate_hypothesis(rep, sizes);
  const Rational target = 4;
  Runner run(rep);
  run.phase("descent",
            {{"converges", "twisted descent reaches the target depth"},
             {"monotone", "anti depth never decreases along the descent"},
             {"reconstruction", "the accumulated conjugator carries g to fixed part plus deep anti part"}},
            static_cast<std::uint64_t>(samples_or(cfg, 100)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const Rational r = (t / sizes.size()) % 2 == 0 ? Rational(1, 2) : Rational(1);
              const auto x = t % 3 == 0 ? gl_barycenter(n, f.e()) : random_fixed_point(rng, n);
              const Matrix g = cayley(random_in_filtration(f, x, r, rng));
              const auto trace = twisted_descent(g, x, r, target);
              bool monotone = trace.residual_anti_depth >= target || !trace.converged;
              for (std::size_t k = 1; k < trace.steps.size(); ++k)
                monotone = monotone && trace.steps[k].anti_depth >= trace.steps[k - 1].anti_depth;
              if (!trace.steps.empty()) monotone = monotone && trace.residual_anti_depth >= trace.steps.back().anti_depth;
              const auto rec = reconstruct(g, x, r, trace);
              const std::string tag = "N = " + std::to_string(n) + ", r = " + to_string(r) + ": ";
              return std::vector<Outcome>{
                  expect(trace.converged, tag + trace.falsification),
                  expect(monotone, tag + "depth trace is not monotone"),
                  expect(rec.ok() && agree(twisted_conjugate(trace.conjugator, g), trace.result),
                         tag + "reconstruction fails, anti depth " + to_string(rec.anti_depth))};
            });
}

// theta-fixed points for the coset and partition suites.
std::vector<ApartmentPoint> probe_points(int n, int e) {
  std::vector<ApartmentPoint> out{gl_barycenter(n, e), ApartmentPoint(static_cast<std::size_t>(n), Rational(0))};
  out.push_back(fixed_point(std::vector<Rational>(static_cast<std::size_t>(n / 2), Rational(1, 4)), n));
  return out;
}

std::string describe(const ApartmentPoint& x) {
  std::string s;
  for (const auto& c : x) s += (s.empty() ? "" : ",") + to_string(c);
  return "(" + s + ")";
}

void coset_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2});
  annotate_hypothesis(rep, sizes);
  const Rational r(1, 2);
  struct Probe {
    GradedQuotient q;
    std::vector<std::uint64_t> labels;
  };
  std::vector<Probe> probes;
  for (int n : sizes)
    for (const auto& x : probe_points(n, f.e())) {
      GradedQuotient q(f, x, r);
      try {
        auto labels = brute_force_orbits(q, cfg.cap);
        probes.push_back({std::move(q), std::move(labels)});
      } catch (const CapExceeded& e) {
        throw ConfigError(e.what());
      }
    }
  json sizes_json = json::array();
  for (const auto& pr : probes) sizes_json.push_back({{"x", describe(pr.q.point())}, {"classes", pr.labels.size()}});
  rep.attachments["quotients"] = sizes_json;

  Runner run(rep);
  run.phase("pairs",
            {{"equiv-vs-orbits", "[g] and [g'] are twisted conjugate iff they differ by Im(1 - theta*)"},
             {"fixed-distinct", "distinct theta*-fixed classes are never twisted conjugate"},
             {"translation", "c and c + (1 - theta*) w are twisted conjugate"}},
            static_cast<std::uint64_t>(samples_or(cfg, 2000)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const auto& pr = probes[t % probes.size()];
              const auto& q = pr.q;
              std::uniform_int_distribution<std::uint64_t> pick(0, pr.labels.size() - 1);
              const auto a = pick(rng), b = pick(rng), w = pick(rng);
              const auto ca = q.element_at(a), cb = q.element_at(b);
              const auto fa = q.canonical(ca), fb = q.canonical(cb);
              const auto moved = q.add(ca, q.one_minus_theta(q.element_at(w)));
              const std::string tag = describe(q.point()) + ": ";
              const bool fixed_ok =
                  fa == fb || (!coset_theta_equiv(q, fa, fb) && pr.labels[q.index_of(fa)] != pr.labels[q.index_of(fb)]);
              return std::vector<Outcome>{
                  expect(coset_theta_equiv(q, ca, cb) == (pr.labels[a] == pr.labels[b]), tag + "criterion disagrees with orbits"),
                  expect(fixed_ok, tag + "two fixed classes are equivalent"),
                  expect(coset_theta_equiv(q, ca, moved) && pr.labels[a] == pr.labels[q.index_of(moved)],
                         tag + "translate is not equivalent")};
            });
}

void partition_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2});
  annotate_hypothesis(rep, sizes);
  const Rational r(1, 2);
  std::vector<ApartmentPoint> points;
  for (int n : sizes)
    for (const auto& x : probe_points(n, f.e())) points.push_back(x);
  std::vector<PartitionReport> reports(points.size());
  Runner run(rep);
  run.phase("points",
            {{"orbits-match", "brute-force twisted orbits are the Im(1 - theta*) cosets"},
             {"transversal", "each orbit holds exactly one theta*-fixed class"},
             {"disjoint", "Im(1 - theta*) meets the fixed classes only in 0"},
             {"orbit-count", "orbits, fixed classes and orbit sizes multiply out to the quotient size"},
             {"shift-stable", "counts agree at r and r + 1"}},
            points.size(), [&](std::uint64_t t, std::mt19937_64&) {
              PartitionReport a, b;
              try {
                a = partition_check(f, points[t], r, cfg.cap);
                b = partition_check(f, points[t], r + 1, cfg.cap);
              } catch (const CapExceeded& e) {
                throw ConfigError(e.what());
              }
              reports[t] = a;
              const bool counts = a.orbits == a.fixed_classes && a.orbit_sizes.size() == 1 &&
                                  a.orbit_sizes[0] * a.fixed_classes == a.quotient_size;
              const bool stable = a.quotient_size == b.quotient_size && a.fixed_classes == b.fixed_classes &&
                                  a.orbits == b.orbits && a.orbit_sizes == b.orbit_sizes && b.ok();
              const std::string tag = describe(points[t]) + ": ";
              return std::vector<Outcome>{expect(a.matches_brute_force, tag + "orbits differ from cosets"),
                                          expect(a.transversal, tag + "fixed classes are not a transversal"),
                                          expect(a.disjoint, tag + "image meets the fixed classes"),
                                          expect(counts, tag + "counts do not multiply out"),
                                          expect(stable, tag + "counts change under r -> r + 1")};
            });
  json out = json::array();
  for (std::size_t k = 0; k < points.size(); ++k)
    out.push_back({{"x", describe(points[k])},
                   {"r", to_string(r)},
                   {"classes", reports[k].quotient_size},
                   {"fixed_classes", reports[k].fixed_classes},
                   {"orbits", reports[k].orbits},
                   {"orbit_sizes", reports[k].orbit_sizes}});
  rep.attachments["partitions"] = out;
}

// Sort key of a unit: ord and digits padded to a common length.
std::vector<int> sort_key(const Scalar& s, int length) {
  std::vector<int> k{s.ord()};
  auto d = s.digits();
  d.resize(static_cast<std::size_t>(length), -1);
  k.insert(k.end(), d.begin(), d.end());
  return k;
}

bool sorted_oracle(const NormData& d, int length) {
  const std::size_t n = d.t.size();
  std::vector<std::vector<int>> w, v;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(sort_key(d.t[i] / d.s[n - 1 - i], length));
    v.push_back(sort_key(d.v[i], length));
  }
  std::sort(w.begin(), w.end());
  std::sort(v.begin(), v.end());
  return w == v;
}

void norm_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {1, 2, 3, 4});
  Runner run(rep);
  run.phase("instances",
            {{"multiset-vs-oracle", "{v_i} = {t_i / s_{N+1-i}} agrees with sorting both lists"},
             {"symmetry", "the criterion is invariant under w0 on (t, s) and permutations of v"},
             {"unipotence-propagation", "topologically unipotent data have topologically unipotent norms"},
             {"newton-witness", "Newton polygon of det(lambda - (g - 1)) gives the eigenvalue valuations"}},
            static_cast<std::uint64_t>(samples_or(cfg, 1000)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const auto un = static_cast<std::size_t>(n);
              NormData d;
              for (int i = 0; i < n; ++i) {
                d.t.push_back(f.random_unit(rng));
                d.s.push_back(f.random_unit(rng));
              }
              d.v = norm_eigenvalues(d);
              std::shuffle(d.v.begin(), d.v.end(), rng);
              if (t % 2 == 1) {
                std::uniform_int_distribution<std::size_t> where(0, un - 1);
                std::uniform_int_distribution<int> depth(0, f.digits() - 1);
                auto& v = d.v[where(rng)];
                v = v + f.uniformizer_power(depth(rng));
              }
              const bool verdict = norm_multiset_check(d);
              const bool oracle = sorted_oracle(d, f.digits());

              NormData rev{std::vector<Scalar>(d.t.rbegin(), d.t.rend()), std::vector<Scalar>(d.s.rbegin(), d.s.rend()), d.v};
              std::shuffle(rev.v.begin(), rev.v.end(), rng);
              const bool symmetric = norm_multiset_check(rev) == verdict;

              NormData tu;
              for (int i = 0; i < n; ++i) {
                tu.t.push_back(f.one() + f.random_integral(rng, 1));
                tu.s.push_back(f.one() + f.random_integral(rng, 1));
              }
              bool unipotent = true;
              for (const auto& w : norm_eigenvalues(tu)) unipotent = unipotent && (w - f.one()).ord() > 0;

              // g = A diag(1 + u_i w^{k_i}) A^-1 has g - 1 with eigenvalue valuations k_i / e.
              std::uniform_int_distribution<int> depth(0, 3);
              std::vector<Scalar> diag;
              std::vector<Rational> expected;
              bool all_deep = true;
              for (int i = 0; i < n; ++i) {
                const int k = depth(rng);
                diag.push_back(f.one() + f.random_unit(rng) * f.uniformizer_power(k));
                expected.push_back(Rational(k, f.e()));
                all_deep = all_deep && k > 0;
              }
              std::sort(expected.begin(), expected.end());
              const Matrix a = random_unimodular(f, n, rng);
              const Matrix g = a * Matrix::diagonal(diag) * a.inverse();
              const auto np = newton_polygon(charpoly(g - Matrix::identity(f, n)));
              if (!np.exact) throw PrecisionExhausted("characteristic polynomial lost its digits");
              const Verdict tu_verdict = topological_unipotence(g);
              const bool newton = np.root_valuations == expected && tu_verdict == (all_deep ? Verdict::yes : Verdict::no);

              return std::vector<Outcome>{expect(verdict == oracle, "criterion disagrees with the sort oracle"),
                                          expect(symmetric, "criterion is not symmetric"),
                                          expect(unipotent, "norm of unipotent data is not unipotent"),
                                          expect(newton, "Newton polygon disagrees with the witness")};
            });
}

void transfer_pair_suite(SuiteReport& rep) {
  const auto& cfg = rep.config;
  if (cfg.ext == ExtensionKind::trivial) throw ConfigError("transfer-pair needs --ext unram or ram");
  const LocalField f = make_field(cfg, cfg.ext);
  const auto sizes = sizes_for(cfg, {2});
  annotate_hypothesis(rep, sizes);
  const Rational r(1, 2);
  Runner run(rep);

  json descriptors = json::array();
  for (int n : sizes) {
    const GradedQuotient q(f, gl_barycenter(n, f.e()), r);
    DescentPairDescriptor d;
    std::vector<std::uint64_t> labels;
    try {
      d = descent_pair(q, q.zero(), cfg.cap);
      labels = brute_force_orbits(q, cfg.cap);
    } catch (const CapExceeded& e) {
      throw ConfigError(e.what());
    }
    descriptors.push_back(to_json(d));
    run.phase("descriptor-" + std::to_string(n),
              {{"identity-orbit", "the descriptor at h = 0 lists exactly the twisted orbit of the identity"},
               {"json-roundtrip", "descriptors survive a JSON round trip unchanged"}},
              1, [&](std::uint64_t, std::mt19937_64&) {
                std::vector<GradedQuotient::Element> orbit;
                const auto zero_label = labels[q.index_of(q.zero())];
                for (std::uint64_t i = 0; i < labels.size(); ++i)
                  if (labels[i] == zero_label) orbit.push_back(q.element_at(i));
                const json j = to_json(d);
                const auto back = descent_pair_from_json(json::parse(j.dump()));
                return std::vector<Outcome>{expect(orbit == d.g_classes, "descriptor differs from the brute-force orbit"),
                                            expect(back == d && to_json(back).dump() == j.dump(), "round trip changed it")};
              });
  }
  rep.attachments["descriptors"] = descriptors;

  run.phase("square-map", {{"square-map", "x -> x^2 is a bijection on topologically unipotent elements of U(N)"}},
            static_cast<std::uint64_t>(samples_or(cfg, 200)), [&](std::uint64_t t, std::mt19937_64& rng) {
              const int n = sizes[t % sizes.size()];
              const GroupType u = GroupType::unitary(n, f.kind());
              const Matrix s = form_matrix(u, f);
              const Matrix x0 = Matrix::random(f, n, rng, 1);
              const Matrix x = (x0 - s * x0.conj().transpose() * s.inverse()) * f.from_int(2).inverse();
              const Matrix h = cayley_prime(x, u);
              const Matrix root = unipotent_sqrt(h);
              const bool ok = agree(root * root, h) && in_group(root, u) && is_topologically_unipotent(root) &&
                              agree(root, cayley(x)) && agree(unipotent_sqrt(root * root), root);
              return std::vector<Outcome>{expect(ok, "square root is missing or not unique")};
            });
}

void hypothesis_suite(SuiteReport& rep) {
  if (rep.config.group) rep.annotations.push_back("all four cases are swept; the group option is ignored");
  // p must exceed bound_scale * rank + bound_shift.
  struct Row {
    int which;
    int bound_scale;
    int bound_shift;
  };
  const Row table[] = {{1, 2, 2}, {2, 2, 2}, {3, 2, 1}, {4, 1, 1}};
  std::vector<int> primes;
  for (int p = 2; p < 30; ++p)
    if (is_prime(p)) primes.push_back(p);
  const std::uint64_t per_case = 6 * primes.size();
  Runner run(rep);
  run.phase("table", {{"table", "hypothesis_check matches the bound table"}}, 4 * per_case,
            [&](std::uint64_t t, std::mt19937_64&) {
              const Row& row = table[t / per_case];
              const int rank = static_cast<int>((t % per_case) / primes.size()) + 1;
              const int p = primes[(t % per_case) % primes.size()];
              const auto pair = GroupPair::make(row.which, rank, row.which == 4 ? ExtensionKind::unramified : ExtensionKind::trivial);
              const bool expected = p != 2 && p > row.bound_scale * rank + row.bound_shift;
              return std::vector<Outcome>{expect(hypothesis_check(pair, p) == expected,
                                                 pair.to_string() + " at p = " + std::to_string(p))};
            });
}

const std::map<std::string, std::function<void(SuiteReport&)>>& registry() {
  static const std::map<std::string, std::function<void(SuiteReport&)>> r{
      {"cayley", cayley_suite},         {"filtration", filtration_suite}, {"alcove", alcove_suite},
      {"theta-compat", theta_compat_suite}, {"descent", descent_suite}, {"coset", coset_suite},
      {"partition", partition_suite},   {"norm", norm_suite},             {"transfer-pair", transfer_pair_suite},
      {"hypothesis", hypothesis_suite}};
  return r;
}

}  // namespace

std::string to_string(SuiteVerdict v) {
  switch (v) {
    case SuiteVerdict::pass: return "pass";
    case SuiteVerdict::counterexample: return "counterexample";
    default: return "precision-exhausted";
  }
}

SuiteVerdict SuiteReport::verdict() const {
  bool exhausted = false;
  for (const auto& c : checks) {
    if (c.failures > 0) return SuiteVerdict::counterexample;
    exhausted = exhausted || c.precision_exhausted > 0;
  }
  return exhausted ? SuiteVerdict::precision_exhausted : SuiteVerdict::pass;
}

int SuiteReport::exit_code() const {
  switch (verdict()) {
    case SuiteVerdict::pass: return 0;
    case SuiteVerdict::counterexample: return 1;
    default: return 2;
  }
}

const std::vector<std::string>& list_suites() {
  static const std::vector<std::string> names{"cayley",    "filtration", "alcove", "theta-compat",  "descent",
                                              "coset",     "partition",  "norm",   "transfer-pair", "hypothesis"};
  return names;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto it = registry().find(cfg.suite);
  if (it == registry().end()) throw ConfigError("unknown suite '" + cfg.suite + "'");
  if (cfg.samples < 0) throw ConfigError("samples must be positive");
  if (cfg.threads < 1) throw ConfigError("threads must be positive");
  if (cfg.p == 2 || !is_prime(cfg.p)) throw ConfigError("p must be an odd prime");
  SuiteReport rep;
  rep.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  it->second(rep);
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const SuiteReport& report, bool with_timing) {
  const auto& c = report.config;
  json config{{"suite", c.suite},
              {"p", c.p},
              {"ext", to_string(c.ext)},
              {"group", c.group ? json(*c.group) : json()},
              {"prec", to_string(c.precision)},
              {"samples", c.samples},
              {"seed", c.seed},
              {"cap", c.cap}};
  json checks = json::array();
  for (const auto& r : report.checks) {
    json ces = json::array();
    for (const auto& ce : r.counterexamples) ces.push_back({{"trial", ce.trial}, {"seed", ce.seed}, {"detail", ce.detail}});
    json rec{{"id", r.id},
             {"statement", r.statement},
             {"trials", r.trials},
             {"passes", r.passes},
             {"failures", r.failures},
             {"precision_exhausted", r.precision_exhausted},
             {"counterexamples", ces}};
    if (with_timing) rec["wall_ms"] = r.wall_ms;
    checks.push_back(std::move(rec));
  }
  json out{{"schema", 1},
           {"suite", c.suite},
           {"config", config},
           {"annotations", report.annotations},
           {"checks", checks},
           {"attachments", report.attachments},
           {"verdict", to_string(report.verdict())}};
  if (with_timing) out["wall_ms"] = report.wall_ms;
  return out;
}

std::string summary(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& a : report.annotations) os << "note: " << a << "\n";
  for (const auto& r : report.checks) {
    const char* tag = r.failures > 0 ? "FAIL" : r.precision_exhausted > 0 ? "PREC" : "PASS";
    os << tag << "  " << report.config.suite << "/" << r.id << "  " << r.passes << "/" << r.trials;
    if (r.precision_exhausted > 0) os << "  (" << r.precision_exhausted << " precision exhausted)";
    os << "\n";
    for (const auto& ce : r.counterexamples) os << "      trial " << ce.trial << ": " << ce.detail << "\n";
  }
  os << "verdict: " << to_string(report.verdict()) << "\n";
  return os.str();
}

}  // namespace padiclab
