#include <random>

#include "doctest.h"
#include "padiclab/building.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/lattice.hpp"

using namespace padiclab;

namespace {

std::vector<int> f_grad(int big_n, int i, int coeff = 1) {
  std::vector<int> g(static_cast<std::size_t>(big_n), 0);
  g[static_cast<std::size_t>(i - 1)] += coeff;
  g[static_cast<std::size_t>(big_n - i)] -= coeff;
  return g;
}

std::vector<int> add(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Rational random_rational(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> den(1, 48);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  return Rational(num(rng), d);
}

std::vector<GroupPair> all_pairs(int max_rank) {
  std::vector<GroupPair> out;
  for (int which = 1; which <= 3; ++which)
    for (int n = 1; n <= max_rank; ++n) out.push_back(GroupPair::make(which, n));
  for (auto kind : {ExtensionKind::unramified, ExtensionKind::ramified})
    for (int n = 1; n <= 2 * max_rank + 1; ++n) out.push_back(GroupPair::make(4, n, kind));
  return out;
}

// Tropical (min, +) power of a threshold matrix: thresholds of the k-fold
// product span of a monomial lattice.
std::vector<std::vector<int>> min_plus_power(const std::vector<std::vector<int>>& t, int k) {
  auto out = t;
  const std::size_t n = t.size();
  for (int step = 1; step < k; ++step) {
    auto next = out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int best = out[i][0] + t[0][j];
        for (std::size_t l = 1; l < n; ++l) best = std::min(best, out[i][l] + t[l][j]);
        next[i][j] = best;
      }
    out = std::move(next);
  }
  return out;
}

ApartmentPoint random_point(std::mt19937_64& rng, int n) {
  ApartmentPoint x;
  for (int i = 0; i < n; ++i) x.push_back(random_rational(rng, -1, 1));
  return x;
}

}  // namespace

TEST_CASE("root tables") {
  auto gl3 = simple_affine_roots(GroupType::gl(3));
  REQUIRE(gl3.size() == 3);
  CHECK(gl3[0].to_string() == "e1-e2");
  CHECK(gl3[1].to_string() == "e2-e3");
  CHECK(gl3[2].to_string() == "-e1+e3+1");

  auto sp4 = simple_affine_roots(GroupType::sp(4));
  REQUIRE(sp4.size() == 3);
  CHECK(sp4[0] == AffineRoot{add(f_grad(4, 1), f_grad(4, 2, -1)), 0});
  CHECK(sp4[1] == AffineRoot{f_grad(4, 2, 2), 0});
  CHECK(sp4[2] == AffineRoot{f_grad(4, 1, -2), 1});

  auto u3 = simple_affine_roots(GroupType::unitary(3, ExtensionKind::ramified));
  REQUIRE(u3.size() == 2);
  CHECK(u3[0] == AffineRoot{f_grad(3, 1), Rational(1, 4)});
  CHECK(u3[1] == AffineRoot{f_grad(3, 1, -2), 0});

  auto so5 = simple_affine_roots(GroupType::so(5));
  REQUIRE(so5.size() == 3);
  CHECK(so5[2] == AffineRoot{add(f_grad(5, 1, -1), f_grad(5, 2, -1)), 1});

  auto gl2r = simple_affine_roots(GroupType::gl(2, ExtensionKind::ramified));
  CHECK(gl2r[1].to_string() == "-e1+e2+1/2");
  auto u4r = simple_affine_roots(GroupType::unitary(4, ExtensionKind::ramified));
  CHECK(u4r.back() == AffineRoot{add(f_grad(4, 1, -1), f_grad(4, 2, -1)), Rational(1, 2)});
  auto u5 = simple_affine_roots(GroupType::unitary(5, ExtensionKind::unramified));
  CHECK(std::find(u5.begin(), u5.end(), AffineRoot{f_grad(5, 2), 0}) != u5.end());

  CHECK(simple_affine_roots(GroupType::gl(1)).empty());
  CHECK(simple_affine_roots(GroupType::unitary(1, ExtensionKind::ramified)).empty());
  CHECK_THROWS_AS(simple_affine_roots(GroupType::so(4)), DomainError);

  // A simple system has rank+1 members for every tabulated group.
  for (int n = 1; n <= 5; ++n) {
    CHECK(simple_affine_roots(GroupType::sp(2 * n)).size() == static_cast<std::size_t>(n + 1));
    CHECK(simple_affine_roots(GroupType::so(2 * n + 1)).size() == static_cast<std::size_t>(n + 1));
    CHECK(simple_affine_roots(GroupType::gl(n + 1)).size() == static_cast<std::size_t>(n + 1));
  }
}

TEST_CASE("alcove membership") {
  CHECK(alcove_contains({Rational(1, 4), Rational(0)}, GroupType::gl(2)));
  CHECK_FALSE(alcove_contains({Rational(0), Rational(0)}, GroupType::gl(2)));
  CHECK_FALSE(alcove_contains({Rational(1), Rational(0)}, GroupType::gl(2)));
  CHECK_THROWS_AS(alcove_contains({Rational(0)}, GroupType::gl(2)), DomainError);

  for (int n = 1; n <= 5; ++n)
    for (int e : {1, 2}) {
      const auto kind = e == 1 ? ExtensionKind::trivial : ExtensionKind::ramified;
      const GroupType g = GroupType::gl(n, kind);
      const auto bary = gl_barycenter(n, e);
      for (const auto& a : simple_affine_roots(g)) CHECK(a(bary) == Rational(1, e * n));
      if (n > 1) CHECK(alcove_contains(bary, g));
      CHECK(alcove_barycenter(g) == bary);
    }

  for (const auto& pair : all_pairs(4)) {
    const GroupType h = pair.g_theta();
    if (h.size == 1) continue;
    const auto b = alcove_barycenter(h);
    CHECK(is_theta_fixed(b));
    CHECK(alcove_contains(b, h));
    for (const auto& v : alcove_vertices(h)) {
      CHECK_FALSE(alcove_contains(v, h));
      int zeros = 0;
      for (const auto& a : apartment_roots(h)) {
        CHECK(a(v) >= 0);
        if (a(v) == Rational(0)) ++zeros;
      }
      CHECK(zeros == static_cast<int>(apartment_roots(h).size()) - 1);
    }
  }
}

TEST_CASE("ramified odd unitary alcove is placed inside the GL alcove") {
  for (int n = 1; n <= 3; ++n) {
    const int big_n = 2 * n + 1;
    const GroupType u = GroupType::unitary(big_n, ExtensionKind::ramified);
    const GroupType g = GroupType::gl(big_n, ExtensionKind::ramified);
    // The tabulated alcove, read literally, has f_1 < 0 while the GL alcove
    // has f_1 > 0.
    ApartmentPoint lit(static_cast<std::size_t>(big_n), Rational(0));
    for (int i = 1; i <= n; ++i) {
      lit[static_cast<std::size_t>(i - 1)] = Rational(-i, 16 * (n + 1));
      lit[static_cast<std::size_t>(big_n - i)] = -lit[static_cast<std::size_t>(i - 1)];
    }
    for (const auto& a : simple_affine_roots(u)) CHECK(a(lit) > 0);
    CHECK_FALSE(alcove_contains(lit, g));

    auto shifted = apartment_roots(u);
    CHECK(std::find(shifted.begin(), shifted.end(), AffineRoot{f_grad(big_n, n), 0}) != shifted.end());
    CHECK(std::find(shifted.begin(), shifted.end(), AffineRoot{f_grad(big_n, 1, -2), Rational(1, 2)}) != shifted.end());
    CHECK(alcove_contains(alcove_barycenter(u), g));
  }
  // e_N - e_1 + 1/2 = -2 f_1 + (f_1 + 1/4) + 1/4 as functionals.
  for (int n = 1; n <= 3; ++n) {
    const int big_n = 2 * n + 1;
    std::vector<int> lhs(static_cast<std::size_t>(big_n), 0);
    lhs.front() = -1;
    lhs.back() = 1;
    CHECK(lhs == add(f_grad(big_n, 1, -2), f_grad(big_n, 1)));
    CHECK(Rational(1, 2) == Rational(1, 4) + Rational(1, 4));
  }
}

TEST_CASE("theta-fixed coordinates") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 7; ++n) {
    std::vector<Rational> t;
    for (int i = 0; i < n / 2; ++i) t.push_back(random_rational(rng, -2, 2));
    const auto x = fixed_point(t, n);
    CHECK(is_theta_fixed(x));
    CHECK(half_coordinates(x) == t);
    auto shifted = x;
    for (auto& v : shifted) v += Rational(3, 7);
    CHECK(is_theta_fixed(shifted));
    CHECK(half_coordinates(shifted) == t);
  }
  CHECK_FALSE(is_theta_fixed({Rational(1), Rational(0), Rational(0)}));
  CHECK_THROWS_AS(half_coordinates({Rational(1), Rational(0), Rational(0)}), DomainError);
}

TEST_CASE("inclusion certificates") {
  for (const auto& pair : all_pairs(5)) {
    auto cert = inclusion_certificate(pair);
    CHECK(validate(cert));
    CHECK(cert.entries.size() == simple_affine_roots(pair.g()).size());
  }
  // Tampering is detected.
  auto cert = inclusion_certificate(GroupPair::make(1, 2));
  cert.entries[0].slack += 1;
  CHECK_FALSE(validate(cert));
  cert = inclusion_certificate(GroupPair::make(1, 2));
  cert.entries[0].coefficients[0] = -cert.entries[0].coefficients[0] - 1;
  CHECK_FALSE(validate(cert));

  // Case (1): e_{2n+1} - e_1 + 1 = (-f_1 - f_2 + 1) + f_2, with f_2 expanded
  // along f_2 - f_3, ..., f_n.
  for (int n = 2; n <= 4; ++n) {
    auto c = inclusion_certificate(GroupPair::make(1, n));
    const auto& e = c.entries.back();
    REQUIRE(e.target.to_string() == "-e1+e" + std::to_string(2 * n + 1) + "+1");
    CHECK(e.slack == Rational(0));
    for (std::size_t k = 0; k < c.theta_roots.size(); ++k) {
      const auto& b = c.theta_roots[k];
      const bool is_f1f2 = b.gradient[0] == 1 && b.gradient[1] == -1;
      CHECK(e.coefficients[k] == (is_f1f2 ? Rational(0) : Rational(1)));
    }
  }
  // Case (2): e_n - e_{n+1} = (2 f_n) / 2.
  for (int n = 1; n <= 4; ++n) {
    auto c = inclusion_certificate(GroupPair::make(2, n));
    for (const auto& e : c.entries) {
      if (e.target.to_string() != "e" + std::to_string(n) + "-e" + std::to_string(n + 1)) continue;
      for (std::size_t k = 0; k < c.theta_roots.size(); ++k)
        CHECK(e.coefficients[k] == (c.theta_roots[k] == AffineRoot{f_grad(2 * n, n, 2), 0} ? Rational(1, 2) : Rational(0)));
      CHECK(e.slack == Rational(0));
    }
  }
}

TEST_CASE("fixed-group alcove lies in the GL alcove on random points") {
  std::mt19937_64 rng(42);
  for (const auto& pair : all_pairs(4)) {
    const GroupType h = pair.g_theta();
    const GroupType g = pair.g();
    const int n = h.size / 2;
    if (n == 0) continue;
    const auto verts = alcove_vertices(h);
    int inside = 0;
    for (int t = 0; t < 400; ++t) {
      ApartmentPoint x;
      if (t % 2 == 0) {
        std::vector<Rational> half;
        for (int i = 0; i < n; ++i) half.push_back(random_rational(rng, -1, 1));
        x = fixed_point(half, h.size);
      } else {
        std::uniform_int_distribution<int> w(0, 9);
        x.assign(static_cast<std::size_t>(h.size), Rational(0));
        Rational total = 0;
        for (const auto& v : verts) {
          const Rational c = w(rng);
          total += c;
          for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * v[i];
        }
        if (total == Rational(0)) continue;
        for (auto& v : x) v /= total;
      }
      if (alcove_contains(x, h)) {
        ++inside;
        CHECK(alcove_contains(x, g));
      }
    }
    CHECK(inside > 0);
  }
}

TEST_CASE("Iwahori lattice and its shifts") {
  std::mt19937_64 rng(43);
  for (auto kind : {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified}) {
    auto f = LocalField::make(3, kind, 10);
    const int e = f.e();
    for (int n = 1; n <= 4; ++n) {
      const auto bary = gl_barycenter(n, e);
      const auto t = mp_thresholds(bary, Rational(0), e);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == (i > j ? 1 : 0));
      for (int s = 0; s < 30; ++s) {
        Matrix m = Matrix::random(f, n, rng);
        bool pattern = true;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < i; ++j) pattern = pattern && m(i, j).ord() >= 1;
        CHECK(mp_membership(m, bary, 0) == pattern);
      }
      const Matrix phi = phi_matrix(f, n);
      Matrix phi_power = Matrix::identity(f, n);
      for (int k = 0; k < e * n; ++k) phi_power = phi_power * phi;
      CHECK(agree(phi_power, Matrix::scalar(f, n, f.uniformizer_power(e))));
      for (int s = 1; s <= 3; ++s) {
        const Lattice prev = mp_lattice(f, bary, s - 1);
        CHECK(prev.left_multiplied(phi) == mp_lattice(f, bary, s - 1, true));
        CHECK(prev.left_multiplied(phi_power) == mp_lattice(f, bary, s));
      }
      // Multiplying by an Iwahori element does not move the lattice.
      Matrix iw = Matrix::random(f, n, rng);
      for (int i = 0; i < n; ++i) {
        iw(i, i) = f.random_unit(rng);
        for (int j = 0; j < i; ++j) iw(i, j) = f.random_integral(rng, 1);
      }
      CHECK(mp_lattice(f, bary, 0).left_multiplied(iw) == mp_lattice(f, bary, 0));
    }
  }
}

TEST_CASE("filtration laws") {
  std::mt19937_64 rng(44);
  for (auto kind : {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified}) {
    auto f = LocalField::make(5, kind, 12);
    for (int n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_point(rng, n);
        const Rational r = random_rational(rng, 0, 2);
        const Matrix m = Matrix::random(f, n, rng, 2);
        CHECK(mp_membership(m * f.uniformizer_f(), x, r + 1) == mp_membership(m, x, r));
        CHECK(mp_membership(Matrix(f, n), x, r));
        const Rational d = mp_depth(m, x);
        CHECK(mp_membership(m, x, d));
        CHECK_FALSE(mp_membership_strict(m, x, d));
        const Rational s = r + random_rational(rng, 0, 1);
        if (mp_membership(m, x, s)) CHECK(mp_membership(m, x, r));
        CHECK(mp_lattice(f, x, r).contains(mp_lattice(f, x, s)));
        CHECK(mp_lattice(f, x, r).contains(mp_lattice(f, x, r, true)));
        CHECK(mp_lattice(f, x, r).contains(m) == mp_membership(m, x, r));
      }
  }
}

TEST_CASE("product lattices match the tropical power") {
  std::mt19937_64 rng(45);
  for (auto kind : {ExtensionKind::trivial, ExtensionKind::ramified}) {
    auto f = LocalField::make(3, kind, 12);
    for (int n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 4; ++trial) {
        const auto x = random_point(rng, n);
        const Rational r = random_rational(rng, 0, 1);
        FiltrationPowers pw(f, x, r);
        const auto t = mp_thresholds(x, r, f.e());
        for (int k = 1; k <= 3; ++k) CHECK(pw.power(k) == Lattice::monomial(f, min_plus_power(t, k)));
        CHECK(pw.power(1).contains(pw.power(2)));
        for (int s = 0; s < 10; ++s) {
          Matrix a = Matrix::random(f, n, rng);
          Matrix b = Matrix::random(f, n, rng);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              const int need = std::max(0, t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
              a(i, j) = f.random_integral(rng, need);
              b(i, j) = f.random_integral(rng, need);
            }
          if (!mp_membership(a, x, r) || !mp_membership(b, x, r)) continue;
          CHECK(mp_membership(a * b, x, r));
          CHECK(pw.power(2).contains(a * b));
        }
      }
  }
}

TEST_CASE("theta stabilizes filtrations at fixed points") {
  std::mt19937_64 rng(46);
  for (auto kind : {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified}) {
    auto f = LocalField::make(5, kind, 12);
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> t;
        for (int i = 0; i < n / 2; ++i) t.push_back(random_rational(rng, -1, 1));
        const auto x = fixed_point(t, n);
        const Rational r = random_rational(rng, 0, 2);
        Matrix m(f, n);
        const auto th = mp_thresholds(x, r, f.e());
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            m(i, j) = f.random_integral(rng, th[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        REQUIRE(mp_membership(m, x, r));
        CHECK(mp_membership(dtheta(m), x, r));
        const auto parts = decompose_dtheta(m);
        CHECK(mp_theta_membership(parts.fixed_part, x, r));
        if (!parts.anti_part.is_zero()) CHECK_FALSE(mp_theta_membership(parts.anti_part, x, r));
      }
  }
}

TEST_CASE("unresolvable membership") {
  auto f = LocalField::make(3, ExtensionKind::trivial, 10);
  Matrix m = Matrix::identity(f, 2);
  m(1, 0) = f.zero().truncated(0);
  CHECK_THROWS_AS(mp_membership(m, gl_barycenter(2, 1), 0), PrecisionExhausted);
  CHECK_THROWS_AS(mp_lattice(f, gl_barycenter(2, 1), 0).contains(m), PrecisionExhausted);
}
