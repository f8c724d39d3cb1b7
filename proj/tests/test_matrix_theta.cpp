#include <random>

#include "doctest.h"
#include "padiclab/errors.hpp"
#include "padiclab/matrix.hpp"

using namespace padiclab;

namespace {

const ExtensionKind kKinds[] = {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified};

// Laplace expansion along the first row.
Scalar cofactor_det(const Matrix& m) {
  const int n = m.size();
  if (n == 1) return m(0, 0);
  Scalar acc = m.field().zero();
  for (int c = 0; c < n; ++c) {
    Matrix minor(m.field(), n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    Scalar term = m(0, c) * cofactor_det(minor);
    acc = c % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

Matrix random_unimodular(const LocalField& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix a = Matrix::random(f, n, rng);
    if (cofactor_det(a).ord() == 0) return a;
  }
}

// Rank over F_p of integer vectors (residues already reduced).
int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto r = static_cast<std::size_t>(rank);
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    int inv = 1;
    while (rows[r][c] * inv % p != 1) ++inv;
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] % p == 0) continue;
      const int k = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = ((rows[i][j] - k * rows[r][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("j_matrix examples") {
  auto f = LocalField::make(5, ExtensionKind::trivial, 8);
  CHECK(agree(j_matrix(f, 1), Matrix::from_ints(f, {{1}})));
  CHECK(agree(j_matrix(f, 2), Matrix::from_ints(f, {{0, 1}, {-1, 0}})));
  CHECK(agree(j_matrix(f, 3), Matrix::from_ints(f, {{0, 0, 1}, {0, -1, 0}, {1, 0, 0}})));
}

TEST_CASE("theta and dtheta agree with explicit products with J") {
  std::mt19937_64 rng(21);
  for (auto kind : kKinds) {
    auto f = LocalField::make(5, kind, 10);
    for (int n = 1; n <= 4; ++n) {
      const Matrix j = j_matrix(f, n);
      const Matrix jinv = j.inverse();
      for (int t = 0; t < 20; ++t) {
        Matrix g = random_unimodular(f, n, rng);
        CHECK(agree(theta(g), j * g.conj().transpose().inverse() * jinv));
        Matrix x = Matrix::random(f, n, rng);
        CHECK(agree(dtheta(x), -(j * x.conj().transpose() * jinv)));
      }
    }
  }
}

TEST_CASE("theta examples and automorphism laws") {
  std::mt19937_64 rng(22);
  for (auto kind : kKinds) {
    auto f = LocalField::make(3, kind, 10);
    for (int n = 1; n <= 4; ++n) {
      CHECK(agree(theta(Matrix::identity(f, n)), Matrix::identity(f, n)));
      std::vector<Scalar> t;
      for (int i = 0; i < n; ++i) t.push_back(f.random_unit(rng));
      Matrix expect(f, n);
      for (int i = 0; i < n; ++i) expect(i, i) = t[static_cast<std::size_t>(n - 1 - i)].conj().inverse();
      CHECK(agree(theta(Matrix::diagonal(t)), expect));
      for (int trial = 0; trial < 10; ++trial) {
        Matrix g = random_unimodular(f, n, rng);
        Matrix h = random_unimodular(f, n, rng);
        CHECK(agree(theta(g * h), theta(g) * theta(h)));
        CHECK(agree(theta(theta(g)), g));
      }
    }
  }
}

TEST_CASE("dtheta is a Lie algebra involution") {
  std::mt19937_64 rng(23);
  for (auto kind : kKinds) {
    auto f = LocalField::make(7, kind, 8);
    for (int n = 1; n <= 4; ++n) {
      CHECK(dtheta(Matrix(f, n)).is_zero());
      for (int trial = 0; trial < 20; ++trial) {
        Matrix x = Matrix::random(f, n, rng);
        Matrix y = Matrix::random(f, n, rng);
        CHECK(agree(dtheta(dtheta(x)), x));
        CHECK(agree(dtheta(commutator(x, y)), commutator(dtheta(x), dtheta(y))));
        CHECK(agree(dtheta(x + y), dtheta(x) + dtheta(y)));
      }
    }
  }
}

TEST_CASE("eigenspace decomposition") {
  std::mt19937_64 rng(24);
  for (auto kind : kKinds) {
    auto f = LocalField::make(5, kind, 8);
    for (int n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        Matrix x = Matrix::random(f, n, rng);
        auto d = decompose_dtheta(x);
        CHECK(agree(d.fixed_part + d.anti_part, x));
        CHECK(agree(dtheta(d.fixed_part), d.fixed_part));
        CHECK(agree(dtheta(d.anti_part), -d.anti_part));
        auto again = decompose_dtheta(d.fixed_part);
        CHECK(again.anti_part.is_zero());
        auto anti = decompose_dtheta(d.anti_part);
        CHECK(anti.fixed_part.is_zero());
      }
    }
  }
}

TEST_CASE("eigenspace dimensions match the classical Lie algebras") {
  // Fixed points of dtheta: so_N (N odd), sp_N (N even), u_N (unramified).
  for (auto kind : {ExtensionKind::trivial, ExtensionKind::unramified}) {
    const int p = 5;
    auto f = LocalField::make(p, kind, 6);
    const int deg = kind == ExtensionKind::trivial ? 1 : 2;
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::vector<int>> fixed_rows, anti_rows;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < deg; ++b) {
            Matrix e(f, n);
            e(i, j) = b == 0 ? f.one() : f.omega();
            auto d = decompose_dtheta(e);
            std::vector<int> fr, ar;
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const int cf = d.fixed_part(k, l).residue(0);
                const int ca = d.anti_part(k, l).residue(0);
                fr.push_back(cf % p);
                ar.push_back(ca % p);
                if (deg == 2) {
                  fr.push_back(cf / p);
                  ar.push_back(ca / p);
                }
              }
            fixed_rows.push_back(fr);
            anti_rows.push_back(ar);
          }
      const int fixed_dim = rank_mod_p(fixed_rows, p);
      const int anti_dim = rank_mod_p(anti_rows, p);
      CHECK(fixed_dim + anti_dim == deg * n * n);
      int expect;
      if (kind == ExtensionKind::unramified) expect = n * n;
      else expect = n % 2 == 1 ? n * (n - 1) / 2 : n * (n + 1) / 2;
      CHECK(fixed_dim == expect);
    }
  }
}

TEST_CASE("charpoly examples and cofactor oracle") {
  auto f = LocalField::make(5, ExtensionKind::unramified, 8);
  auto cp0 = charpoly(Matrix(f, 2));
  REQUIRE(cp0.size() == 3);
  CHECK(cp0[0].is_zero());
  CHECK(cp0[1].is_zero());
  CHECK(agree(cp0[2], f.one()));

  Scalar a = f.element(3, 1), b = f.element(7, 2);
  auto cp = charpoly(Matrix::diagonal({a, b}));
  CHECK(agree(cp[0], a * b));
  CHECK(agree(cp[1], -(a + b)));

  std::mt19937_64 rng(25);
  for (auto kind : kKinds) {
    auto g = LocalField::make(3, kind, 10);
    for (int n = 1; n <= 5; ++n)
      for (int t = 0; t < 10; ++t) {
        Matrix m = Matrix::random(g, n, rng);
        auto c = charpoly(m);
        REQUIRE(static_cast<int>(c.size()) == n + 1);
        CHECK(agree(c[static_cast<std::size_t>(n)], g.one()));
        CHECK(agree(c[static_cast<std::size_t>(n - 1)], -m.trace()));
        Scalar det = cofactor_det(m);
        CHECK(agree(c[0], n % 2 == 0 ? det : -det));
        // Cayley-Hamilton.
        Matrix acc(g, n), power = Matrix::identity(g, n);
        for (int k = 0; k <= n; ++k) {
          acc += power * c[static_cast<std::size_t>(k)];
          power = power * m;
        }
        CHECK(acc.is_zero());
      }
  }
}

TEST_CASE("inverse roundtrip and singular input") {
  std::mt19937_64 rng(26);
  for (auto kind : kKinds) {
    auto f = LocalField::make(3, kind, 12);
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t < 20; ++t) {
        Matrix m = Matrix::random(f, n, rng);
        if (cofactor_det(m).is_zero()) continue;
        Matrix inv = m.inverse();
        CHECK(agree(m * inv, Matrix::identity(f, n)));
        CHECK(agree(inv * m, Matrix::identity(f, n)));
      }
    CHECK_THROWS_AS(Matrix::from_ints(f, {{1, 2}, {2, 4}}).inverse(), PrecisionExhausted);
    CHECK_THROWS_AS(theta(Matrix(f, 2)), PrecisionExhausted);
  }
}

TEST_CASE("topological nilpotence and unipotence examples") {
  for (auto kind : kKinds) {
    auto f = LocalField::make(5, kind, 10);
    CHECK(is_topologically_nilpotent(Matrix::scalar(f, 3, f.uniformizer_f())));
    CHECK_FALSE(is_topologically_nilpotent(Matrix::identity(f, 3)));
    CHECK(is_topologically_nilpotent(Matrix::from_ints(f, {{0, 1, 7}, {0, 0, 3}, {0, 0, 0}})));
    CHECK(is_topologically_unipotent(Matrix::from_ints(f, {{1, 4}, {0, 1}})));
    CHECK_FALSE(is_topologically_unipotent(Matrix::from_ints(f, {{2, 0}, {0, 1}})));
    CHECK(is_topologically_nilpotent(Matrix::scalar(f, 2, f.uniformizer())));
    // Nilpotent but with unit entries.
    CHECK(is_topologically_nilpotent(Matrix::from_ints(f, {{1, 1}, {-1, -1}})));
  }
  auto f = LocalField::make(5, ExtensionKind::trivial, 4);
  Matrix unknown(f, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) unknown(i, j) = f.zero().truncated(0);
  CHECK(topological_nilpotence(unknown) == Verdict::undetermined);
  CHECK_THROWS_AS(is_topologically_nilpotent(unknown), PrecisionExhausted);
}

TEST_CASE("Newton polygon agrees with eigenvalues of conjugated diagonals") {
  std::mt19937_64 rng(27);
  for (auto kind : kKinds) {
    auto f = LocalField::make(5, kind, 12);
    std::uniform_int_distribution<int> ord_dist(0, 3);
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t < 25; ++t) {
        std::vector<Scalar> diag;
        std::vector<Rational> expect;
        bool all_positive = true;
        for (int i = 0; i < n; ++i) {
          const int k = ord_dist(rng);
          diag.push_back(f.uniformizer_power(k) * f.random_unit(rng));
          expect.push_back(Rational(k, f.e()));
          all_positive = all_positive && k > 0;
        }
        std::sort(expect.begin(), expect.end());
        Matrix a = random_unimodular(f, n, rng);
        Matrix m = a * Matrix::diagonal(diag) * a.inverse();
        auto np = newton_polygon(charpoly(m));
        CHECK(np.exact);
        CHECK(np.root_valuations == expect);
        CHECK(is_topologically_nilpotent(m) == all_positive);
        Matrix g = m + Matrix::identity(f, n);
        CHECK(is_topologically_unipotent(g) == all_positive);
      }
  }
}
