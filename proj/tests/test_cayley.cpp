#include <random>

#include "doctest.h"
#include "padiclab/cayley.hpp"
#include "padiclab/errors.hpp"

using namespace padiclab;

namespace {

const ExtensionKind kKinds[] = {ExtensionKind::trivial, ExtensionKind::unramified, ExtensionKind::ramified};

Matrix random_unimodular(const LocalField& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix a = Matrix::random(f, n, rng);
    if (charpoly(a)[0].ord() == 0) return a;
  }
}

// Topologically nilpotent with unit entries: a conjugate of a strictly
// upper-triangular matrix plus a deep perturbation.
Matrix random_tn(const LocalField& f, int n, std::mt19937_64& rng) {
  Matrix u = Matrix::random(f, n, rng, f.e());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = f.random_integral(rng);
  Matrix a = random_unimodular(f, n, rng);
  return a * u * a.inverse();
}

// Projection onto {X : X S + S X^* = 0}.
Matrix project(const Matrix& x, const GroupType& h) {
  const Matrix s = form_matrix(h, x.field());
  const Matrix xs = h.family == Family::U ? x.conj().transpose() : x.transpose();
  return (x - s * xs * s.inverse()) * x.field().from_int(2).inverse();
}

}  // namespace

TEST_CASE("cayley examples") {
  auto f = LocalField::make(5, ExtensionKind::trivial, 10);
  CHECK(agree(cayley(Matrix(f, 3)), Matrix::identity(f, 3)));
  CHECK(agree(cayley_inv(Matrix::identity(f, 3)), Matrix(f, 3)));
  CHECK_THROWS_AS(cayley(Matrix::identity(f, 2)), DomainError);
  CHECK_THROWS_AS(cayley_inv(Matrix::scalar(f, 2, f.from_int(3))), DomainError);

  std::mt19937_64 rng(31);
  for (auto kind : kKinds) {
    auto g = LocalField::make(3, kind, 10);
    std::vector<Scalar> d;
    for (int i = 0; i < 3; ++i) d.push_back(g.random_integral(rng, 1));
    Matrix c = cayley(Matrix::diagonal(d));
    const Scalar half = g.from_int(2).inverse();
    for (int i = 0; i < 3; ++i) {
      const Scalar& a = d[static_cast<std::size_t>(i)];
      CHECK(agree(c(i, i), (g.one() + a * half) * (g.one() - a * half).inverse()));
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(c(i, j).is_zero());
    }
  }
}

TEST_CASE("cayley roundtrip, series, and unipotent output") {
  std::mt19937_64 rng(32);
  for (auto kind : kKinds)
    for (int p : {3, 5}) {
      auto f = LocalField::make(p, kind, 12);
      for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 15; ++t) {
          Matrix x = t % 2 == 0 ? Matrix::random(f, n, rng, 1) : random_tn(f, n, rng);
          Matrix g = cayley(x);
          CHECK(is_topologically_unipotent(g));
          CHECK(agree(cayley_inv(g), x));
          CHECK(agree(cayley(cayley_inv(g)), g));
          CHECK(agree(cayley_series(x), g));
        }
    }
}

TEST_CASE("inverse image of a deep perturbation stays close") {
  std::mt19937_64 rng(33);
  for (auto kind : kKinds) {
    auto f = LocalField::make(5, kind, 12);
    for (int n = 2; n <= 3; ++n)
      for (int t = 0; t < 20; ++t) {
        Matrix x1 = Matrix::random(f, n, rng, 1);
        const int depth = 2 + t % 4;
        Matrix z = Matrix::random(f, n, rng, depth);
        Matrix diff = cayley_inv(cayley(x1) + z) - x1;
        CHECK(diff.min_ord() >= z.min_ord());
      }
  }
}

TEST_CASE("equivariance under conjugation and theta") {
  std::mt19937_64 rng(34);
  for (auto kind : kKinds) {
    auto f = LocalField::make(7, kind, 10);
    for (int n = 1; n <= 4; ++n) {
      Matrix x = Matrix::random(f, n, rng, 1);
      CHECK(verify_equivariance(Matrix::identity(f, n), x).ok());
      for (int t = 0; t < 10; ++t) {
        Matrix a = random_unimodular(f, n, rng);
        Matrix y = t % 2 == 0 ? Matrix::random(f, n, rng, 1) : random_tn(f, n, rng);
        auto rep = verify_equivariance(a, y);
        CHECK(rep.ok());
        CHECK(rep.mismatches.empty());
      }
      // Permutation conjugation of a diagonal matrix.
      Matrix perm(f, n);
      for (int i = 0; i < n; ++i) perm(i, (i + 1) % n) = f.one();
      std::vector<Scalar> d;
      for (int i = 0; i < n; ++i) d.push_back(f.random_integral(rng, 1));
      CHECK(verify_equivariance(perm, Matrix::diagonal(d)).ok());
    }
  }
}

TEST_CASE("compare reports the first differing digit") {
  auto f = LocalField::make(5, ExtensionKind::trivial, 10);
  Matrix a = Matrix::identity(f, 2);
  Matrix b = a;
  b(1, 0) = f.from_int(125);
  auto ms = compare("probe", a, b);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].row == 1);
  CHECK(ms[0].col == 0);
  CHECK(ms[0].digit == 3);
  CHECK(ms[0].check == "probe");
}

TEST_CASE("classical Lie algebras and cayley_prime") {
  std::mt19937_64 rng(35);
  auto ft = LocalField::make(5, ExtensionKind::trivial, 10);
  const std::vector<GroupType> split{GroupType::sp(2), GroupType::sp(4), GroupType::so(3), GroupType::so(5),
                                     GroupType::so(2), GroupType::so(4)};
  for (const auto& h : split) {
    CHECK(agree(cayley_prime(Matrix(ft, h.size), h), Matrix::identity(ft, h.size)));
    for (int t = 0; t < 10; ++t) {
      Matrix x = project(Matrix::random(ft, h.size, rng, 1), h);
      REQUIRE(in_lie_algebra(x, h));
      Matrix cp = cayley_prime(x, h);
      CHECK(in_group(cp, h));
      CHECK(is_topologically_unipotent(cp));
      const bool halve = h.family == Family::Sp || h.size % 2 == 1;
      Matrix c = cayley(halve ? x * ft.from_int(2).inverse() : x);
      CHECK(agree(cp, c * c));
    }
  }
  // Sp and odd SO are the dtheta-fixed algebras of GL.
  for (int n : {2, 3, 4}) {
    Matrix x = decompose_dtheta(Matrix::random(ft, n, rng, 1)).fixed_part;
    GroupType h = n % 2 == 0 ? GroupType::sp(n) : GroupType::so(n);
    CHECK(in_lie_algebra(x, h));
  }
  for (auto kind : {ExtensionKind::unramified, ExtensionKind::ramified}) {
    auto f = LocalField::make(5, kind, 10);
    for (int n = 1; n <= 4; ++n) {
      GroupType h = GroupType::unitary(n, kind);
      for (int t = 0; t < 10; ++t) {
        Matrix x = decompose_dtheta(Matrix::random(f, n, rng, 1)).fixed_part;
        REQUIRE(in_lie_algebra(x, h));
        Matrix cp = cayley_prime(x, h);
        Matrix c = cayley(x);
        CHECK(agree(cp, c * c));
        CHECK(in_group(cp, h));
        CHECK(agree(theta(cp), cp));
      }
      Matrix bad = Matrix::random(f, n, rng, 1);
      bad(0, 0) = f.uniformizer_f();
      if (!in_lie_algebra(bad, h)) CHECK_THROWS_AS(cayley_prime(bad, h), DomainError);
    }
  }
  CHECK_THROWS_AS(cayley_prime(Matrix::identity(ft, 2) * ft.from_int(5), GroupType::sp(2)), DomainError);
}

TEST_CASE("square roots of topologically unipotent elements") {
  std::mt19937_64 rng(36);
  for (auto kind : kKinds) {
    auto f = LocalField::make(3, kind, 12);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 10; ++t) {
        Matrix h = cayley(t % 2 == 0 ? Matrix::random(f, n, rng, 1) : random_tn(f, n, rng));
        Matrix root = unipotent_sqrt(h * h);
        CHECK(agree(root, h));
        Matrix r2 = unipotent_sqrt(h);
        CHECK(agree(r2 * r2, h));
        CHECK(is_topologically_unipotent(r2));
      }
  }
  auto f = LocalField::make(5, ExtensionKind::trivial, 8);
  CHECK_THROWS_AS(unipotent_sqrt(Matrix::scalar(f, 2, f.from_int(4))), DomainError);
}
