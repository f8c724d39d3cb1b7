#include "padiclab/lattice.hpp"

#include <algorithm>
#include <utility>

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> v;
  v.reserve(static_cast<std::size_t>(m.size() * m.size()));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) v.push_back(m(i, j));
  return v;
}

Matrix unflatten(const LocalField& f, int n, const std::vector<Scalar>& v) {
  Matrix m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i * n + j)];
  return m;
}

bool all_zero(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

void check_point(const Matrix& m, const ApartmentPoint& x) {
  if (static_cast<int>(x.size()) != m.size()) throw DomainError("point size does not match the matrix");
}

}  // namespace

Lattice Lattice::span(const LocalField& f, int n, const std::vector<Matrix>& generators) {
  Lattice l;
  l.field_ = f;
  l.n_ = n;
  std::vector<std::vector<Scalar>> pending;
  for (const auto& g : generators) {
    if (g.size() != n) throw DomainError("generator size mismatch");
    auto v = flatten(g);
    if (!all_zero(v)) pending.push_back(std::move(v));
  }
  const Scalar zero = f.zero();
  for (int c = 0; c < n * n && !pending.empty(); ++c) {
    const auto cc = static_cast<std::size_t>(c);
    std::size_t best = pending.size();
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (pending[k][cc].is_zero()) continue;
      if (best == pending.size() || pending[k][cc].ord() < pending[best][cc].ord()) best = k;
    }
    if (best == pending.size()) continue;
    std::vector<Scalar> piv = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    const Scalar lead_inv = piv[cc].inverse();
    std::vector<std::vector<Scalar>> next;
    for (auto& r : pending) {
      if (!r[cc].is_zero()) {
        const Scalar factor = r[cc] * lead_inv;
        for (std::size_t k = cc + 1; k < r.size(); ++k) r[k] -= factor * piv[k];
      }
      r[cc] = zero;
      if (!all_zero(r)) next.push_back(std::move(r));
    }
    pending = std::move(next);
    l.rows_.push_back({c, std::move(piv)});
  }
  return l;
}

Lattice Lattice::monomial(const LocalField& f, const std::vector<std::vector<int>>& thresholds) {
  Lattice l;
  l.field_ = f;
  l.n_ = static_cast<int>(thresholds.size());
  const auto nn = static_cast<std::size_t>(l.n_ * l.n_);
  for (int i = 0; i < l.n_; ++i)
    for (int j = 0; j < l.n_; ++j) {
      std::vector<Scalar> v(nn, f.zero());
      const int c = i * l.n_ + j;
      v[static_cast<std::size_t>(c)] = f.uniformizer_power(thresholds[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      l.rows_.push_back({c, std::move(v)});
    }
  return l;
}

std::vector<Matrix> Lattice::basis() const {
  std::vector<Matrix> out;
  for (const auto& r : rows_) out.push_back(unflatten(field_, n_, r.v));
  return out;
}

bool Lattice::contains(const Matrix& x) const {
  if (x.size() != n_) throw DomainError("lattice membership: size mismatch");
  if (!x.field().same_field(field_)) throw OwnerMismatch("lattice membership: different fields");
  auto v = flatten(x);
  std::size_t k = 0;
  for (int c = 0; c < n_ * n_; ++c) {
    const auto cc = static_cast<std::size_t>(c);
    if (k < rows_.size() && rows_[k].pivot == c) {
      const auto& row = rows_[k].v;
      ++k;
      const int need = row[cc].ord();
      if (v[cc].is_zero()) {
        if (v[cc].precision() < need)
          throw PrecisionExhausted("lattice membership: entry vanishes only below the required digit");
        continue;
      }
      if (v[cc].ord() < need) return false;
      const Scalar factor = v[cc] / row[cc];
      for (std::size_t t = cc + 1; t < v.size(); ++t) v[t] -= factor * row[t];
    } else if (!v[cc].is_zero()) {
      return false;
    }
  }
  return true;
}

bool Lattice::contains(const Lattice& o) const {
  for (const auto& b : o.basis())
    if (!contains(b)) return false;
  return true;
}

Lattice Lattice::product(const Lattice& o) const {
  const auto a = basis();
  const auto b = o.basis();
  std::vector<Matrix> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& u : a)
    for (const auto& w : b) gens.push_back(u * w);
  return span(field_, n_, gens);
}

Lattice Lattice::left_multiplied(const Matrix& a) const {
  std::vector<Matrix> gens;
  for (const auto& b : basis()) gens.push_back(a * b);
  return span(field_, n_, gens);
}

Lattice Lattice::power(int k) const {
  if (k < 1) throw DomainError("lattice power needs k >= 1");
  Lattice out = *this;
  for (int i = 1; i < k; ++i) out = out.product(*this);
  return out;
}

std::vector<std::vector<int>> mp_thresholds(const ApartmentPoint& x, const Rational& r, int e, bool strict) {
  const std::size_t n = x.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = (r - x[i] + x[j]) * e;
      t[i][j] = static_cast<int>(strict ? floor_of(v) + 1 : ceil_of(v));
    }
  return t;
}

Lattice mp_lattice(const LocalField& f, const ApartmentPoint& x, const Rational& r, bool strict) {
  return Lattice::monomial(f, mp_thresholds(x, r, f.e(), strict));
}

namespace {

bool membership(const Matrix& m, const ApartmentPoint& x, const Rational& r, bool strict) {
  check_point(m, x);
  const auto t = mp_thresholds(x, r, m.field().e(), strict);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      const Scalar& s = m(i, j);
      const int need = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (s.is_zero()) {
        if (s.precision() < need) throw PrecisionExhausted("mp_membership: entry known only below the threshold");
      } else if (s.ord() < need) {
        return false;
      }
    }
  return true;
}

}  // namespace

bool mp_membership(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r) {
  return membership(x_mat, x, r, false);
}

bool mp_membership_strict(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r) {
  return membership(x_mat, x, r, true);
}

bool mp_theta_membership(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r) {
  if (!is_theta_fixed(x)) throw DomainError("mp_theta_membership: point is not theta-fixed");
  return mp_membership(x_mat, x, r) && agree(dtheta(x_mat), x_mat);
}

bool in_mp_group(const Matrix& g, const ApartmentPoint& x, const Rational& r) {
  return mp_membership(g - Matrix::identity(g.field(), g.size()), x, r);
}

Rational mp_depth(const Matrix& x_mat, const ApartmentPoint& x) {
  check_point(x_mat, x);
  const int e = x_mat.field().e();
  bool first = true;
  Rational best;
  for (int i = 0; i < x_mat.size(); ++i)
    for (int j = 0; j < x_mat.size(); ++j) {
      const Scalar& s = x_mat(i, j);
      const int digit = s.is_zero() ? s.precision() : s.ord();
      const Rational d = Rational(digit, e) + x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      if (first || d < best) best = d;
      first = false;
    }
  return best;
}

Matrix phi_matrix(const LocalField& f, int n) {
  Matrix m(f, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = f.one();
  m(n - 1, 0) = f.uniformizer();
  return m;
}

FiltrationPowers::FiltrationPowers(const LocalField& f, ApartmentPoint x, Rational r)
    : field_(f), x_(std::move(x)), r_(r) {}

const Lattice& FiltrationPowers::power(int k) {
  if (k < 1) throw DomainError("filtration power needs k >= 1");
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  Lattice l = k == 1 ? mp_lattice(field_, x_, r_) : power(k - 1).product(power(1));
  return cache_.emplace(k, std::move(l)).first->second;
}

}  // namespace padiclab
