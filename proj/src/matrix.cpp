#include "padiclab/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "padiclab/errors.hpp"

namespace padiclab {

Matrix::Matrix(const LocalField& f, int n)
    : field_(f), n_(n), a_(static_cast<std::size_t>(n * n), f.zero()) {
  if (n < 1) throw DomainError("matrix size must be at least 1");
}

Matrix Matrix::identity(const LocalField& f, int n) { return scalar(f, n, f.one()); }

Matrix Matrix::scalar(const LocalField& f, int n, const Scalar& s) {
  Matrix m(f, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& entries) {
  if (entries.empty()) throw DomainError("empty diagonal");
  Matrix m(entries.front().field(), static_cast<int>(entries.size()));
  for (int i = 0; i < m.n_; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::from_ints(const LocalField& f, const std::vector<std::vector<std::int64_t>>& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(f, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw DomainError("ragged matrix literal");
    for (int j = 0; j < n; ++j) m(i, j) = f.from_int(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

Matrix Matrix::random(const LocalField& f, int n, std::mt19937_64& rng, int min_ord) {
  Matrix m(f, n);
  for (auto& s : m.a_) s = f.random_integral(rng, min_ord);
  return m;
}

void Matrix::check_compatible(const Matrix& o) const {
  if (!field_.same_field(o.field_)) throw OwnerMismatch("matrices over different fields");
  if (n_ != o.n_) throw DomainError("matrix size mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o);
  Matrix r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_compatible(o);
  Matrix r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& s : r.a_) s = -s;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Scalar acc = (*this)(i, 0) * o(0, j);
      for (int k = 1; k < n_; ++k) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.a_) x = x * s;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Matrix Matrix::conj() const {
  Matrix r = *this;
  for (auto& s : r.a_) s = s.conj();
  return r;
}

Matrix Matrix::inverse() const {
  Matrix a = *this;
  Matrix inv = identity(field_, n_);
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int row = col; row < n_; ++row) {
      if (a(row, col).is_zero()) continue;
      if (pivot < 0 || a(row, col).ord() < a(pivot, col).ord()) pivot = row;
    }
    if (pivot < 0) throw PrecisionExhausted("matrix is singular to precision");
    if (pivot != col)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Scalar pinv = a(col, col).inverse();
    for (int j = 0; j < n_; ++j) {
      a(col, j) = a(col, j) * pinv;
      inv(col, j) = inv(col, j) * pinv;
    }
    for (int row = 0; row < n_; ++row) {
      if (row == col) continue;
      const Scalar factor = a(row, col);
      if (factor.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        a(row, j) -= factor * a(col, j);
        inv(row, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

Scalar Matrix::trace() const {
  Scalar t = (*this)(0, 0);
  for (int i = 1; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::truncated(int digits) const {
  Matrix r = *this;
  for (auto& s : r.a_) s = s.truncated(digits);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

int Matrix::min_ord() const {
  int m = Scalar::kInfiniteOrd;
  for (const auto& s : a_) m = std::min(m, s.ord());
  return m;
}

int Matrix::precision() const {
  int m = Scalar::kInfiniteOrd;
  for (const auto& s : a_) m = std::min(m, s.precision());
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << "]";
  return os.str();
}

bool agree(const Matrix& a, const Matrix& b) { return (a - b).is_zero(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix j_matrix(const LocalField& f, int n) {
  Matrix j(f, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = f.from_int(i % 2 == 0 ? 1 : -1);
  return j;
}

namespace {

// J M^T J^-1, computed entrywise: (-1)^(i+j) M(n-1-j, n-1-i).
Matrix flip(const Matrix& m) {
  const int n = m.size();
  Matrix r(m.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar& s = m(n - 1 - j, n - 1 - i);
      r(i, j) = (i + j) % 2 == 0 ? s : -s;
    }
  return r;
}

}  // namespace

Matrix theta(const Matrix& g) { return flip(g.conj().inverse()); }

Matrix dtheta(const Matrix& x) { return -flip(x.conj()); }

ThetaDecomposition decompose_dtheta(const Matrix& x) {
  const Scalar half = x.field().from_int(2).inverse();
  const Matrix d = dtheta(x);
  return {(x + d) * half, (x - d) * half};
}

std::vector<Scalar> charpoly(const Matrix& m) {
  const int n = m.size();
  const LocalField& f = m.field();
  // Highest degree first while building.
  std::vector<Scalar> poly{f.one(), -m(0, 0)};
  for (int k = 1; k < n; ++k) {
    // Toeplitz column: 1, -a, -R S, -R A S, ..., -R A^(k-1) S.
    std::vector<Scalar> t{f.one(), -m(k, k)};
    std::vector<Scalar> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = m(i, k);
    for (int power = 0; power < k; ++power) {
      Scalar rv = f.zero();
      for (int i = 0; i < k; ++i) rv += m(k, i) * v[static_cast<std::size_t>(i)];
      t.push_back(-rv);
      std::vector<Scalar> next(static_cast<std::size_t>(k), f.zero());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) next[static_cast<std::size_t>(i)] += m(i, j) * v[static_cast<std::size_t>(j)];
      v = std::move(next);
    }
    std::vector<Scalar> out(static_cast<std::size_t>(k + 2), f.zero());
    for (int i = 0; i < k + 2; ++i)
      for (int j = 0; j <= std::min(i, k); ++j)
        out[static_cast<std::size_t>(i)] += t[static_cast<std::size_t>(i - j)] * poly[static_cast<std::size_t>(j)];
    poly = std::move(out);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

NewtonPolygon newton_polygon(const std::vector<Scalar>& coeffs) {
  if (coeffs.size() < 2) return {};
  if (coeffs.back().is_zero()) throw PrecisionExhausted("leading coefficient is zero to precision");
  const int e = coeffs.front().field().e();
  NewtonPolygon out;
  struct Pt {
    std::int64_t x, y;
  };
  std::vector<Pt> pts;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const Scalar& c = coeffs[j];
    if (c.is_zero()) out.exact = false;
    pts.push_back({static_cast<std::int64_t>(j), c.is_zero() ? c.precision() : c.ord()});
  }
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b when it lies on or above the segment a -> p.
      if ((b.y - a.y) * (p.x - a.x) >= (p.y - a.y) * (b.x - a.x)) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const auto dx = hull[s + 1].x - hull[s].x;
    const Rational root_val(hull[s].y - hull[s + 1].y, dx * e);
    for (std::int64_t k = 0; k < dx; ++k) out.root_valuations.push_back(root_val);
  }
  std::sort(out.root_valuations.begin(), out.root_valuations.end());
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undetermined: return "undetermined";
  }
  return "?";
}

namespace {

// All roots have positive valuation iff every non-leading coefficient
// of the monic characteristic polynomial does.
Verdict positive_root_valuations(const std::vector<Scalar>& cp) {
  bool unresolved = false;
  for (std::size_t j = 0; j + 1 < cp.size(); ++j) {
    const Scalar& c = cp[j];
    if (c.is_zero()) {
      if (c.precision() <= 0) unresolved = true;
    } else if (c.ord() <= 0) {
      return Verdict::no;
    }
  }
  return unresolved ? Verdict::undetermined : Verdict::yes;
}

}  // namespace

Verdict topological_nilpotence(const Matrix& x) { return positive_root_valuations(charpoly(x)); }

Verdict topological_unipotence(const Matrix& g) {
  return positive_root_valuations(charpoly(g - Matrix::identity(g.field(), g.size())));
}

bool is_topologically_nilpotent(const Matrix& x) {
  const Verdict v = topological_nilpotence(x);
  if (v == Verdict::undetermined) throw PrecisionExhausted("nilpotence undecidable at this precision");
  return v == Verdict::yes;
}

bool is_topologically_unipotent(const Matrix& g) {
  const Verdict v = topological_unipotence(g);
  if (v == Verdict::undetermined) throw PrecisionExhausted("unipotence undecidable at this precision");
  return v == Verdict::yes;
}

}  // namespace padiclab
