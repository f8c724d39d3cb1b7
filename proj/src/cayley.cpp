#include "padiclab/cayley.hpp"

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

Scalar half_of(const LocalField& f) { return f.from_int(2).inverse(); }

void require_nilpotent(const Matrix& x, const char* what) {
  switch (topological_nilpotence(x)) {
    case Verdict::yes: return;
    case Verdict::no: throw DomainError(std::string(what) + ": input is not topologically nilpotent");
    case Verdict::undetermined:
      throw PrecisionExhausted(std::string(what) + ": nilpotence undecidable at this precision");
  }
}

void require_unipotent(const Matrix& g, const char* what) {
  switch (topological_unipotence(g)) {
    case Verdict::yes: return;
    case Verdict::no: throw DomainError(std::string(what) + ": input is not topologically unipotent");
    case Verdict::undetermined:
      throw PrecisionExhausted(std::string(what) + ": unipotence undecidable at this precision");
  }
}

Matrix star(const Matrix& m, const GroupType& h) {
  return h.family == Family::U ? m.conj().transpose() : m.transpose();
}

}  // namespace

Matrix cayley(const Matrix& x) {
  require_nilpotent(x, "cayley");
  const Matrix one = Matrix::identity(x.field(), x.size());
  const Matrix y = x * half_of(x.field());
  return (one + y) * (one - y).inverse();
}

Matrix cayley_inv(const Matrix& g) {
  require_unipotent(g, "cayley_inv");
  const Matrix one = Matrix::identity(g.field(), g.size());
  return (g - one) * g.field().from_int(2) * (g + one).inverse();
}

Matrix cayley_series(const Matrix& x) {
  require_nilpotent(x, "cayley_series");
  const LocalField& f = x.field();
  const Matrix y = x * half_of(f);
  const Scalar two = f.from_int(2);
  Matrix sum = Matrix::identity(f, x.size());
  Matrix term = y;
  const int cap = 8 * x.size() * (f.digits() + 2);
  // Once N consecutive powers are invisible at the sum's precision, all
  // later ones are too (Cayley-Hamilton with positive-valuation coefficients).
  int negligible = 0;
  for (int k = 1; k <= cap; ++k) {
    if (term.is_zero() || term.min_ord() >= sum.precision()) {
      if (++negligible == x.size()) return sum;
    } else {
      negligible = 0;
      sum += term * two;
    }
    term = term * y;
  }
  throw PrecisionExhausted("cayley_series: terms did not vanish within the cap");
}

Matrix form_matrix(const GroupType& h, const LocalField& f) {
  switch (h.family) {
    case Family::GL: throw DomainError("GL has no defining form");
    case Family::SO:
      if (h.size % 2 == 0) {
        Matrix s(f, h.size);
        for (int i = 0; i < h.size; ++i) s(i, h.size - 1 - i) = f.one();
        return s;
      }
      return j_matrix(f, h.size);
    case Family::Sp:
    case Family::U: return j_matrix(f, h.size);
  }
  return j_matrix(f, h.size);
}

bool in_lie_algebra(const Matrix& x, const GroupType& h) {
  if (x.size() != h.size) throw DomainError("matrix size does not match the group");
  if (h.family == Family::GL) return true;
  const Matrix s = form_matrix(h, x.field());
  return (x * s + s * star(x, h)).is_zero();
}

bool in_group(const Matrix& g, const GroupType& h) {
  if (g.size() != h.size) throw DomainError("matrix size does not match the group");
  if (h.family == Family::GL) return !charpoly(g)[0].is_zero();
  const Matrix s = form_matrix(h, g.field());
  if (!agree(g * s * star(g, h), s)) return false;
  if (h.family == Family::SO) {
    const Scalar det0 = charpoly(g)[0];
    const Scalar det = g.size() % 2 == 0 ? det0 : -det0;
    return agree(det, g.field().one());
  }
  return true;
}

Matrix cayley_prime(const Matrix& x, const GroupType& h) {
  if (h.family == Family::GL) throw DomainError("cayley_prime is defined for classical groups");
  if (!in_lie_algebra(x, h)) throw DomainError("cayley_prime: input is outside the Lie algebra of " + h.to_string());
  const bool halve = h.family == Family::Sp || (h.family == Family::SO && h.size % 2 == 1);
  const Matrix c = cayley(halve ? x * half_of(x.field()) : x);
  return c * c;
}

std::vector<Mismatch> compare(const std::string& check, const Matrix& lhs, const Matrix& rhs) {
  std::vector<Mismatch> out;
  const Matrix d = lhs - rhs;
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j)
      if (!d(i, j).is_zero()) out.push_back({check, i, j, d(i, j).ord()});
  return out;
}

EquivarianceReport verify_equivariance(const Matrix& a, const Matrix& x) {
  EquivarianceReport rep;
  const Matrix cx = cayley(x);
  const Matrix ainv = a.inverse();
  auto conj = compare("conjugation", a * cx * ainv, cayley(a * x * ainv));
  auto th = compare("theta", theta(cx), cayley(dtheta(x)));
  rep.conjugation_ok = conj.empty();
  rep.theta_ok = th.empty();
  rep.mismatches = std::move(conj);
  rep.mismatches.insert(rep.mismatches.end(), th.begin(), th.end());
  return rep;
}

Matrix unipotent_sqrt(const Matrix& g) {
  require_unipotent(g, "unipotent_sqrt");
  const LocalField& f = g.field();
  const Scalar half = half_of(f);
  const Rational prec = f.precision();
  const auto cap = static_cast<int>(8 * (prec.numerator() + prec.denominator() - 1) / prec.denominator());
  Matrix y = Matrix::identity(f, g.size());
  for (int step = 0; step < cap; ++step) {
    Matrix next = (y + y.inverse() * g) * half;
    if (agree(next, y) && agree(next * next, g)) return next;
    y = std::move(next);
  }
  throw PrecisionExhausted("unipotent_sqrt: Newton iteration did not settle");
}

}  // namespace padiclab
