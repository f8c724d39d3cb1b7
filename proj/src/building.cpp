#include "padiclab/building.hpp"

#include <algorithm>
#include <optional>

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

using Vec = std::vector<Rational>;

// Affine functional in some coordinate system: sum coeff_k v_k + constant.
struct Affine {
  Vec coeff;
  Rational constant;
};

std::vector<int> f_gradient(int big_n, int i) {
  std::vector<int> g(static_cast<std::size_t>(big_n), 0);
  if (i > big_n / 2) return g;
  g[static_cast<std::size_t>(i - 1)] += 1;
  g[static_cast<std::size_t>(big_n - i)] -= 1;
  return g;
}

std::vector<int> e_gradient(int big_n, int i) {
  std::vector<int> g(static_cast<std::size_t>(big_n), 0);
  g[static_cast<std::size_t>(i - 1)] = 1;
  return g;
}

std::vector<int> combine(int a, const std::vector<int>& u, int b, const std::vector<int>& v) {
  std::vector<int> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = a * u[k] + b * v[k];
  return out;
}

bool root_less(const AffineRoot& a, const AffineRoot& b) {
  if (a.gradient != b.gradient) return a.gradient > b.gradient;
  return a.constant > b.constant;
}

// Solves A v = b exactly.  Returns a particular solution (free variables set
// to zero) and a basis of the kernel, or nullopt if inconsistent.
struct Solution {
  Vec particular;
  std::vector<Vec> kernel;
};

std::optional<Solution> solve(std::vector<Vec> a, Vec b, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv][c] == Rational(0)) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    std::swap(b[piv], b[row]);
    const Rational inv = Rational(1) / a[row][c];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == Rational(0)) continue;
      const Rational factor = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= factor * a[row][k];
      b[r] -= factor * b[row];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (b[r] != Rational(0)) return std::nullopt;
  Solution s;
  s.particular.assign(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) s.particular[pivots[r]] = b[r];
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vec k(cols, Rational(0));
    k[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -a[r][free];
    s.kernel.push_back(std::move(k));
  }
  return s;
}

Affine restricted(const AffineRoot& a, int n) {
  auto [c, k] = restrict_to_fixed(a, n);
  return {std::move(c), k};
}

// Vertices of the simplex {phi_k > 0} given d+1 affine functionals in d
// variables: vertex k is where every functional but the k-th vanishes.
std::vector<Vec> simplex_vertices(const std::vector<Affine>& roots, std::size_t d) {
  std::vector<Vec> out;
  for (std::size_t skip = 0; skip < roots.size(); ++skip) {
    std::vector<Vec> a;
    Vec b;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k == skip) continue;
      a.push_back(roots[k].coeff);
      b.push_back(-roots[k].constant);
    }
    auto s = solve(a, b, d);
    if (!s || !s->kernel.empty()) throw DomainError("alcove is not a simplex");
    out.push_back(s->particular);
  }
  return out;
}

}  // namespace

bool is_theta_fixed(const ApartmentPoint& x) {
  const std::size_t n = x.size();
  if (n == 0) return true;
  const Rational c = x[0] + x[n - 1];
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] + x[n - 1 - i] != c) return false;
  return true;
}

ApartmentPoint fixed_point(const std::vector<Rational>& t, int n) {
  if (static_cast<int>(t.size()) != n / 2) throw DomainError("fixed_point: expected N/2 half coordinates");
  ApartmentPoint x(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n / 2; ++i) {
    x[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
    x[static_cast<std::size_t>(n - 1 - i)] = -t[static_cast<std::size_t>(i)];
  }
  return x;
}

std::vector<Rational> half_coordinates(const ApartmentPoint& x) {
  if (!is_theta_fixed(x)) throw DomainError("half_coordinates: point is not theta-fixed");
  const std::size_t n = x.size();
  std::vector<Rational> t;
  if (n == 0) return t;
  const Rational shift = (x[0] + x[n - 1]) / 2;
  for (std::size_t i = 0; i < n / 2; ++i) t.push_back(x[i] - shift);
  return t;
}

ApartmentPoint gl_barycenter(int n, int e) {
  ApartmentPoint x;
  for (int i = 0; i < n; ++i) x.emplace_back(-i, e * n);
  return x;
}

Rational AffineRoot::operator()(const ApartmentPoint& x) const {
  if (x.size() != gradient.size()) throw DomainError("affine root and point have different sizes");
  Rational v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) v += gradient[i] * x[i];
  return v;
}

std::string AffineRoot::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    const int c = gradient[i];
    if (c == 0) continue;
    if (c < 0) s += "-";
    else if (!s.empty()) s += "+";
    if (c != 1 && c != -1) s += std::to_string(c < 0 ? -c : c);
    s += "e" + std::to_string(i + 1);
  }
  if (constant != Rational(0)) {
    if (constant > 0 && !s.empty()) s += "+";
    s += padiclab::to_string(constant);
  }
  return s.empty() ? "0" : s;
}

std::vector<AffineRoot> simple_affine_roots(const GroupType& g) {
  const int big_n = g.size;
  const int n = big_n / 2;
  std::vector<AffineRoot> roots;
  auto f = [&](int i) { return f_gradient(big_n, i); };
  auto f_chain = [&] {
    for (int i = 1; i < n; ++i) roots.push_back({combine(1, f(i), -1, f(i + 1)), Rational(0)});
  };
  const bool ram = g.kind == ExtensionKind::ramified;
  switch (g.family) {
    case Family::GL:
      if (big_n == 1) return roots;
      for (int i = 1; i < big_n; ++i) roots.push_back({combine(1, e_gradient(big_n, i), -1, e_gradient(big_n, i + 1)), 0});
      roots.push_back({combine(1, e_gradient(big_n, big_n), -1, e_gradient(big_n, 1)), Rational(1, ram ? 2 : 1)});
      break;
    case Family::SO:
      if (big_n % 2 == 0) throw DomainError("no root table for " + g.to_string());
      f_chain();
      roots.push_back({f(n), 0});
      roots.push_back({combine(-1, f(1), -1, f(2)), 1});
      break;
    case Family::Sp:
      f_chain();
      roots.push_back({combine(2, f(n), 0, f(n)), 0});
      roots.push_back({combine(-2, f(1), 0, f(1)), 1});
      break;
    case Family::U:
      if (n == 0) return roots;
      f_chain();
      if (!ram) {
        roots.push_back({combine(big_n % 2 == 0 ? 2 : 1, f(n), 0, f(n)), 0});
        roots.push_back({combine(-2, f(1), 0, f(1)), 1});
      } else if (big_n % 2 == 0) {
        roots.push_back({combine(2, f(n), 0, f(n)), 0});
        roots.push_back({combine(-1, f(1), -1, f(2)), Rational(1, 2)});
      } else {
        roots.push_back({f(n), Rational(1, 4)});
        roots.push_back({combine(-2, f(1), 0, f(1)), 0});
      }
      break;
  }
  std::sort(roots.begin(), roots.end(), root_less);
  return roots;
}

ApartmentPoint apartment_origin(const GroupType& g) {
  ApartmentPoint tau(static_cast<std::size_t>(g.size), Rational(0));
  if (g.family == Family::U && g.kind == ExtensionKind::ramified && g.size % 2 == 1) {
    for (int i = 0; i < g.size / 2; ++i) {
      tau[static_cast<std::size_t>(i)] = Rational(1, 8);
      tau[static_cast<std::size_t>(g.size - 1 - i)] = Rational(-1, 8);
    }
  }
  return tau;
}

std::vector<AffineRoot> apartment_roots(const GroupType& g) {
  auto roots = simple_affine_roots(g);
  const ApartmentPoint tau = apartment_origin(g);
  for (auto& a : roots) {
    Rational shift = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) shift += a.gradient[i] * tau[i];
    a.constant -= shift;
  }
  return roots;
}

bool alcove_contains(const ApartmentPoint& x, const GroupType& g) {
  if (static_cast<int>(x.size()) != g.size) throw DomainError("point size does not match " + g.to_string());
  for (const auto& a : apartment_roots(g))
    if (a(x) <= 0) return false;
  return true;
}

std::vector<ApartmentPoint> alcove_vertices(const GroupType& g) {
  const auto roots = apartment_roots(g);
  if (roots.empty()) return {ApartmentPoint(static_cast<std::size_t>(g.size), Rational(0))};
  std::vector<Affine> aff;
  if (g.family == Family::GL) {
    // Work modulo the all-ones direction by pinning x_1 = 0.
    for (const auto& a : roots) {
      Affine f{Vec(a.gradient.begin() + 1, a.gradient.end()), a.constant};
      aff.push_back(std::move(f));
    }
    std::vector<ApartmentPoint> out;
    for (auto& v : simplex_vertices(aff, static_cast<std::size_t>(g.size - 1))) {
      ApartmentPoint x{Rational(0)};
      x.insert(x.end(), v.begin(), v.end());
      out.push_back(std::move(x));
    }
    return out;
  }
  const int n = g.size / 2;
  for (const auto& a : roots) aff.push_back(restricted(a, n));
  std::vector<ApartmentPoint> out;
  for (auto& t : simplex_vertices(aff, static_cast<std::size_t>(n))) out.push_back(fixed_point(t, g.size));
  return out;
}

ApartmentPoint alcove_barycenter(const GroupType& g) {
  const auto verts = alcove_vertices(g);
  ApartmentPoint c(static_cast<std::size_t>(g.size), Rational(0));
  for (const auto& v : verts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& v : c) v /= static_cast<std::int64_t>(verts.size());
  return c;
}

std::pair<std::vector<Rational>, Rational> restrict_to_fixed(const AffineRoot& a, int n) {
  const int big_n = static_cast<int>(a.gradient.size());
  if (n != big_n / 2) throw DomainError("restrict_to_fixed: rank does not match the root");
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    c[static_cast<std::size_t>(j)] = a.gradient[static_cast<std::size_t>(j)] - a.gradient[static_cast<std::size_t>(big_n - 1 - j)];
  return {c, a.constant};
}

InclusionCertificate inclusion_certificate(const GroupPair& pair) {
  InclusionCertificate cert{pair, apartment_roots(pair.g()), apartment_roots(pair.g_theta()), {}};
  const int n = pair.g().size / 2;
  const std::size_t m = cert.theta_roots.size();
  std::vector<Affine> basis;
  for (const auto& b : cert.theta_roots) basis.push_back(restricted(b, n));
  // Columns are the fixed-group roots, rows the half coordinates.
  std::vector<Vec> a(static_cast<std::size_t>(n), Vec(m));
  for (std::size_t k = 0; k < m; ++k)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)][k] = basis[k].coeff[static_cast<std::size_t>(j)];

  for (const auto& alpha : cert.g_roots) {
    const Affine target = restricted(alpha, n);
    RootCertificate entry{alpha, Vec(m, Rational(0)), target.constant};
    if (m == 0) {
      if (std::any_of(target.coeff.begin(), target.coeff.end(), [](const Rational& v) { return v != Rational(0); }))
        throw DomainError("no certificate for " + alpha.to_string());
      cert.entries.push_back(std::move(entry));
      continue;
    }
    auto s = solve(a, target.coeff, m);
    if (!s || s->kernel.size() != 1) throw DomainError("no certificate for " + alpha.to_string());
    Vec dir = s->kernel[0];
    Rational weight = 0;
    for (std::size_t k = 0; k < m; ++k) weight += dir[k] * basis[k].constant;
    if (weight < 0)
      for (auto& v : dir) v = -v;
    if (std::any_of(dir.begin(), dir.end(), [](const Rational& v) { return v <= 0; }))
      throw DomainError("fixed-group alcove is not a bounded simplex");
    // Smallest shift along the kernel that makes every coefficient
    // nonnegative; this leaves the largest slack.
    Rational shift = -s->particular[0] / dir[0];
    for (std::size_t k = 1; k < m; ++k) shift = std::max(shift, -s->particular[k] / dir[k]);
    Rational used = 0;
    for (std::size_t k = 0; k < m; ++k) {
      entry.coefficients[k] = s->particular[k] + shift * dir[k];
      used += entry.coefficients[k] * basis[k].constant;
    }
    entry.slack = target.constant - used;
    if (entry.slack < 0) throw DomainError("no certificate for " + alpha.to_string());
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

bool validate(const RootCertificate& entry, const std::vector<AffineRoot>& theta_roots, int n) {
  if (entry.coefficients.size() != theta_roots.size()) return false;
  const Affine target = restricted(entry.target, n);
  Vec sum(static_cast<std::size_t>(n), Rational(0));
  Rational constant = entry.slack;
  bool positive = entry.slack > 0;
  for (std::size_t k = 0; k < theta_roots.size(); ++k) {
    const Rational& c = entry.coefficients[k];
    if (c < 0) return false;
    if (c > 0) positive = true;
    const Affine b = restricted(theta_roots[k], n);
    for (int j = 0; j < n; ++j) sum[static_cast<std::size_t>(j)] += c * b.coeff[static_cast<std::size_t>(j)];
    constant += c * b.constant;
  }
  return entry.slack >= 0 && positive && sum == target.coeff && constant == target.constant;
}

bool validate(const InclusionCertificate& cert) {
  if (cert.entries.size() != cert.g_roots.size()) return false;
  const int n = cert.pair.g().size / 2;
  for (std::size_t i = 0; i < cert.entries.size(); ++i) {
    if (!(cert.entries[i].target == cert.g_roots[i])) return false;
    if (!validate(cert.entries[i], cert.theta_roots, n)) return false;
  }
  return true;
}

}  // namespace padiclab
