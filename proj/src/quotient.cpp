#include "padiclab/quotient.hpp"

#include <utility>

#include "padiclab/errors.hpp"
#include "padiclab/lattice.hpp"

namespace padiclab {

GradedQuotient::GradedQuotient(const LocalField& f, ApartmentPoint x, Rational r)
    : field_(f), x_(std::move(x)), r_(r) {
  const int n = static_cast<int>(x_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational v = (r_ - x_[static_cast<std::size_t>(i)] + x_[static_cast<std::size_t>(j)]) * f.e();
      if (is_integer(v)) positions_.push_back({i, j, static_cast<int>(v.numerator())});
    }
  if (padiclab::is_theta_fixed(x_)) {
    theta_ready_ = true;
    for (const auto& b : fp_basis()) theta_basis_.push_back(class_of(dtheta(lift(b))));
  }
}

int GradedQuotient::fp_dimension() const {
  return dimension() * (field_.kind() == ExtensionKind::unramified ? 2 : 1);
}

std::uint64_t GradedQuotient::cardinality(std::uint64_t cap) const {
  std::uint64_t total = 1;
  for (int k = 0; k < dimension(); ++k) {
    total *= static_cast<std::uint64_t>(field_.q());
    if (total > cap) throw CapExceeded("graded quotient has more than " + std::to_string(cap) + " elements");
  }
  if (total > cap) throw CapExceeded("graded quotient has more than " + std::to_string(cap) + " elements");
  return total;
}

GradedQuotient::Element GradedQuotient::add(const Element& a, const Element& b) const {
  Element out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = field_.residue_add(a[k], b[k]);
  return out;
}

GradedQuotient::Element GradedQuotient::neg(const Element& a) const {
  Element out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = field_.residue_neg(a[k]);
  return out;
}

GradedQuotient::Element GradedQuotient::scale(const Element& a, int k) const {
  Element out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = field_.residue_scale(a[t], k);
  return out;
}

GradedQuotient::Element GradedQuotient::class_of(const Matrix& x_mat) const {
  if (!mp_membership(x_mat, x_, r_)) throw DomainError("class_of: matrix is not in the filtration lattice");
  Element c;
  c.reserve(positions_.size());
  for (const auto& pos : positions_) c.push_back(x_mat(pos.row, pos.col).residue(pos.level));
  return c;
}

Matrix GradedQuotient::lift(const Element& c) const {
  Matrix m(field_, static_cast<int>(x_.size()));
  for (std::size_t k = 0; k < positions_.size(); ++k)
    if (c[k] != 0) m(positions_[k].row, positions_[k].col) = field_.lift_residue(c[k], positions_[k].level);
  return m;
}

std::uint64_t GradedQuotient::index_of(const Element& c) const {
  std::uint64_t idx = 0;
  for (int code : c) idx = idx * static_cast<std::uint64_t>(field_.q()) + static_cast<std::uint64_t>(code);
  return idx;
}

GradedQuotient::Element GradedQuotient::element_at(std::uint64_t index) const {
  Element c(positions_.size());
  const auto q = static_cast<std::uint64_t>(field_.q());
  for (std::size_t k = c.size(); k-- > 0;) {
    c[k] = static_cast<int>(index % q);
    index /= q;
  }
  return c;
}

std::vector<GradedQuotient::Element> GradedQuotient::enumerate(std::uint64_t cap) const {
  const std::uint64_t total = cardinality(cap);
  std::vector<Element> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<GradedQuotient::Element> GradedQuotient::fp_basis() const {
  std::vector<Element> out;
  const bool unram = field_.kind() == ExtensionKind::unramified;
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    Element e = zero();
    e[k] = 1;
    out.push_back(e);
    if (unram) {
      e[k] = field_.p();
      out.push_back(e);
    }
  }
  return out;
}

GradedQuotient::Element GradedQuotient::theta_star(const Element& c) const {
  if (!theta_ready_) throw DomainError("theta* needs a theta-fixed point");
  const int p = field_.p();
  const bool unram = field_.kind() == ExtensionKind::unramified;
  Element out = zero();
  std::size_t b = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    out = add(out, scale(theta_basis_[b++], c[k] % p));
    if (unram) out = add(out, scale(theta_basis_[b++], c[k] / p));
  }
  return out;
}

bool GradedQuotient::is_theta_fixed(const Element& c) const { return theta_star(c) == c; }

GradedQuotient::Element GradedQuotient::canonical(const Element& c) const {
  return scale(add(c, theta_star(c)), (field_.p() + 1) / 2);
}

int GradedQuotient::kernel_dimension(int sign) const {
  if (!theta_ready_) throw DomainError("theta* needs a theta-fixed point");
  const int p = field_.p();
  const bool unram = field_.kind() == ExtensionKind::unramified;
  const int d = fp_dimension();
  auto coords = [&](const Element& c) {
    std::vector<int> v;
    for (int code : c) {
      v.push_back(code % p);
      if (unram) v.push_back(code / p);
    }
    return v;
  };
  // Rows: images of the basis vectors under theta* - sign.
  std::vector<std::vector<int>> rows;
  const auto basis = fp_basis();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    auto v = coords(theta_basis_[b]);
    v[b] = ((v[b] - sign) % p + p) % p;
    rows.push_back(std::move(v));
  }
  auto inv_mod = [p](int a) {
    int r = 1;
    for (int e = p - 2, base = a; e > 0; e >>= 1, base = base * base % p)
      if (e & 1) r = r * base % p;
    return r;
  };
  int rank = 0;
  for (int col = 0; col < d && rank < d; ++col) {
    int piv = rank;
    while (piv < d && rows[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
    if (piv == d) continue;
    std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    const int inv = inv_mod(pr[static_cast<std::size_t>(col)]);
    for (auto& v : pr) v = v * inv % p;
    for (int r = 0; r < d; ++r) {
      if (r == rank) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      const int factor = row[static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (int k = 0; k < d; ++k)
        row[static_cast<std::size_t>(k)] = ((row[static_cast<std::size_t>(k)] - factor * pr[static_cast<std::size_t>(k)]) % p + p) % p;
    }
    ++rank;
  }
  return d - rank;
}

int GradedQuotient::fixed_fp_dimension() const { return kernel_dimension(1); }
int GradedQuotient::anti_fp_dimension() const { return kernel_dimension(-1); }

GradedSplit graded_theta_split(const LocalField& f, const ApartmentPoint& x, const Rational& r) {
  if (!is_theta_fixed(x)) throw DomainError("graded_theta_split needs a theta-fixed point");
  const int n = static_cast<int>(x.size());
  const int deg = f.kind() == ExtensionKind::unramified ? 2 : 1;
  const int sigma = n % 2 == 0 ? 1 : -1;
  GradedSplit out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational v = (r - x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)]) * f.e();
      if (!is_integer(v)) continue;
      const int pi = n - 1 - j;
      const int pj = n - 1 - i;
      if (pi != i || pj != j) {
        // Count each free pair once, from its lexicographically smaller end.
        if (std::pair(i, j) < std::pair(pi, pj)) {
          out.fixed += deg;
          out.anti += deg;
        }
        continue;
      }
      switch (f.kind()) {
        case ExtensionKind::trivial: (sigma == 1 ? out.fixed : out.anti) += 1; break;
        case ExtensionKind::unramified:
          out.fixed += 1;
          out.anti += 1;
          break;
        case ExtensionKind::ramified: {
          const int galois = v.numerator() % 2 == 0 ? 1 : -1;
          (sigma * galois == 1 ? out.fixed : out.anti) += 1;
          break;
        }
      }
    }
  return out;
}

}  // namespace padiclab
