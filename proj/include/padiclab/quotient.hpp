#pragma once

#include <cstdint>
#include <vector>

#include "padiclab/building.hpp"
#include "padiclab/matrix.hpp"

namespace padiclab {

/// The graded piece g_{x,r} / g_{x,r+} of gl_N(E), a vector space over the
/// residue field k_E.  Coordinates are the positions (i,j) where
/// e(r - x_i + x_j) is an integer (the level); an element stores one
/// residue code per position.
class GradedQuotient {
 public:
  struct Position {
    int row;
    int col;
    int level;
  };
  using Element = std::vector<int>;

  GradedQuotient(const LocalField& f, ApartmentPoint x, Rational r);

  const LocalField& field() const { return field_; }
  const ApartmentPoint& point() const { return x_; }
  const Rational& level() const { return r_; }
  const std::vector<Position>& positions() const { return positions_; }
  /// Dimension over k_E.
  int dimension() const { return static_cast<int>(positions_.size()); }
  /// Dimension over F_p.
  int fp_dimension() const;
  /// q^dimension; CapExceeded if it is larger than cap.
  std::uint64_t cardinality(std::uint64_t cap) const;

  Element zero() const { return Element(positions_.size(), 0); }
  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element scale(const Element& a, int k) const;

  /// Class of X in g_{x,r}; DomainError if X is not in g_{x,r}.
  Element class_of(const Matrix& x_mat) const;
  /// The lift with entries omega^level * (a + b omega) at the jump positions.
  Matrix lift(const Element& c) const;

  /// Base-q numbering of the elements, first position most significant.
  std::uint64_t index_of(const Element& c) const;
  Element element_at(std::uint64_t index) const;
  std::vector<Element> enumerate(std::uint64_t cap) const;

  /// Basis over F_p: the unit code at every position, and omega-bar too in
  /// the unramified case.
  std::vector<Element> fp_basis() const;

  /// The involution induced by dtheta.  DomainError unless x is theta-fixed.
  Element theta_star(const Element& c) const;
  bool is_theta_fixed(const Element& c) const;
  /// c - theta* c  (orbit translations are exactly these).
  Element one_minus_theta(const Element& c) const { return sub(c, theta_star(c)); }
  /// (1 + theta*)/2, the theta*-fixed representative of c + Im(1 - theta*).
  Element canonical(const Element& c) const;

  /// dim_{F_p} ker(1 - theta*) and ker(1 + theta*), by elimination over F_p.
  int fixed_fp_dimension() const;
  int anti_fp_dimension() const;

 private:
  int kernel_dimension(int sign) const;

  LocalField field_;
  ApartmentPoint x_;
  Rational r_;
  std::vector<Position> positions_;
  bool theta_ready_ = false;
  /// theta* of each F_p basis vector, in fp_basis() order.
  std::vector<Element> theta_basis_;
};

/// Dimensions over F_p of the dtheta-fixed and dtheta-anti parts of
/// g_{x,r:r+}, read off position by position: dtheta pairs (i,j) with
/// (N+1-j, N+1-i); a free pair contributes [k_E:F_p] to each, a
/// self-paired position contributes according to the sign (-1)^N, the
/// Galois action, and the parity of the level.
struct GradedSplit {
  int fixed = 0;
  int anti = 0;
};
GradedSplit graded_theta_split(const LocalField& f, const ApartmentPoint& x, const Rational& r);

}  // namespace padiclab
