#pragma once

#include <map>
#include <vector>

#include "padiclab/building.hpp"
#include "padiclab/matrix.hpp"

namespace padiclab {

/// An O_E-lattice inside the N x N matrices over E, kept as an echelon
/// basis: row k has its leading entry at coordinate pivot k (row-major
/// index i*N + j) and every later row vanishes there.
class Lattice {
 public:
  Lattice() = default;
  /// O_E-span of the generators.  Zero-to-precision entries are treated as 0.
  static Lattice span(const LocalField& f, int n, const std::vector<Matrix>& generators);
  /// {X : ord X_ij >= t_ij}, t in uniformizer-of-E digits.
  static Lattice monomial(const LocalField& f, const std::vector<std::vector<int>>& thresholds);

  const LocalField& field() const { return field_; }
  int size() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  std::vector<Matrix> basis() const;

  /// PrecisionExhausted when a residual entry is zero only to a precision
  /// below what the lattice demands there.
  bool contains(const Matrix& x) const;
  bool contains(const Lattice& o) const;
  bool operator==(const Lattice& o) const { return contains(o) && o.contains(*this); }

  /// Span of all products a b with a in this lattice and b in o.
  Lattice product(const Lattice& o) const;
  Lattice left_multiplied(const Matrix& a) const;
  Lattice power(int k) const;

 private:
  struct Row {
    int pivot;
    std::vector<Scalar> v;
  };
  LocalField field_;
  int n_ = 0;
  std::vector<Row> rows_;
};

/// Minimal uniformizer-of-E digit allowed at (i,j) in g_{x,r}:
/// ceil(e(r - x_i + x_j)), or floor(.) + 1 for the strict filtration g_{x,r+}.
std::vector<std::vector<int>> mp_thresholds(const ApartmentPoint& x, const Rational& r, int e, bool strict = false);
Lattice mp_lattice(const LocalField& f, const ApartmentPoint& x, const Rational& r, bool strict = false);

/// val X_ij >= r - x_i + x_j for all i, j.
bool mp_membership(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r);
/// Membership in g_{x,r+}.
bool mp_membership_strict(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r);
/// mp_membership and dtheta X = X.  x must be theta-fixed.
bool mp_theta_membership(const Matrix& x_mat, const ApartmentPoint& x, const Rational& r);
/// g - 1 in g_{x,r}, i.e. g in G_{x,r} for r > 0.
bool in_mp_group(const Matrix& g, const ApartmentPoint& x, const Rational& r);

/// min_ij (val X_ij + x_i - x_j): the largest r with X in g_{x,r}.
/// Entries that vanish to precision count at their precision.
Rational mp_depth(const Matrix& x_mat, const ApartmentPoint& x);

/// Ones on the superdiagonal and the uniformizer of E in the bottom-left
/// corner.
Matrix phi_matrix(const LocalField& f, int n);

/// Caches g_{x,r}^k, the span of k-fold products.
class FiltrationPowers {
 public:
  FiltrationPowers(const LocalField& f, ApartmentPoint x, Rational r);
  const Lattice& power(int k);
  const ApartmentPoint& point() const { return x_; }
  const Rational& level() const { return r_; }

 private:
  LocalField field_;
  ApartmentPoint x_;
  Rational r_;
  std::map<int, Lattice> cache_;
};

}  // namespace padiclab
