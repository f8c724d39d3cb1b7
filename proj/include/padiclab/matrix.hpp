#pragma once

#include <random>
#include <string>
#include <vector>

#include "padiclab/local_field.hpp"

namespace padiclab {

/// Square matrix over E.  Indices are 0-based.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix (entries exact up to the backend cap).
  Matrix(const LocalField& f, int n);

  static Matrix identity(const LocalField& f, int n);
  static Matrix scalar(const LocalField& f, int n, const Scalar& s);
  static Matrix diagonal(const std::vector<Scalar>& entries);
  static Matrix from_ints(const LocalField& f, const std::vector<std::vector<std::int64_t>>& rows);
  /// Entries with ord >= min_ord, known to f.digits() absolute digits.
  static Matrix random(const LocalField& f, int n, std::mt19937_64& rng, int min_ord = 0);

  const LocalField& field() const { return field_; }
  int size() const { return n_; }
  Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  Matrix transpose() const;
  /// Entrywise Galois conjugation.
  Matrix conj() const;
  /// Gaussian elimination with pivots of least valuation.  Throws
  /// PrecisionExhausted when the matrix is singular to precision.
  Matrix inverse() const;
  Scalar trace() const;
  Matrix truncated(int digits) const;

  bool is_zero() const;
  /// Least entry ord; Scalar::kInfiniteOrd for the zero matrix.
  int min_ord() const;
  /// Least entry precision.
  int precision() const;

  std::string to_string() const;

 private:
  void check_compatible(const Matrix& o) const;

  LocalField field_;
  int n_ = 0;
  std::vector<Scalar> a_;
};

bool agree(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

/// Antidiagonal J_N with entry (i, N+1-i) = (-1)^(i-1) (1-based).
Matrix j_matrix(const LocalField& f, int n);
/// g -> J conj(g)^T^-1 J^-1.
Matrix theta(const Matrix& g);
/// X -> -J conj(X)^T J^-1.
Matrix dtheta(const Matrix& x);

struct ThetaDecomposition {
  Matrix fixed_part;
  Matrix anti_part;
};
ThetaDecomposition decompose_dtheta(const Matrix& x);

/// Coefficients of det(lambda - M), lowest degree first; the last is 1.
/// Division-free (Berkowitz), so no precision is lost to denominators.
std::vector<Scalar> charpoly(const Matrix& m);

/// Root valuations of a polynomial read off its Newton polygon.
struct NewtonPolygon {
  /// With multiplicity, ascending.
  std::vector<Rational> root_valuations;
  /// False when some coefficient is zero-to-precision; it is then placed
  /// at its precision and the valuations are only indicative.
  bool exact = true;
};
/// coeffs lowest degree first; the leading coefficient must be nonzero.
NewtonPolygon newton_polygon(const std::vector<Scalar>& coeffs);

enum class Verdict { yes, no, undetermined };
std::string to_string(Verdict v);

Verdict topological_nilpotence(const Matrix& x);
Verdict topological_unipotence(const Matrix& g);
/// Throw PrecisionExhausted instead of answering undetermined.
bool is_topologically_nilpotent(const Matrix& x);
bool is_topologically_unipotent(const Matrix& g);

}  // namespace padiclab
