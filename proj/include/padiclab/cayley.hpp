#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclab/groups.hpp"
#include "padiclab/matrix.hpp"

namespace padiclab {

/// (1 + X/2)(1 - X/2)^-1.  DomainError unless X is topologically nilpotent.
Matrix cayley(const Matrix& x);
/// 2(g - 1)(g + 1)^-1.  DomainError unless g is topologically unipotent.
Matrix cayley_inv(const Matrix& g);
/// 1 + 2 sum_{k>=1} (X/2)^k, summed until the terms vanish to precision.
Matrix cayley_series(const Matrix& x);

/// Bilinear (or hermitian) form whose isometries realize the classical
/// group: J_N for Sp, odd SO and U; the antidiagonal of ones for even SO.
/// Throws for GL.
Matrix form_matrix(const GroupType& h, const LocalField& f);
/// X S + S X^* = 0, where X^* is the conjugate transpose.
bool in_lie_algebra(const Matrix& x, const GroupType& h);
/// g S g^* = S, and det g = 1 for SO.
bool in_group(const Matrix& g, const GroupType& h);

/// c(X/2)^2 for Sp and odd SO; c(X)^2 for even SO and U.
/// DomainError if X is not in the Lie algebra of h.
Matrix cayley_prime(const Matrix& x, const GroupType& h);

struct Mismatch {
  std::string check;
  int row = 0;
  int col = 0;
  /// Uniformizer-of-E digit at which the two sides first differ.
  int digit = 0;
};

struct EquivarianceReport {
  bool conjugation_ok = true;
  bool theta_ok = true;
  std::vector<Mismatch> mismatches;
  bool ok() const { return conjugation_ok && theta_ok; }
};

/// Checks A c(X) A^-1 = c(A X A^-1) and theta(c(X)) = c(dtheta X).
EquivarianceReport verify_equivariance(const Matrix& a, const Matrix& x);
/// Entries where the two matrices disagree.
std::vector<Mismatch> compare(const std::string& check, const Matrix& lhs, const Matrix& rhs);

/// The topologically unipotent square root of a topologically unipotent g,
/// by Newton iteration y <- (y + y^-1 g)/2 from y = 1.  PrecisionExhausted
/// if it has not settled within 8 * precision_k steps.
Matrix unipotent_sqrt(const Matrix& g);

}  // namespace padiclab
