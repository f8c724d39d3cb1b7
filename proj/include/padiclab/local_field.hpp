#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

enum class ExtensionKind { trivial, unramified, ramified };

std::string to_string(ExtensionKind kind);
/// "trivial" | "unram" | "ram" (long names accepted too).
ExtensionKind parse_extension_kind(std::string_view text);

bool is_prime(std::int64_t n);

namespace detail {

/// Largest R with p^R <= 2^62; relative precision never exceeds it.
int max_relative_precision(int p);
std::uint64_t pow_p(int p, int exponent);

/// Truncated element of Q_p in the absolute-precision model:
/// value = p^val * unit (mod p^prec).  A value whose known digits all
/// vanish is zero-to-precision and stores val == prec.
class Qp {
 public:
  Qp() = default;
  static Qp zero(int p, int prec);
  static Qp from_int(int p, std::int64_t n, int prec);
  /// p^val * unit, unit reduced mod p^(prec - val); unit need not be a unit.
  static Qp make(int p, int val, std::uint64_t unit, int prec);

  int p() const { return p_; }
  int val() const { return val_; }
  int prec() const { return prec_; }
  std::uint64_t unit() const { return unit_; }
  bool is_zero() const { return val_ >= prec_; }

  Qp operator+(const Qp& o) const;
  Qp operator-(const Qp& o) const { return *this + (-o); }
  Qp operator-() const;
  Qp operator*(const Qp& o) const;
  Qp times_int(std::int64_t k) const;
  /// Exact multiplication by p^k.
  Qp shifted(int k) const;
  Qp inverse() const;
  Qp truncated(int prec) const;
  /// Digit of p^level in the p-adic expansion (0..p-1).
  int digit(int level) const;

 private:
  int p_ = 3;
  int val_ = 0;
  int prec_ = 0;
  std::uint64_t unit_ = 0;
};

}  // namespace detail

class Scalar;

/// Base data for F = Q_p and the quadratic extension E = F(omega), with
/// omega^2 = p (ramified) or omega^2 = u, u the least non-residue mod p
/// (unramified).  Valuations are normalized by val(p) = 1.
class LocalField {
 public:
  /// precision_k is in units of val; its denominator must divide e.
  static LocalField make(int p, ExtensionKind kind, Rational precision_k);
  static LocalField make(int p, ExtensionKind kind, int precision_k = 12) {
    return make(p, kind, Rational(precision_k));
  }

  int p() const { return p_; }
  ExtensionKind kind() const { return kind_; }
  int e() const { return kind_ == ExtensionKind::ramified ? 2 : 1; }
  /// Size of the residue field of E.
  int q() const { return kind_ == ExtensionKind::unramified ? p_ * p_ : p_; }
  bool is_quadratic() const { return kind_ != ExtensionKind::trivial; }
  /// omega^2; zero for the trivial kind.
  int square_class() const { return omega_sq_; }
  /// Absolute precision of fresh samples, in uniformizer-of-E digits.
  int digits() const { return digits_; }
  Rational precision() const { return Rational(digits_, e()); }
  /// Same underlying field (precision may differ).
  bool same_field(const LocalField& o) const { return p_ == o.p_ && kind_ == o.kind_; }
  LocalField with_precision(Rational precision_k) const { return make(p_, kind_, precision_k); }

  // Constants are exact up to the 64-bit backend cap.
  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t n) const;
  /// a + b*omega.
  Scalar element(std::int64_t a, std::int64_t b) const;
  /// Uniformizer of E; of F when the kind is trivial or unramified.
  Scalar uniformizer() const;
  Scalar uniformizer_power(int w) const;
  /// p, the uniformizer of F.
  Scalar uniformizer_f() const;
  Scalar omega() const;

  /// ord >= min_ord, known to digits() absolute digits.
  Scalar random_integral(std::mt19937_64& rng, int min_ord = 0) const;
  Scalar random_unit(std::mt19937_64& rng) const;

  /// Residue field arithmetic; elements are coded as a + p*b meaning
  /// a + b*omega-bar (b = 0 unless the kind is unramified).
  int residue_add(int x, int y) const;
  int residue_neg(int x) const;
  int residue_scale(int x, int k) const;
  /// omega^level * (a + b omega) for residue code a + p*b.
  Scalar lift_residue(int code, int level) const;

  std::string describe() const;

 private:
  int p_ = 3;
  ExtensionKind kind_ = ExtensionKind::trivial;
  int omega_sq_ = 0;
  int digits_ = 12;

  friend class Scalar;
};

/// Truncated element of E with exact valuation and tracked absolute
/// precision.  Stored as a + b*omega with a, b in truncated Q_p.
class Scalar {
 public:
  static constexpr int kInfiniteOrd = std::numeric_limits<int>::max() / 4;

  Scalar() = default;

  const LocalField& field() const { return field_; }
  /// Every tracked digit vanishes.
  bool is_zero() const { return raw_ord() >= precision(); }
  /// Valuation in units of the uniformizer of E; kInfiniteOrd when zero.
  int ord() const;
  /// ord() / e; throws DomainError for zero-to-precision values.
  Rational val() const;
  /// Absolute precision in uniformizer-of-E digits.
  int precision() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Throws PrecisionExhausted for zero-to-precision input.
  Scalar inverse() const;
  /// Galois conjugation of E/F (identity for the trivial kind).
  Scalar conj() const;
  Scalar truncated(int digits) const;

  /// Residue code of x / uniformizer^level; requires ord() >= level.
  int residue(int level) const;
  /// Uniformizer-adic digits (residue codes) from ord() up to precision().
  std::vector<int> digits() const;

  const detail::Qp& rational_part() const { return a_; }
  const detail::Qp& omega_part() const { return b_; }

  std::string to_string() const;

 private:
  friend class LocalField;
  Scalar(LocalField f, detail::Qp a, detail::Qp b) : field_(f), a_(a), b_(b) {}
  int raw_ord() const;
  int digit_at(int level) const;
  void check_owner(const Scalar& o) const;

  LocalField field_;
  detail::Qp a_;
  detail::Qp b_;
};

/// a and b agree on every digit both of them claim.
bool agree(const Scalar& a, const Scalar& b);

}  // namespace padiclab
