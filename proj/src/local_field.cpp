#include "padiclab/local_field.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "padiclab/errors.hpp"

namespace padiclab {

std::string to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::trivial: return "trivial";
    case ExtensionKind::unramified: return "unram";
    case ExtensionKind::ramified: return "ram";
  }
  return "?";
}

ExtensionKind parse_extension_kind(std::string_view text) {
  if (text == "trivial") return ExtensionKind::trivial;
  if (text == "unram" || text == "unramified") return ExtensionKind::unramified;
  if (text == "ram" || text == "ramified") return ExtensionKind::ramified;
  throw std::invalid_argument("unknown extension kind '" + std::string(text) + "'");
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

namespace {

constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
constexpr int kMaxP = 64;

struct PowerTables {
  std::array<std::array<std::uint64_t, 64>, kMaxP> pow{};
  std::array<int, kMaxP> rmax{};
  PowerTables() {
    for (int p = 2; p < kMaxP; ++p) {
      std::uint64_t v = 1;
      int r = 0;
      pow[p][0] = 1;
      while (v <= kLimit / static_cast<std::uint64_t>(p)) {
        v *= static_cast<std::uint64_t>(p);
        ++r;
        pow[p][r] = v;
      }
      rmax[p] = r;
    }
  }
};

const PowerTables& tables() {
  static const PowerTables t;
  return t;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = static_cast<__int128>(a), r = static_cast<__int128>(m);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw DomainError("element is not a unit");
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += static_cast<__int128>(m);
  return static_cast<std::uint64_t>(res);
}

int vp(std::int64_t n, int p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

int max_relative_precision(int p) {
  if (p < 2 || p >= kMaxP) throw DomainError("prime out of supported range");
  return tables().rmax[p];
}

std::uint64_t pow_p(int p, int exponent) {
  if (exponent < 0 || exponent > max_relative_precision(p))
    throw DomainError("power of p exceeds the 64-bit backend");
  return tables().pow[p][exponent];
}

Qp Qp::zero(int p, int prec) {
  Qp z;
  z.p_ = p;
  z.val_ = prec;
  z.prec_ = prec;
  z.unit_ = 0;
  return z;
}

Qp Qp::make(int p, int val, std::uint64_t unit, int prec) {
  int r = prec - val;
  if (r <= 0) return zero(p, prec);
  const int rmax = max_relative_precision(p);
  if (r > rmax) {
    r = rmax;
    prec = val + rmax;
  }
  unit %= pow_p(p, r);
  if (unit == 0) return zero(p, prec);
  const auto up = static_cast<std::uint64_t>(p);
  while (unit % up == 0) {
    unit /= up;
    ++val;
  }
  Qp x;
  x.p_ = p;
  x.val_ = val;
  x.prec_ = prec;
  x.unit_ = unit;
  return x;
}

Qp Qp::from_int(int p, std::int64_t n, int prec) {
  if (n == 0) return zero(p, prec);
  int v = vp(n, p);
  std::int64_t m = n;
  for (int i = 0; i < v; ++i) m /= p;
  int r = std::min(prec - v, max_relative_precision(p));
  if (r <= 0) return zero(p, prec);
  auto mod = static_cast<std::int64_t>(pow_p(p, r));
  std::int64_t red = ((m % mod) + mod) % mod;
  return make(p, v, static_cast<std::uint64_t>(red), prec);
}

Qp Qp::operator+(const Qp& o) const {
  const int prec = std::min(prec_, o.prec_);
  const bool a_live = val_ < prec;
  const bool b_live = o.val_ < prec;
  if (!a_live && !b_live) return zero(p_, prec);
  if (!b_live) return truncated(prec);
  if (!a_live) return o.truncated(prec);
  const int v = std::min(val_, o.val_);
  const std::uint64_t m = pow_p(p_, prec - v);
  std::uint64_t ta = mulmod(unit_ % m, pow_p(p_, val_ - v), m);
  std::uint64_t tb = mulmod(o.unit_ % m, pow_p(p_, o.val_ - v), m);
  return make(p_, v, (ta + tb) % m, prec);
}

Qp Qp::operator-() const {
  if (is_zero()) return *this;
  const std::uint64_t m = pow_p(p_, prec_ - val_);
  Qp r = *this;
  r.unit_ = (m - unit_ % m) % m;
  return r;
}

Qp Qp::operator*(const Qp& o) const {
  const int prec = std::min(prec_ + o.val_, o.prec_ + val_);
  const int v = val_ + o.val_;
  if (is_zero() || o.is_zero()) return zero(p_, prec);
  const std::uint64_t m = pow_p(p_, prec - v);
  return make(p_, v, mulmod(unit_ % m, o.unit_ % m, m), prec);
}

Qp Qp::times_int(std::int64_t k) const {
  if (k == 0) return zero(p_, prec_ + max_relative_precision(p_));
  return *this * from_int(p_, k, vp(k, p_) + max_relative_precision(p_));
}

Qp Qp::shifted(int k) const {
  Qp r = *this;
  r.val_ += k;
  r.prec_ += k;
  return r;
}

Qp Qp::inverse() const {
  if (is_zero()) throw PrecisionExhausted("inverse of a zero-to-precision value");
  const int r = prec_ - val_;
  const std::uint64_t m = pow_p(p_, r);
  return make(p_, -val_, invmod(unit_ % m, m), -val_ + r);
}

Qp Qp::truncated(int prec) const {
  if (prec >= prec_) return *this;
  if (val_ >= prec) return zero(p_, prec);
  return make(p_, val_, unit_, prec);
}

int Qp::digit(int level) const {
  if (level >= prec_) throw PrecisionExhausted("digit beyond tracked precision");
  if (level < val_) return 0;
  const std::uint64_t shifted_unit = unit_ / pow_p(p_, level - val_);
  return static_cast<int>(shifted_unit % static_cast<std::uint64_t>(p_));
}

}  // namespace detail

using detail::Qp;

namespace {

int least_nonresidue(int p) {
  for (int u = 2; u < p; ++u) {
    std::int64_t acc = 1;
    for (int i = 0; i < (p - 1) / 2; ++i) acc = acc * u % p;
    if (acc == p - 1) return u;
  }
  throw DomainError("no quadratic non-residue");
}

int cap(int p) { return detail::max_relative_precision(p); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

LocalField LocalField::make(int p, ExtensionKind kind, Rational precision_k) {
  if (p == 2) throw DomainError("p = 2 is excluded");
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (p >= 64) throw DomainError("p too large for the 64-bit backend");
  LocalField f;
  f.p_ = p;
  f.kind_ = kind;
  const Rational scaled = precision_k * Rational(f.e());
  if (!is_integer(scaled)) throw DomainError("precision must lie in (1/e)Z");
  if (precision_k < Rational(1)) throw DomainError("precision must be at least 1");
  if (scaled.numerator() > 2 * (cap(p) - 2))
    throw DomainError("precision exceeds the 64-bit backend for p = " + std::to_string(p));
  f.digits_ = static_cast<int>(scaled.numerator());
  switch (kind) {
    case ExtensionKind::trivial: f.omega_sq_ = 0; break;
    case ExtensionKind::unramified: f.omega_sq_ = least_nonresidue(p); break;
    case ExtensionKind::ramified: f.omega_sq_ = p; break;
  }
  if (kind != ExtensionKind::ramified && f.digits_ > cap(p) - 2)
    throw DomainError("precision exceeds the 64-bit backend for p = " + std::to_string(p));
  return f;
}

Scalar LocalField::zero() const { return Scalar(*this, Qp::zero(p_, cap(p_)), Qp::zero(p_, cap(p_))); }

Scalar LocalField::one() const { return from_int(1); }

Scalar LocalField::from_int(std::int64_t n) const {
  if (n == 0) return zero();
  int v = 0;
  for (std::int64_t m = n; m % p_ == 0; m /= p_) ++v;
  return Scalar(*this, Qp::from_int(p_, n, v + cap(p_)), Qp::zero(p_, cap(p_)));
}

Scalar LocalField::element(std::int64_t a, std::int64_t b) const {
  if (b != 0 && !is_quadratic()) throw DomainError("omega component in the trivial extension");
  return from_int(a) + (b == 0 ? zero() : from_int(b) * omega());
}

Scalar LocalField::omega() const {
  if (!is_quadratic()) throw DomainError("trivial extension has no omega");
  return Scalar(*this, Qp::zero(p_, cap(p_)), Qp::from_int(p_, 1, cap(p_)));
}

Scalar LocalField::uniformizer() const { return uniformizer_power(1); }

Scalar LocalField::uniformizer_f() const { return from_int(p_); }

Scalar LocalField::uniformizer_power(int w) const {
  if (kind_ != ExtensionKind::ramified) {
    return Scalar(*this, Qp::make(p_, w, 1, w + cap(p_)), Qp::zero(p_, w + cap(p_)));
  }
  const auto m = static_cast<int>(floor_div(w, 2));
  if (w - 2 * m == 0) return Scalar(*this, Qp::make(p_, m, 1, m + cap(p_)), Qp::zero(p_, m + cap(p_)));
  return Scalar(*this, Qp::zero(p_, m + 1 + cap(p_)), Qp::make(p_, m, 1, m + cap(p_)));
}

Scalar LocalField::random_integral(std::mt19937_64& rng, int min_ord) const {
  const int d = digits_ - min_ord;
  if (d <= 0) return zero().truncated(digits_);
  auto draw = [&](int prec) {
    if (prec <= 0) return Qp::zero(p_, 0);
    std::uniform_int_distribution<std::uint64_t> dist(0, detail::pow_p(p_, prec) - 1);
    return Qp::make(p_, 0, dist(rng), prec);
  };
  Scalar body;
  switch (kind_) {
    case ExtensionKind::trivial: body = Scalar(*this, draw(d), Qp::zero(p_, cap(p_))); break;
    case ExtensionKind::unramified: body = Scalar(*this, draw(d), draw(d)); break;
    case ExtensionKind::ramified: body = Scalar(*this, draw((d + 1) / 2), draw(d / 2)); break;
  }
  return uniformizer_power(min_ord) * body;
}

Scalar LocalField::random_unit(std::mt19937_64& rng) const {
  for (;;) {
    Scalar s = random_integral(rng, 0);
    if (s.ord() == 0) return s;
  }
}

int LocalField::residue_add(int x, int y) const {
  return (x % p_ + y % p_) % p_ + p_ * ((x / p_ + y / p_) % p_);
}

int LocalField::residue_neg(int x) const {
  return (p_ - x % p_) % p_ + p_ * ((p_ - x / p_) % p_);
}

int LocalField::residue_scale(int x, int k) const {
  k = ((k % p_) + p_) % p_;
  return (x % p_) * k % p_ + p_ * ((x / p_) * k % p_);
}

Scalar LocalField::lift_residue(int code, int level) const {
  const int a = code % p_;
  const int b = code / p_;
  if (b != 0 && kind_ != ExtensionKind::unramified) throw DomainError("residue code out of range");
  return uniformizer_power(level) * element(a, b);
}

std::string LocalField::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (kind_ == ExtensionKind::unramified) os << "(sqrt " << omega_sq_ << ")";
  if (kind_ == ExtensionKind::ramified) os << "(sqrt " << p_ << ")";
  os << " prec " << padiclab::to_string(precision());
  return os.str();
}

int Scalar::raw_ord() const {
  switch (field_.kind_) {
    case ExtensionKind::trivial: return a_.val();
    case ExtensionKind::unramified: return std::min(a_.val(), b_.val());
    case ExtensionKind::ramified: return std::min(2 * a_.val(), 2 * b_.val() + 1);
  }
  return 0;
}

int Scalar::precision() const {
  switch (field_.kind_) {
    case ExtensionKind::trivial: return a_.prec();
    case ExtensionKind::unramified: return std::min(a_.prec(), b_.prec());
    case ExtensionKind::ramified: return std::min(2 * a_.prec(), 2 * b_.prec() + 1);
  }
  return 0;
}

int Scalar::ord() const { return is_zero() ? kInfiniteOrd : raw_ord(); }

Rational Scalar::val() const {
  if (is_zero()) throw DomainError("valuation of a zero-to-precision value");
  return Rational(raw_ord(), field_.e());
}

void Scalar::check_owner(const Scalar& o) const {
  if (!field_.same_field(o.field_)) throw OwnerMismatch("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_owner(o);
  if (field_.kind_ == ExtensionKind::trivial) return Scalar(field_, a_ + o.a_, b_);
  return Scalar(field_, a_ + o.a_, b_ + o.b_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  if (field_.kind_ == ExtensionKind::trivial) return Scalar(field_, -a_, b_);
  return Scalar(field_, -a_, -b_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_owner(o);
  if (field_.kind_ == ExtensionKind::trivial) return Scalar(field_, a_ * o.a_, b_);
  Qp bd = b_ * o.b_;
  Qp scaled = field_.kind_ == ExtensionKind::ramified ? bd.shifted(1) : bd.times_int(field_.omega_sq_);
  return Scalar(field_, a_ * o.a_ + scaled, a_ * o.b_ + b_ * o.a_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PrecisionExhausted("inverse of a zero-to-precision value");
  if (field_.kind_ == ExtensionKind::trivial) return Scalar(field_, a_.inverse(), b_);
  Qp bb = b_ * b_;
  Qp scaled = field_.kind_ == ExtensionKind::ramified ? bb.shifted(1) : bb.times_int(field_.omega_sq_);
  Qp norm_inv = (a_ * a_ - scaled).inverse();
  return Scalar(field_, a_ * norm_inv, -(b_ * norm_inv));
}

Scalar Scalar::conj() const {
  if (field_.kind_ == ExtensionKind::trivial) return *this;
  return Scalar(field_, a_, -b_);
}

Scalar Scalar::truncated(int digits) const {
  switch (field_.kind_) {
    case ExtensionKind::trivial: return Scalar(field_, a_.truncated(digits), b_);
    case ExtensionKind::unramified: return Scalar(field_, a_.truncated(digits), b_.truncated(digits));
    case ExtensionKind::ramified: {
      const auto half_up = static_cast<int>(floor_div(digits + 1, 2));
      const auto half_down = static_cast<int>(floor_div(digits, 2));
      return Scalar(field_, a_.truncated(half_up), b_.truncated(half_down));
    }
  }
  return *this;
}

int Scalar::residue(int level) const {
  if (level >= precision()) throw PrecisionExhausted("residue beyond tracked precision");
  if (!is_zero() && raw_ord() < level) throw DomainError("residue requested below the valuation");
  return digit_at(level);
}

int Scalar::digit_at(int level) const {
  const int p = field_.p_;
  switch (field_.kind_) {
    case ExtensionKind::trivial: return a_.digit(level);
    case ExtensionKind::unramified: return a_.digit(level) + p * b_.digit(level);
    case ExtensionKind::ramified: {
      const auto half = static_cast<int>(floor_div(level, 2));
      return level - 2 * half == 0 ? a_.digit(half) : b_.digit(half);
    }
  }
  return 0;
}

std::vector<int> Scalar::digits() const {
  std::vector<int> out;
  if (is_zero()) return out;
  for (int level = raw_ord(); level < precision(); ++level) out.push_back(digit_at(level));
  return out;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "O(w^" << precision() << ")";
    return os.str();
  }
  os << "w^" << raw_ord() << "*[";
  auto ds = digits();
  for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
  os << "] + O(w^" << precision() << ")";
  return os.str();
}

bool agree(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

}  // namespace padiclab
