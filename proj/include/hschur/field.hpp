#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "hschur/cyclo.hpp"
#include "hschur/rational.hpp"

namespace hschur {

enum class FieldKind { Real, Padic };

/// Which local field K is active: the reals, or Q_p for a prime p.
struct FieldDesc {
  FieldKind kind = FieldKind::Real;
  unsigned long p = 0;

  static FieldDesc real() { return {FieldKind::Real, 0}; }
  static FieldDesc padic(unsigned long p);

  bool is_padic() const { return kind == FieldKind::Padic; }
  std::string name() const;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

/// A nonnegative quantity that is exact on Q_p and floating on R.
using ExactOrReal = std::variant<Rational, double>;
double to_double(const ExactOrReal& v);
std::string to_string(const ExactOrReal& v);

/// A scalar of the active field: exact rational on Q_p, double on R.
class LocalScalar {
 public:
  LocalScalar(FieldDesc field, Rational value);
  LocalScalar(double value) : field_(FieldDesc::real()), value_(value) {}  // NOLINT

  const FieldDesc& field() const { return field_; }
  const Rational& exact() const;  // throws on Real
  double real() const;            // throws on Padic

  friend LocalScalar operator+(const LocalScalar& a, const LocalScalar& b);
  friend LocalScalar operator*(const LocalScalar& a, const LocalScalar& b);
  friend LocalScalar operator-(const LocalScalar& a);

 private:
  FieldDesc field_;
  std::variant<Rational, double> value_;
};

/// e^{2 pi i theta}: exact rational theta in [0,1) on Q_p, floating angle on R.
class UnitPhase {
 public:
  UnitPhase() : theta_(Rational(0)) {}
  explicit UnitPhase(Rational theta);
  explicit UnitPhase(double theta) : theta_(theta) {}

  bool is_exact() const { return std::holds_alternative<Rational>(theta_); }
  const Rational& exact_theta() const { return std::get<Rational>(theta_); }
  double theta() const;
  std::complex<double> value() const;
  /// Exact value as a cyclotomic number (p-adic path only).
  CycloNumber cyclo(unsigned long p) const;

  friend UnitPhase operator*(const UnitPhase& a, const UnitPhase& b);
  friend bool operator==(const UnitPhase& a, const UnitPhase& b);

 private:
  std::variant<Rational, double> theta_;
};

/// x = p^v u with |u|_p = 1; nullopt means +infinity (x == 0).
std::optional<long> valuation(const LocalScalar& x);

/// |x| on R, p^{-v(x)} on Q_p (an exact rational).
ExactOrReal abs(const LocalScalar& x);

/// The fixed additive character: e^{2 pi i x} on R, e^{2 pi i {x}_p} on Q_p.
UnitPhase character(const LocalScalar& x);

/// Haar measure of the l-dimensional sup-norm ball of radius r:
/// (2r)^l on R, r^l on Q_p (r must be p^k; mu(Z_p) = 1).
ExactOrReal ball_measure(const FieldDesc& field, int l, const ExactOrReal& radius);

/// p^{k l}: measure of the ball of radius p^k in Q_p^l.
Rational padic_ball_measure(unsigned long p, int l, long radius_exponent);

/// Integral of chi(y x) over the ball B(p^k) of Q_p: p^k if |y| <= p^{-k}, else 0.
Rational char_ball_integral(const FieldDesc& field, const Rational& y, long k);

/// Real analogue: integral of e^{2 pi i y x} over [-r, r].
double real_char_ball_integral(double y, double r);

/// mod_K(t) = |t| for K = R or Q_p.
ExactOrReal modulus(const LocalScalar& t);

}  // namespace hschur
