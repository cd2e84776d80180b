#include "hschur/field.hpp"

#include <cmath>
#include <numbers>

#include "hschur/error.hpp"

namespace hschur {

FieldDesc FieldDesc::padic(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorKind::Parse, "p must be prime, got " + std::to_string(p));
  return {FieldKind::Padic, p};
}

std::string FieldDesc::name() const {
  return is_padic() ? "Q_" + std::to_string(p) : std::string("R");
}

double to_double(const ExactOrReal& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return q->get_d();
  return std::get<double>(v);
}

std::string to_string(const ExactOrReal& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return to_string(*q);
  return std::to_string(std::get<double>(v));
}

LocalScalar::LocalScalar(FieldDesc field, Rational value) : field_(field), value_(std::move(value)) {
  if (!field_.is_padic()) value_ = std::get<Rational>(value_).get_d();
}

const Rational& LocalScalar::exact() const {
  if (!field_.is_padic()) throw Error(ErrorKind::UnsupportedOperation, "real scalar has no exact value");
  return std::get<Rational>(value_);
}

double LocalScalar::real() const {
  if (field_.is_padic()) throw Error(ErrorKind::UnsupportedOperation, "p-adic scalar is not real");
  return std::get<double>(value_);
}

namespace {

void require_same(const LocalScalar& a, const LocalScalar& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "scalars from different fields");
}

}  // namespace

LocalScalar operator+(const LocalScalar& a, const LocalScalar& b) {
  require_same(a, b);
  if (a.field().is_padic()) return LocalScalar(a.field(), a.exact() + b.exact());
  return LocalScalar(a.real() + b.real());
}

LocalScalar operator*(const LocalScalar& a, const LocalScalar& b) {
  require_same(a, b);
  if (a.field().is_padic()) return LocalScalar(a.field(), a.exact() * b.exact());
  return LocalScalar(a.real() * b.real());
}

LocalScalar operator-(const LocalScalar& a) {
  if (a.field().is_padic()) return LocalScalar(a.field(), -a.exact());
  return LocalScalar(-a.real());
}

UnitPhase::UnitPhase(Rational theta) : theta_(frac01(theta)) {}

double UnitPhase::theta() const {
  if (is_exact()) return exact_theta().get_d();
  return std::get<double>(theta_);
}

std::complex<double> UnitPhase::value() const {
  if (is_exact()) {
    const Rational& t = exact_theta();
    // Quarter turns come out exact so trivial examples compare cleanly.
    if (t == 0) return {1.0, 0.0};
    if (t == Rational(1, 2)) return {-1.0, 0.0};
    if (t == Rational(1, 4)) return {0.0, 1.0};
    if (t == Rational(3, 4)) return {0.0, -1.0};
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * theta());
}

CycloNumber UnitPhase::cyclo(unsigned long p) const {
  if (!is_exact()) throw Error(ErrorKind::UnsupportedOperation, "floating phase has no exact value");
  return CycloNumber::root_of_unity(p, exact_theta());
}

UnitPhase operator*(const UnitPhase& a, const UnitPhase& b) {
  if (a.is_exact() && b.is_exact()) return UnitPhase(a.exact_theta() + b.exact_theta());
  double t = a.theta() + b.theta();
  return UnitPhase(t - std::floor(t));
}

bool operator==(const UnitPhase& a, const UnitPhase& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_theta() == b.exact_theta();
  return a.theta() == b.theta();
}

std::optional<long> valuation(const LocalScalar& x) {
  if (!x.field().is_padic()) throw Error(ErrorKind::UnsupportedOperation, "valuation on R");
  return padic_valuation(x.exact(), x.field().p);
}

ExactOrReal abs(const LocalScalar& x) {
  if (!x.field().is_padic()) return std::abs(x.real());
  auto v = valuation(x);
  if (!v) return Rational(0);
  return pow_p(x.field().p, -*v);
}

UnitPhase character(const LocalScalar& x) {
  if (x.field().is_padic()) return UnitPhase(padic_fractional_part(x.exact(), x.field().p));
  const double t = x.real();
  // A rational-looking real angle still goes through the floating path.
  return UnitPhase(t - std::floor(t));
}

Rational padic_ball_measure(unsigned long p, int l, long radius_exponent) {
  return pow_p(p, radius_exponent * l);
}

ExactOrReal ball_measure(const FieldDesc& field, int l, const ExactOrReal& radius) {
  if (!field.is_padic()) {
    const double r = to_double(radius);
    if (!(r >= 0)) throw Error(ErrorKind::InvalidRadius, "negative radius");
    return std::pow(2.0 * r, l);
  }
  const auto* q = std::get_if<Rational>(&radius);
  if (q == nullptr) throw Error(ErrorKind::InvalidRadius, "p-adic radius must be exact");
  auto e = padic_exponent_of_power(*q, field.p);
  if (!e) {
    throw Error(ErrorKind::InvalidRadius, "p-adic radius " + to_string(*q) + " is not a power of " +
                                              std::to_string(field.p));
  }
  return padic_ball_measure(field.p, l, *e);
}

Rational char_ball_integral(const FieldDesc& field, const Rational& y, long k) {
  if (!field.is_padic()) throw Error(ErrorKind::UnsupportedOperation, "char_ball_integral on R");
  auto v = padic_valuation(y, field.p);
  // |y| <= p^{-k}  <=>  v(y) >= k
  if (!v || *v >= k) return pow_p(field.p, k);
  return Rational(0);
}

double real_char_ball_integral(double y, double r) {
  if (y == 0.0) return 2.0 * r;
  return std::sin(2.0 * std::numbers::pi * y * r) / (std::numbers::pi * y);
}

ExactOrReal modulus(const LocalScalar& t) { return abs(t); }

}  // namespace hschur
