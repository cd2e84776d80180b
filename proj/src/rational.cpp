#include "hschur/rational.hpp"

#include "hschur/error.hpp"

namespace hschur {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedOperation: return "unsupported-operation";
    case ErrorKind::InvalidRadius: return "invalid-radius";
    case ErrorKind::FieldMismatch: return "field-mismatch";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::OddDimension: return "odd-dimension";
    case ErrorKind::WrongExperiment: return "wrong-experiment";
    case ErrorKind::OracleTooLarge: return "oracle-too-large";
    case ErrorKind::ConfigInvalid: return "config-invalid";
    case ErrorKind::Parse: return "parse-error";
  }
  return "error";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

long remove_factor(Integer& n, unsigned long p) {
  if (n == 0) return 0;
  Integer pz(p);
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

std::optional<long> padic_valuation(const Rational& q, unsigned long p) {
  if (q == 0) return std::nullopt;
  Integer num = q.get_num();
  Integer den = q.get_den();
  return remove_factor(num, p) - remove_factor(den, p);
}

std::optional<long> padic_valuation(const RationalVec& v, unsigned long p) {
  std::optional<long> best;
  for (const auto& x : v) {
    auto vx = padic_valuation(x, p);
    if (vx && (!best || *vx < *best)) best = vx;
  }
  return best;
}

Rational pow_p(unsigned long p, long e) {
  Integer base;
  mpz_ui_pow_ui(base.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(base);
  return Rational(Integer(1), base);
}

Rational padic_fractional_part(const Rational& q, unsigned long p) {
  Integer num = q.get_num();
  Integer den = q.get_den();
  long e = remove_factor(den, p);  // den = p^e * den'
  if (e == 0) return Rational(0);
  Integer pe;
  mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pe.get_mpz_t());
  Integer u = num * inv;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), pe.get_mpz_t());
  Rational r(u, pe);
  r.canonicalize();
  return r;
}

Rational padic_reduce(const Rational& q, unsigned long p, long k) {
  Rational scale = pow_p(p, k);
  Rational r = padic_fractional_part(q / scale, p) * scale;
  r.canonicalize();
  return r;
}

std::optional<long> padic_exponent_of_power(const Rational& q, unsigned long p) {
  if (q <= 0) return std::nullopt;
  auto v = padic_valuation(q, p);
  if (!v) return std::nullopt;
  if (q == pow_p(p, *v)) return v;
  return std::nullopt;
}

Rational frac01(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Rational dot(const RationalVec& x, const RationalVec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace hschur
