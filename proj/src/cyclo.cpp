#include "hschur/cyclo.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hschur/error.hpp"

namespace hschur {

namespace {

std::uint64_t ipow(unsigned long p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// theta = u / p^e with 0 <= u < p^e.
std::pair<std::uint64_t, int> split_phase(unsigned long p, const Rational& theta) {
  Rational t = frac01(theta);
  Integer den = t.get_den();
  int e = 0;
  while (den % p == 0) {
    den /= p;
    ++e;
  }
  if (den != 1) {
    throw Error(ErrorKind::UnsupportedOperation,
                "phase " + to_string(theta) + " is not a p-power root of unity for p=" +
                    std::to_string(p));
  }
  return {t.get_num().get_ui(), e};
}

}  // namespace

CycloNumber::CycloNumber(const Rational& q) {
  if (q != 0) terms_.emplace_back(0, q);
}

CycloNumber CycloNumber::root_of_unity(unsigned long p, const Rational& theta) {
  auto [u, e] = split_phase(p, theta);
  return from_terms(p, e, {{u, Rational(1)}});
}

CycloNumber CycloNumber::from_terms(unsigned long p, int level, std::vector<Term> terms) {
  if (level > 0 && !is_prime(p)) throw Error(ErrorKind::Parse, "cyclotomic level needs a prime");
  const std::uint64_t n = ipow(p, level);
  for (auto& t : terms) t.first %= n;
  CycloNumber c(level > 0 ? p : 0, level, std::move(terms));
  c.canonicalize();
  return c;
}

unsigned long CycloNumber::common_prime(unsigned long a, unsigned long b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw Error(ErrorKind::FieldMismatch, "cyclotomic values over different primes");
}

CycloNumber CycloNumber::promoted(unsigned long p, int k) const {
  if (k == k_) return CycloNumber(p, k, terms_);
  const std::uint64_t step = ipow(p, k - k_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.emplace_back(e * step, c);
  return CycloNumber(p, k, std::move(out));
}

void CycloNumber::canonicalize() {
  std::map<Exponent, Rational> acc;
  if (k_ == 0) {
    Rational s = 0;
    for (const auto& t : terms_) s += t.second;
    terms_.clear();
    if (s != 0) terms_.emplace_back(0, s);
    return;
  }
  for (auto& [e, c] : terms_) acc[e] += c;
  const std::uint64_t m = ipow(p_, k_ - 1);
  const std::uint64_t cutoff = ipow(p_, k_) - m;
  // zeta^e for e in the top lift class equals minus the sum of the other lifts.
  for (auto it = acc.lower_bound(cutoff); it != acc.end();) {
    const Exponent j = it->first - cutoff;
    const Rational c = it->second;
    it = acc.erase(it);
    if (c == 0) continue;
    for (unsigned long i = 0; i + 1 < p_; ++i) acc[j + i * m] -= c;
  }
  terms_.clear();
  for (auto& [e, c] : acc) {
    if (c != 0) terms_.emplace_back(e, c);
  }
  while (k_ > 0) {
    bool all_divisible = true;
    for (const auto& t : terms_) {
      if (t.first % p_ != 0) {
        all_divisible = false;
        break;
      }
    }
    if (!all_divisible) break;
    for (auto& t : terms_) t.first /= p_;
    --k_;
  }
}

Rational CycloNumber::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::UnsupportedOperation, "value is not rational");
  return terms_.empty() ? Rational(0) : terms_.front().second;
}

std::complex<double> CycloNumber::to_complex() const {
  const double n = static_cast<double>(ipow(p_ == 0 ? 1 : p_, k_));
  long double re = 0, im = 0;
  for (const auto& [e, c] : terms_) {
    const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(e) / n;
    const long double cd = c.get_d();
    re += cd * std::cos(ang);
    im += cd * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

CycloNumber CycloNumber::conj() const {
  if (k_ == 0) return *this;
  const std::uint64_t n = ipow(p_, k_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.emplace_back((n - e) % n, c);
  CycloNumber r(p_, k_, std::move(out));
  r.canonicalize();
  return r;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  if (o.is_zero()) return *this;
  const unsigned long p = common_prime(p_, o.p_);
  const int k = std::max(k_, o.k_);
  CycloNumber a = promoted(p, k);
  CycloNumber b = o.promoted(p, k);
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  a.p_ = k > 0 ? p : p_;
  a.canonicalize();
  *this = std::move(a);
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) { return *this += -o; }

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CycloNumber& CycloNumber::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    k_ = 0;
    return *this;
  }
  for (auto& t : terms_) t.second *= q;
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = CycloNumber();
  if (o.is_rational()) return *this *= o.rational_value();
  if (is_rational()) {
    Rational q = rational_value();
    *this = o;
    return *this *= q;
  }
  const unsigned long p = common_prime(p_, o.p_);
  const int k = std::max(k_, o.k_);
  const std::uint64_t n = ipow(p, k);
  CycloNumber a = promoted(p, k);
  CycloNumber b = o.promoted(p, k);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.emplace_back((ea + eb) % n, ca * cb);
  }
  CycloNumber r(p, k, std::move(out));
  r.canonicalize();
  return *this = std::move(r);
}

CycloNumber CycloNumber::times_root(unsigned long p, const Rational& theta) const {
  if (is_zero()) return *this;
  p = common_prime(p_, p);
  auto [u, e] = split_phase(p, theta);
  if (u == 0) return *this;
  const int k = std::max(k_, e);
  const std::uint64_t n = ipow(p, k);
  const std::uint64_t shift = u * ipow(p, k - e);
  CycloNumber a = promoted(p, k);
  for (auto& t : a.terms_) t.first = (t.first + shift) % n;
  a.canonicalize();
  return a;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.k_ != b.k_) return false;
  if (a.k_ > 0 && a.p_ != b.p_) return false;
  return a.terms_ == b.terms_;
}

std::string CycloNumber::to_string() const {
  if (is_rational()) return hschur::to_string(rational_value());
  std::ostringstream os;
  os << "[" << p_ << "^" << k_ << "]";
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? " " : " + ") << hschur::to_string(c) << "*z^" << e;
    first = false;
  }
  return os.str();
}

}  // namespace hschur
