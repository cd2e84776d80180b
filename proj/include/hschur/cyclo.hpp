#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hschur/rational.hpp"

namespace hschur {

/// Exact element of the cyclotomic field Q(zeta_{p^k}).
///
/// Stored sparsely in the power basis {zeta^e : 0 <= e < p^k - p^(k-1)} at the
/// smallest level k that holds the value. With this canonical form two values
/// are equal iff their (p, k, terms) agree, so the zero value has no terms and
/// a rational value sits at level 0. Level 0 values carry p == 0 until they
/// meet a value of positive level.
class CycloNumber {
 public:
  using Exponent = std::uint64_t;
  using Term = std::pair<Exponent, Rational>;

  CycloNumber() = default;
  CycloNumber(const Rational& q);  // NOLINT(google-explicit-constructor)
  CycloNumber(long q) : CycloNumber(Rational(q)) {}  // NOLINT

  /// zeta_{p^k}^theta-style unit e^{2 pi i theta}; theta must have a p-power
  /// denominator and is taken mod 1.
  static CycloNumber root_of_unity(unsigned long p, const Rational& theta);

  /// Build from raw (exponent, coefficient) pairs at level p^k; exponents are
  /// reduced mod p^k and the result canonicalized.
  static CycloNumber from_terms(unsigned long p, int level, std::vector<Term> terms);

  unsigned long prime() const { return p_; }
  int level() const { return k_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return k_ == 0; }
  /// Throws unless is_rational().
  Rational rational_value() const;

  std::complex<double> to_complex() const;
  CycloNumber conj() const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator*=(const Rational& q);
  CycloNumber operator-() const;

  /// Multiply by e^{2 pi i theta} (theta with p-power denominator) in O(terms).
  CycloNumber times_root(unsigned long p, const Rational& theta) const;

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator*(CycloNumber a, const Rational& q) { return a *= q; }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  /// "q" for rationals, otherwise "[p^k] c0*z^e0 + ..." (diagnostic only).
  std::string to_string() const;

 private:
  CycloNumber(unsigned long p, int k, std::vector<Term> terms)
      : p_(p), k_(k), terms_(std::move(terms)) {}

  static unsigned long common_prime(unsigned long a, unsigned long b);
  CycloNumber promoted(unsigned long p, int k) const;
  void canonicalize();

  unsigned long p_ = 0;
  int k_ = 0;
  std::vector<Term> terms_;
};

}  // namespace hschur
