#pragma once

#include <optional>
#include <vector>

#include "hschur/cyclo.hpp"
#include "hschur/rational.hpp"

namespace hschur {

/// One summand x -> coeff * chi(freq . x) * 1_{center + p^scale Z_p}(x), where the
/// support is the product of the coordinate balls center_i + p^{scale_i} Z_p.
struct PadicTerm {
  CycloNumber coeff;
  RationalVec center;
  std::vector<long> scale;
  RationalVec freq;
};

/// Compactly supported locally constant function on Q_p^l, kept as a finite
/// sum of ball-indicator-times-character terms. Every operation below stays in
/// this class in closed form; all arithmetic is exact.
///
/// Terms are normalized on construction (center reduced mod the ball, freq
/// reduced mod the dual ball with the phase folded into coeff, equal keys
/// merged, zero terms dropped). `canonical()` additionally refines every term to
/// the common per-coordinate scale, where the representation is unique; the
/// zero function canonicalizes to no terms.
class PadicBallChar {
 public:
  PadicBallChar(unsigned long p, int dim);
  PadicBallChar(unsigned long p, int dim, std::vector<PadicTerm> terms);

  /// coeff * 1_{center + p^scale Z_p^l}, same scale in every coordinate.
  static PadicBallChar indicator(unsigned long p, RationalVec center, long scale,
                                 CycloNumber coeff = CycloNumber(1));

  unsigned long prime() const { return p_; }
  int dim() const { return dim_; }
  const std::vector<PadicTerm>& terms() const { return terms_; }

  /// Pointwise value f(x).
  CycloNumber operator()(const RationalVec& x) const;

  PadicBallChar canonical() const;
  bool is_zero() const { return canonical().terms_.empty(); }

  /// Smallest R with supp f inside the sup-norm ball B(p^R); nullopt for f == 0.
  std::optional<long> support_exponent() const;
  /// A scale L such that f is constant on every coset of p^L Z_p^l.
  long constancy_scale() const;

  PadicBallChar& operator+=(const PadicBallChar& o);
  PadicBallChar& operator*=(const CycloNumber& c);
  friend PadicBallChar operator+(PadicBallChar a, const PadicBallChar& b) { return a += b; }
  friend PadicBallChar operator-(const PadicBallChar& a, const PadicBallChar& b);
  friend PadicBallChar operator*(PadicBallChar a, const CycloNumber& c) { return a *= c; }

  /// Same function (exact comparison through the canonical form of a - b).
  friend bool operator==(const PadicBallChar& a, const PadicBallChar& b);

 private:
  void normalize();

  unsigned long p_;
  int dim_;
  std::vector<PadicTerm> terms_;
};

CycloNumber inner(const PadicBallChar& f, const PadicBallChar& g);
/// Real and nonnegative, but may be irrational (e.g. |1 + zeta_8|^2).
CycloNumber norm_sq(const PadicBallChar& f);

PadicBallChar translate(const PadicBallChar& f, const RationalVec& a);
PadicBallChar modulate(const PadicBallChar& f, const RationalVec& xi);
PadicBallChar conj(const PadicBallChar& f);
/// f^(y) = int chi(-y.x) f(x) dx over all coordinates.
PadicBallChar fourier(const PadicBallChar& f);
/// Fourier transform in coordinates [first, first + count) only.
PadicBallChar partial_fourier(const PadicBallChar& f, int first, int count);
PadicBallChar tensor(const PadicBallChar& f, const PadicBallChar& g);
/// phi(x, y) -> phi(y, x) on Q_p^{2l}.
PadicBallChar flip(const PadicBallChar& phi);
/// V phi(a, b) = int chi(-x.b) phi(x - a, x) dx.
PadicBallChar fourier_wigner(const PadicBallChar& phi);
/// V' phi(a, b) = int chi(-x.b) phi(a - x, x) dx.
PadicBallChar fourier_wigner_prime(const PadicBallChar& phi);
/// x -> f(x') where x'_i = t x_i for i in [first, first + count), t != 0.
PadicBallChar dilate(const PadicBallChar& f, int first, int count, const Rational& t);
/// f * 1_{B(p^m)^l}.
PadicBallChar restrict_to_ball(const PadicBallChar& f, long m);
/// x -> phi(x + c1, x + c2) on Q_p^n for phi on Q_p^{2n}.
PadicBallChar diagonal(const PadicBallChar& phi, const RationalVec& c1, const RationalVec& c2);
/// Split every coordinate ball of every term into balls of scale >= min_scale.
PadicBallChar refine(const PadicBallChar& f, long min_scale);

}  // namespace hschur
