#include "hschur/padic_function.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "hschur/error.hpp"

namespace hschur {

namespace {

struct TermKey {
  std::vector<long> scale;
  RationalVec center;
  RationalVec freq;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.scale != b.scale) return a.scale < b.scale;
    for (std::size_t i = 0; i < a.center.size(); ++i) {
      if (int c = cmp(a.center[i], b.center[i])) return c < 0;
    }
    for (std::size_t i = 0; i < a.freq.size(); ++i) {
      if (int c = cmp(a.freq[i], b.freq[i])) return c < 0;
    }
    return false;
  }
};

void check_dim(const PadicTerm& t, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  if (t.center.size() != d || t.scale.size() != d || t.freq.size() != d) {
    throw Error(ErrorKind::DimensionMismatch, "term arity differs from function dimension");
  }
}

void require_compatible(const PadicBallChar& f, const PadicBallChar& g) {
  if (f.prime() != g.prime()) throw Error(ErrorKind::FieldMismatch, "functions over different Q_p");
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "functions of different dimension");
}

// Append the refinement of `t` to scales `target` (coordinate-wise >= t.scale).
void refine_term(const PadicTerm& t, const std::vector<long>& target, unsigned long p,
                 std::vector<PadicTerm>& out) {
  std::vector<PadicTerm> cur{t};
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] <= t.scale[i]) continue;
    const Rational step = pow_p(p, t.scale[i]);
    unsigned long n = 1;
    for (long e = t.scale[i]; e < target[i]; ++e) n *= p;
    std::vector<PadicTerm> next;
    next.reserve(cur.size() * n);
    for (const auto& c : cur) {
      for (unsigned long j = 0; j < n; ++j) {
        PadicTerm child = c;
        child.center[i] = c.center[i] + step * Rational(static_cast<long>(j));
        child.scale[i] = target[i];
        next.push_back(std::move(child));
      }
    }
    cur = std::move(next);
  }
  for (auto& c : cur) out.push_back(std::move(c));
}

}  // namespace

PadicBallChar::PadicBallChar(unsigned long p, int dim) : p_(p), dim_(dim) {
  if (!is_prime(p)) throw Error(ErrorKind::Parse, "p must be prime");
  if (dim < 0) throw Error(ErrorKind::DimensionMismatch, "negative dimension");
}

PadicBallChar::PadicBallChar(unsigned long p, int dim, std::vector<PadicTerm> terms)
    : PadicBallChar(p, dim) {
  for (const auto& t : terms) check_dim(t, dim);
  terms_ = std::move(terms);
  normalize();
}

PadicBallChar PadicBallChar::indicator(unsigned long p, RationalVec center, long scale,
                                       CycloNumber coeff) {
  const int dim = static_cast<int>(center.size());
  PadicTerm t{std::move(coeff), std::move(center), std::vector<long>(dim, scale),
              RationalVec(dim, Rational(0))};
  return PadicBallChar(p, dim, {std::move(t)});
}

void PadicBallChar::normalize() {
  std::map<TermKey, CycloNumber> merged;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    TermKey key{t.scale, RationalVec(dim_), RationalVec(dim_)};
    Rational phase = 0;
    for (int i = 0; i < dim_; ++i) {
      key.center[i] = padic_reduce(t.center[i], p_, t.scale[i]);
      key.freq[i] = padic_reduce(t.freq[i], p_, -t.scale[i]);
      // chi((xi - xi') x) is the constant chi((xi - xi') c) on the ball.
      phase += (t.freq[i] - key.freq[i]) * key.center[i];
    }
    CycloNumber c = t.coeff.times_root(p_, padic_fractional_part(phase, p_));
    merged[std::move(key)] += c;
  }
  terms_.clear();
  for (auto& [key, c] : merged) {
    if (c.is_zero()) continue;
    terms_.push_back(PadicTerm{std::move(c), key.center, key.scale, key.freq});
  }
}

CycloNumber PadicBallChar::operator()(const RationalVec& x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw Error(ErrorKind::DimensionMismatch, "evaluation point of wrong dimension");
  }
  CycloNumber sum;
  for (const auto& t : terms_) {
    bool inside = true;
    for (int i = 0; i < dim_ && inside; ++i) {
      auto v = padic_valuation(x[i] - t.center[i], p_);
      inside = !v || *v >= t.scale[i];
    }
    if (!inside) continue;
    sum += t.coeff.times_root(p_, padic_fractional_part(dot(t.freq, x), p_));
  }
  return sum;
}

PadicBallChar PadicBallChar::canonical() const {
  if (terms_.empty()) return *this;
  std::vector<long> target(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    target[i] = terms_.front().scale[i];
    for (const auto& t : terms_) target[i] = std::max(target[i], t.scale[i]);
  }
  std::vector<PadicTerm> refined;
  for (const auto& t : terms_) refine_term(t, target, p_, refined);
  return PadicBallChar(p_, dim_, std::move(refined));
}

std::optional<long> PadicBallChar::support_exponent() const {
  std::optional<long> best;
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      long r = -t.scale[i];
      if (auto v = padic_valuation(t.center[i], p_)) r = std::max(r, -*v);
      if (!best || r > *best) best = r;
    }
  }
  return best;
}

long PadicBallChar::constancy_scale() const {
  std::optional<long> best;
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      long s = t.scale[i];
      if (auto v = padic_valuation(t.freq[i], p_)) s = std::max(s, -*v);
      if (!best || s > *best) best = s;
    }
  }
  return best.value_or(0);
}

PadicBallChar& PadicBallChar::operator+=(const PadicBallChar& o) {
  require_compatible(*this, o);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

PadicBallChar& PadicBallChar::operator*=(const CycloNumber& c) {
  for (auto& t : terms_) t.coeff *= c;
  normalize();
  return *this;
}

PadicBallChar operator-(const PadicBallChar& a, const PadicBallChar& b) {
  return a + b * CycloNumber(-1);
}

bool operator==(const PadicBallChar& a, const PadicBallChar& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim()) return false;
  return (a - b).is_zero();
}

CycloNumber inner(const PadicBallChar& f, const PadicBallChar& g) {
  require_compatible(f, g);
  const unsigned long p = f.prime();
  const int dim = f.dim();
  std::vector<CycloNumber> gconj;
  gconj.reserve(g.terms().size());
  for (const auto& t : g.terms()) gconj.push_back(t.coeff.conj());

  CycloNumber sum;
  for (const auto& s : f.terms()) {
    for (std::size_t j = 0; j < g.terms().size(); ++j) {
      const auto& t = g.terms()[j];
      long total_scale = 0;
      Rational phase = 0;
      bool nonzero = true;
      for (int i = 0; i < dim && nonzero; ++i) {
        // Balls are nested or disjoint; the intersection is the smaller one.
        const bool s_big = s.scale[i] <= t.scale[i];
        const long big_scale = s_big ? s.scale[i] : t.scale[i];
        const Rational& small_center = s_big ? t.center[i] : s.center[i];
        const long small_scale = s_big ? t.scale[i] : s.scale[i];
        auto v = padic_valuation(s.center[i] - t.center[i], p);
        if (v && *v < big_scale) {
          nonzero = false;
          break;
        }
        const Rational y = s.freq[i] - t.freq[i];
        auto vy = padic_valuation(y, p);
        if (vy && *vy < -small_scale) {
          nonzero = false;
          break;
        }
        total_scale += small_scale;
        phase += y * small_center;
      }
      if (!nonzero) continue;
      CycloNumber term = s.coeff * gconj[j];
      term *= pow_p(p, -total_scale);
      sum += term.times_root(p, padic_fractional_part(phase, p));
    }
  }
  return sum;
}

CycloNumber norm_sq(const PadicBallChar& f) { return inner(f, f); }

PadicBallChar translate(const PadicBallChar& f, const RationalVec& a) {
  if (a.size() != static_cast<std::size_t>(f.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "translation vector of wrong dimension");
  }
  std::vector<PadicTerm> out = f.terms();
  for (auto& t : out) {
    for (int i = 0; i < f.dim(); ++i) t.center[i] += a[i];
    t.coeff = t.coeff.times_root(f.prime(), padic_fractional_part(-dot(t.freq, a), f.prime()));
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar modulate(const PadicBallChar& f, const RationalVec& xi) {
  if (xi.size() != static_cast<std::size_t>(f.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "frequency vector of wrong dimension");
  }
  std::vector<PadicTerm> out = f.terms();
  for (auto& t : out) {
    for (int i = 0; i < f.dim(); ++i) t.freq[i] += xi[i];
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar conj(const PadicBallChar& f) {
  std::vector<PadicTerm> out = f.terms();
  for (auto& t : out) {
    t.coeff = t.coeff.conj();
    for (auto& x : t.freq) x = -x;
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar partial_fourier(const PadicBallChar& f, int first, int count) {
  if (first < 0 || count < 0 || first + count > f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "partial Fourier block out of range");
  }
  const unsigned long p = f.prime();
  std::vector<PadicTerm> out = f.terms();
  for (auto& t : out) {
    long total_scale = 0;
    Rational phase = 0;
    for (int i = first; i < first + count; ++i) {
      // a chi(xi x) 1_{c + p^k Z}  ->  a p^{-k} chi(xi c) chi(-c y) 1_{xi + p^{-k} Z}
      total_scale += t.scale[i];
      phase += t.freq[i] * t.center[i];
      Rational c = t.center[i];
      t.center[i] = t.freq[i];
      t.freq[i] = -c;
      t.scale[i] = -t.scale[i];
    }
    t.coeff *= pow_p(p, -total_scale);
    t.coeff = t.coeff.times_root(p, padic_fractional_part(phase, p));
  }
  return PadicBallChar(p, f.dim(), std::move(out));
}

PadicBallChar fourier(const PadicBallChar& f) { return partial_fourier(f, 0, f.dim()); }

PadicBallChar tensor(const PadicBallChar& f, const PadicBallChar& g) {
  if (f.prime() != g.prime()) throw Error(ErrorKind::FieldMismatch, "tensor over different Q_p");
  std::vector<PadicTerm> out;
  out.reserve(f.terms().size() * g.terms().size());
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) {
      PadicTerm u{s.coeff * t.coeff, s.center, s.scale, s.freq};
      u.center.insert(u.center.end(), t.center.begin(), t.center.end());
      u.scale.insert(u.scale.end(), t.scale.begin(), t.scale.end());
      u.freq.insert(u.freq.end(), t.freq.begin(), t.freq.end());
      out.push_back(std::move(u));
    }
  }
  return PadicBallChar(f.prime(), f.dim() + g.dim(), std::move(out));
}

PadicBallChar flip(const PadicBallChar& phi) {
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "flip needs an even dimension");
  const int n = phi.dim() / 2;
  std::vector<PadicTerm> out = phi.terms();
  for (auto& t : out) {
    std::rotate(t.center.begin(), t.center.begin() + n, t.center.end());
    std::rotate(t.scale.begin(), t.scale.begin() + n, t.scale.end());
    std::rotate(t.freq.begin(), t.freq.begin() + n, t.freq.end());
  }
  return PadicBallChar(phi.prime(), phi.dim(), std::move(out));
}

namespace {

// psi(a, x) = phi(sign_a * a + sign_x * x ... ) for the two Fourier-Wigner shears:
//   V : psi(a, x) = phi(x - a, x)      V': psi(a, x) = phi(a - x, x)
PadicBallChar shear(const PadicBallChar& phi, bool prime_variant) {
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "Fourier-Wigner needs dimension 2n");
  const int n = phi.dim() / 2;
  const unsigned long p = phi.prime();
  // The u-ball must not be finer than the x-ball for the support to stay a product.
  std::vector<PadicTerm> refined;
  for (const auto& t : phi.terms()) {
    std::vector<long> target = t.scale;
    for (int i = 0; i < n; ++i) target[n + i] = std::max(t.scale[n + i], t.scale[i]);
    refine_term(t, target, p, refined);
  }
  for (auto& t : refined) {
    for (int i = 0; i < n; ++i) {
      const Rational c1 = t.center[i], c2 = t.center[n + i];
      const Rational xi1 = t.freq[i], xi2 = t.freq[n + i];
      if (prime_variant) {
        t.center[i] = c1 + c2;
        t.freq[i] = xi1;
        t.freq[n + i] = xi2 - xi1;
      } else {
        t.center[i] = c2 - c1;
        t.freq[i] = -xi1;
        t.freq[n + i] = xi1 + xi2;
      }
    }
  }
  return PadicBallChar(p, phi.dim(), std::move(refined));
}

}  // namespace

PadicBallChar fourier_wigner(const PadicBallChar& phi) {
  const int n = phi.dim() / 2;
  return partial_fourier(shear(phi, false), n, n);
}

PadicBallChar fourier_wigner_prime(const PadicBallChar& phi) {
  const int n = phi.dim() / 2;
  return partial_fourier(shear(phi, true), n, n);
}

PadicBallChar dilate(const PadicBallChar& f, int first, int count, const Rational& t) {
  if (t == 0) throw Error(ErrorKind::UnsupportedOperation, "dilation by zero");
  if (first < 0 || count < 0 || first + count > f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dilation block out of range");
  }
  const long vt = *padic_valuation(t, f.prime());
  std::vector<PadicTerm> out = f.terms();
  for (auto& term : out) {
    for (int i = first; i < first + count; ++i) {
      // 1_{c + p^k Z}(t b) = 1_{c/t + p^{k - v(t)} Z}(b); chi(xi t b)
      term.center[i] /= t;
      term.scale[i] -= vt;
      term.freq[i] *= t;
    }
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar restrict_to_ball(const PadicBallChar& f, long m) {
  std::vector<PadicTerm> out;
  for (const auto& t : f.terms()) {
    PadicTerm u = t;
    bool keep = true;
    for (int i = 0; i < f.dim() && keep; ++i) {
      auto v = padic_valuation(t.center[i], f.prime());
      if (t.scale[i] >= -m) {
        keep = !v || *v >= -m;
      } else {
        keep = !v || *v >= t.scale[i];
        u.center[i] = 0;
        u.scale[i] = -m;
      }
    }
    if (keep) out.push_back(std::move(u));
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar refine(const PadicBallChar& f, long min_scale) {
  std::vector<PadicTerm> out;
  for (const auto& t : f.terms()) {
    std::vector<long> target = t.scale;
    for (auto& s : target) s = std::max(s, min_scale);
    refine_term(t, target, f.prime(), out);
  }
  return PadicBallChar(f.prime(), f.dim(), std::move(out));
}

PadicBallChar diagonal(const PadicBallChar& phi, const RationalVec& c1, const RationalVec& c2) {
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "diagonal needs dimension 2n");
  const int n = phi.dim() / 2;
  if (c1.size() != static_cast<std::size_t>(n) || c2.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "diagonal shift of wrong dimension");
  }
  const unsigned long p = phi.prime();
  std::vector<PadicTerm> out;
  for (const auto& t : phi.terms()) {
    PadicTerm u{t.coeff, RationalVec(n), std::vector<long>(n), RationalVec(n)};
    Rational phase = 0;
    bool empty = false;
    for (int i = 0; i < n && !empty; ++i) {
      const Rational e1 = t.center[i] - c1[i], e2 = t.center[n + i] - c2[i];
      const long k1 = t.scale[i], k2 = t.scale[n + i];
      auto v = padic_valuation(e1 - e2, p);
      if (v && *v < std::min(k1, k2)) {
        empty = true;
        break;
      }
      u.center[i] = k1 >= k2 ? e1 : e2;
      u.scale[i] = std::max(k1, k2);
      u.freq[i] = t.freq[i] + t.freq[n + i];
      phase += t.freq[i] * c1[i] + t.freq[n + i] * c2[i];
    }
    if (empty) continue;
    u.coeff = u.coeff.times_root(p, padic_fractional_part(phase, p));
    out.push_back(std::move(u));
  }
  return PadicBallChar(p, n, std::move(out));
}

}  // namespace hschur
