#include "hschur/heisenberg.hpp"

#include <cmath>

#include "hschur/kernels.hpp"

namespace hschur {

namespace {

bool padic_in_ball(const Rational& x, unsigned long p, long m) {
  auto v = padic_valuation(x, p);
  return !v || *v >= -m;
}

}  // namespace

FolnerBox folner_box(const FieldDesc& field, const ExactOrReal& r, int n) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "n must be positive");
  FolnerBox box{field, n, r};
  if (field.is_padic()) {
    box.exponent();
  } else if (!(to_double(r) > 0)) {
    throw Error(ErrorKind::InvalidRadius, "radius must be positive");
  }
  return box;
}

long FolnerBox::exponent() const {
  if (!field.is_padic()) throw Error(ErrorKind::UnsupportedOperation, "radius exponent on R");
  const auto* q = std::get_if<Rational>(&r);
  std::optional<long> e;
  if (q) e = padic_exponent_of_power(*q, field.p);
  if (!e) throw Error(ErrorKind::InvalidRadius, "p-adic radius must be a power of p");
  return *e;
}

ExactOrReal FolnerBox::measure() const {
  if (field.is_padic()) {
    const long m = exponent();
    return padic_ball_measure(field.p, n, m) * padic_ball_measure(field.p, n, m) *
           padic_ball_measure(field.p, 1, 2 * m);
  }
  const double rr = to_double(r);
  return std::pow(2 * rr, 2 * n) * (2 * rr * rr);
}

bool FolnerBox::contains(const PadicElement& g) const {
  const long m = exponent();
  for (const auto& x : g.a) {
    if (!padic_in_ball(x, field.p, m)) return false;
  }
  for (const auto& x : g.b) {
    if (!padic_in_ball(x, field.p, m)) return false;
  }
  return padic_in_ball(g.c, field.p, 2 * m);
}

bool FolnerBox::contains(const RealElement& g) const {
  const double rr = to_double(r);
  return RealBox{rr, rr, rr * rr}.contains(g);
}

bool RealBox::contains(const RealElement& g) const {
  if (degenerate) return false;
  for (double x : g.a) {
    if (std::abs(x) > ra) return false;
  }
  for (double x : g.b) {
    if (std::abs(x) > rb) return false;
  }
  return std::abs(g.c) <= rc;
}

double RealBox::measure(int n) const {
  if (degenerate) return 0.0;
  return std::pow(2 * ra, n) * std::pow(2 * rb, n) * (2 * rc);
}

bool ultrametric_symdiff_empty(unsigned long p, long m, long j) {
  if (!is_prime(p)) throw Error(ErrorKind::Parse, "p must be prime");
  return m >= j && 2 * m >= j;
}

std::optional<SymdiffWitness> find_symdiff_witness(unsigned long p, long m, long j, int n) {
  const FolnerBox F{FieldDesc::padic(p), n, pow_p(p, m)};
  const Rational kval = pow_p(p, -j);  // |kval| = p^j
  const std::vector<Rational> coords{Rational(0), kval, -kval};
  const std::vector<Rational> xcoords{Rational(0), pow_p(p, -m), -pow_p(p, -m)};

  auto elements = [n](const std::vector<Rational>& vals, bool full) {
    std::vector<PadicElement> out;
    const std::size_t base = vals.size();
    const int slots = full ? 2 * n + 1 : 3;
    std::size_t total = 1;
    for (int i = 0; i < slots; ++i) total *= base;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      PadicElement g = PadicElement::identity(n);
      if (full) {
        for (int i = 0; i < n; ++i, c /= base) g.a[i] = vals[c % base];
        for (int i = 0; i < n; ++i, c /= base) g.b[i] = vals[c % base];
      } else {
        g.a[0] = vals[c % base];
        c /= base;
        g.b[0] = vals[c % base];
        c /= base;
      }
      g.c = vals[c % base];
      out.push_back(std::move(g));
    }
    return out;
  };

  const auto gs = elements(coords, n <= 2);
  const auto xs = elements(xcoords, false);
  for (const auto& g1 : gs) {
    for (const auto& g2 : gs) {
      const auto g2i = inv(g2), g1i = inv(g1);
      for (const auto& x : xs) {
        if (F.contains(x) && !F.contains(mul(g2i, mul(x, g1)))) return SymdiffWitness{g1, g2, x, true};
        // x in g2^{-1} F g1 but not in F
        if (!F.contains(x) && F.contains(mul(g2, mul(x, g1i)))) return SymdiffWitness{g1, g2, x, false};
      }
    }
  }
  return std::nullopt;
}

Sandwich sandwich_boxes(double r, double k, int n) {
  if (!(r > 0) || k < 0) throw Error(ErrorKind::InvalidRadius, "need r > 0 and k >= 0");
  const double nd = n;
  Sandwich s;
  s.outer = {r + 2 * k, r + 2 * k, r * r + 2 * k * (nd * r + 1) + nd * k * k};
  s.inner = {r - 2 * k, r - 2 * k, r * r - 2 * k * (nd * r + 1) - nd * k * k};
  s.inner.degenerate = !(s.inner.ra > 0 && s.inner.rc > 0);
  if (k == 0) s.inner = s.outer = RealBox{r, r, r * r};
  return s;
}

double symdiff_ratio_bound(double r, double k, int n) {
  const auto s = sandwich_boxes(r, k, n);
  const double mf = RealBox{r, r, r * r}.measure(n);
  return (s.outer.measure(n) - s.inner.measure(n)) / mf;
}

MonteCarloEstimate symdiff_ratio_montecarlo(double r, double k, int n, const RealElement& g1,
                                            const RealElement& g2, std::uint64_t samples,
                                            std::uint64_t seed) {
  if (g1.n() != n || g2.n() != n) throw Error(ErrorKind::DimensionMismatch, "conjugators of wrong n");
  const auto box = sandwich_boxes(r, k, n).outer;
  const RealBox F{r, r, r * r};
  const auto g1i = inv(g1);
  const std::uint64_t per = 2 * n + 1;
  auto in_symdiff = [&](std::uint64_t i) {
    RealElement y = RealElement::identity(n);
    auto u = [&](std::uint64_t slot) { return 2 * kernels::counter_uniform(seed, i * per + slot) - 1; };
    for (int d = 0; d < n; ++d) y.a[d] = box.ra * u(d);
    for (int d = 0; d < n; ++d) y.b[d] = box.rb * u(n + d);
    y.c = box.rc * u(2 * n);
    // y in g2^{-1} F g1  <=>  g2 y g1^{-1} in F
    const bool in_conj = F.contains(mul(g2, mul(y, g1i)));
    return in_conj != F.contains(y);
  };
  MonteCarloEstimate est;
  est.samples = samples;
  est.hits = kernels::count_if_index(samples, in_symdiff);
  const double scale = box.measure(n) / F.measure(n);
  const double ph = samples ? static_cast<double>(est.hits) / static_cast<double>(samples) : 0.0;
  est.value = scale * ph;
  est.stderr_ = samples ? scale * std::sqrt(ph * (1 - ph) / static_cast<double>(samples)) : 0.0;
  return est;
}

}  // namespace hschur
