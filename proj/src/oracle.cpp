// Independent reference values for the experiments: pointwise coset enumeration
// on Q_p and direct half-spacing quadrature on R. Nothing here uses the
// Fourier-Wigner closed forms or the kernels.

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "experiments_internal.hpp"
#include "hschur/error.hpp"

namespace hschur {

std::size_t oracle_cap_cells() {
  double mb = 512;
  if (const char* env = std::getenv("HSCHUR_CAP_MB")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) mb = v;
  }
  return static_cast<std::size_t>(mb * 1e6 / 64.0);
}

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void charge(double cells, const std::string& what) {
  if (cells > static_cast<double>(oracle_cap_cells())) {
    throw Error(ErrorKind::OracleTooLarge, what + " needs about " + std::to_string(static_cast<long long>(cells)) +
                                               " cells (cap " + std::to_string(oracle_cap_cells()) +
                                               "; raise HSCHUR_CAP_MB)");
  }
}

double ncells(unsigned long p, int n, long R, long s) {
  return std::pow(static_cast<double>(p), static_cast<double>(n) * static_cast<double>(std::max(0L, R + s)));
}

long val_or(const Rational& x, unsigned long p, long dflt) {
  auto v = padic_valuation(x, p);
  return v ? *v : dflt;
}

constexpr long kFar = std::numeric_limits<long>::max() / 8;

RationalVec sub(const RationalVec& x, const RationalVec& y) {
  RationalVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

CycloNumber chi(unsigned long p, const Rational& x) {
  return CycloNumber::root_of_unity(p, padic_fractional_part(x, p));
}

// --- Q_p -------------------------------------------------------------------

struct PadicPair {
  Rational t;
  const PadicBallChar* f1;
  const PadicBallChar* f2;
};

struct CellGrid {
  std::vector<RationalVec> a, b;
  Rational mu_a, mu_b;
};

/// M(a, b) = int chi(-t b.x) f1(x - a) conj(f2(x)) dx on the given (a, b) cells.
std::vector<CycloNumber> pointwise_surface(const PadicPair& pr, const CellGrid& g, long m) {
  const unsigned long p = pr.f1->prime();
  const int n = pr.f1->dim();
  std::vector<CycloNumber> out(g.a.size() * g.b.size());
  const auto R2 = pr.f2->support_exponent();
  if (!R2 || !pr.f1->support_exponent()) return out;
  const long vt = val_or(pr.t, p, kFar);
  const long Kx = std::max({pr.f1->constancy_scale(), pr.f2->constancy_scale(), m - vt, -*R2});
  const auto xs = detail::cell_reps(p, n, *R2, Kx);
  const Rational mu_x = pow_p(p, -n * Kx);
  std::vector<CycloNumber> f2c;
  f2c.reserve(xs.size());
  for (const auto& x : xs) f2c.push_back((*pr.f2)(x).conj());
  for (std::size_t ia = 0; ia < g.a.size(); ++ia) {
    std::vector<CycloNumber> prod(xs.size());
    bool any = false;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      if (f2c[ix].is_zero()) continue;
      prod[ix] = (*pr.f1)(sub(xs[ix], g.a[ia])) * f2c[ix];
      any = any || !prod[ix].is_zero();
    }
    if (!any) continue;
    for (std::size_t ib = 0; ib < g.b.size(); ++ib) {
      CycloNumber acc;
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        if (prod[ix].is_zero()) continue;
        acc += prod[ix] * chi(p, -pr.t * dot(g.b[ib], xs[ix]));
      }
      out[ia * g.b.size() + ib] = acc * mu_x;
    }
  }
  return out;
}

double pair_cells(const PadicPair& pr, long m) {
  const unsigned long p = pr.f1->prime();
  const auto R2 = pr.f2->support_exponent();
  if (!R2) return 0;
  const long vt = val_or(pr.t, p, kFar);
  const long Kx = std::max({pr.f1->constancy_scale(), pr.f2->constancy_scale(), m - vt, -*R2});
  return ncells(p, pr.f1->dim(), *R2, Kx);
}

/// Cells for a and b in B(p^m)^n fine enough for every pair and the extra frequency bounds.
CellGrid make_cells(const std::vector<PadicPair>& pairs, long m, long Ka_min, long Kb_min, double* cells) {
  const unsigned long p = pairs[0].f1->prime();
  const int n = pairs[0].f1->dim();
  long Ka = std::max(-m, Ka_min), Kb = std::max(-m, Kb_min);
  double xcells = 0;
  for (const auto& pr : pairs) {
    Ka = std::max(Ka, pr.f1->constancy_scale());
    if (auto R2 = pr.f2->support_exponent()) Kb = std::max(Kb, *R2 - val_or(pr.t, p, kFar));
    xcells += pair_cells(pr, m);
  }
  *cells = ncells(p, n, m, Ka) * ncells(p, n, m, Kb) * std::max(1.0, xcells);
  charge(*cells, "p-adic oracle");
  CellGrid g;
  g.a = detail::cell_reps(p, n, m, Ka);
  g.b = detail::cell_reps(p, n, m, Kb);
  g.mu_a = pow_p(p, -n * Ka);
  g.mu_b = pow_p(p, -n * Kb);
  return g;
}

/// (1 / mu(B(p^{2m}))) sum over c-cells of chi(y c).
CycloNumber c_average(unsigned long p, const Rational& y, long m) {
  const long s = std::max(-2 * m, -val_or(y, p, kFar));
  charge(ncells(p, 1, 2 * m, s), "central-variable sum");
  CycloNumber acc;
  for (const auto& c : detail::cell_reps(p, 1, 2 * m, s)) acc += chi(p, y * c[0]);
  return acc * (pow_p(p, -s) / pow_p(p, 2 * m));
}

/// int int_{B(p^m)^2} M12 conj(M34).
CycloNumber surface_pair(const PadicPair& p12, const PadicPair& p34, long m) {
  double cells = 0;
  const auto g = make_cells({p12, p34}, m, -kFar, -kFar, &cells);
  const auto M12 = pointwise_surface(p12, g, m);
  const auto M34 = pointwise_surface(p34, g, m);
  CycloNumber acc;
  for (std::size_t i = 0; i < M12.size(); ++i) {
    if (!M12[i].is_zero() && !M34[i].is_zero()) acc += M12[i] * M34[i].conj();
  }
  return acc * (g.mu_a * g.mu_b);
}

CycloNumber padic_oracle(const ExperimentSpec& s, long m) {
  const unsigned long p = s.field.p;
  auto fn = [&](std::size_t i) { return &s.functions.at(i).padic(); };
  switch (s.kind) {
    case ExperimentKind::SchurDiag:
      return surface_pair({s.t->exact(), fn(0), fn(1)}, {s.t->exact(), fn(2), fn(3)}, m);
    case ExperimentKind::SchurCrossTT: {
      const CycloNumber c = c_average(p, s.t->exact() - s.t2->exact(), m);
      if (c.is_zero()) return c;
      return c * surface_pair({s.t->exact(), fn(0), fn(1)}, {s.t2->exact(), fn(2), fn(3)}, m);
    }
    case ExperimentKind::SchurCrossPiRho: {
      const CycloNumber c = c_average(p, s.t->exact(), m);
      if (c.is_zero()) return c;
      const int n = fn(0)->dim();
      long Ka = -kFar, Kb = -kFar;
      for (int i = 0; i < n; ++i) {
        Ka = std::max(Ka, -val_or(s.z1.at(i).exact(), p, kFar));
        Kb = std::max(Kb, -val_or(s.x1.at(i).exact(), p, kFar));
      }
      PadicPair pr{s.t->exact(), fn(0), fn(1)};
      double cells = 0;
      const auto g = make_cells({pr}, m, Ka, Kb, &cells);
      const auto M = pointwise_surface(pr, g, m);
      RationalVec z(n), x(n);
      for (int i = 0; i < n; ++i) {
        z[i] = s.z1[i].exact();
        x[i] = s.x1[i].exact();
      }
      CycloNumber acc;
      for (std::size_t ia = 0; ia < g.a.size(); ++ia) {
        for (std::size_t ib = 0; ib < g.b.size(); ++ib) {
          const auto& v = M[ia * g.b.size() + ib];
          if (!v.is_zero()) acc += v * chi(p, -(dot(z, g.a[ia]) + dot(x, g.b[ib])));
        }
      }
      return acc * c * (g.mu_a * g.mu_b / pow_p(p, n * m));
    }
    case ExperimentKind::SchurOnedim: {
      CycloNumber prod(1);
      for (std::size_t i = 0; i < s.z1.size(); ++i) {
        for (const Rational& d : {Rational(s.z1[i].exact() - s.z2[i].exact()), Rational(s.x1[i].exact() - s.x2[i].exact())}) {
          const long sc = std::max(-m, -val_or(d, p, kFar));
          charge(ncells(p, 1, m, sc), "one-dimensional oracle");
          CycloNumber acc;
          for (const auto& a : detail::cell_reps(p, 1, m, sc)) acc += chi(p, d * a[0]);
          prod *= acc * (pow_p(p, -sc) / pow_p(p, m));
        }
      }
      return prod;
    }
    case ExperimentKind::BraidingPairing: {
      // sum over (a, b, x, y) of chi(t (a + x - y).b) phi1(x + a, y - a) conj(phi2(x, y))
      const auto& phi1 = *fn(0);
      const auto& phi2 = *fn(1);
      const int n = phi1.dim() / 2;
      const auto R2 = phi2.support_exponent();
      if (!R2 || !phi1.support_exponent()) return CycloNumber();
      const long vt = val_or(s.t->exact(), p, kFar);
      const long L = std::max(phi1.constancy_scale(), phi2.constancy_scale());
      const long Ka = std::max({-m, phi1.constancy_scale(), m - vt});
      const long Kb = std::max(-m, std::max(m, *R2) - vt);
      const long Kx = std::max({L, m - vt, -*R2});
      charge(ncells(p, n, m, Ka) * ncells(p, n, m, Kb) * ncells(p, 2 * n, *R2, Kx), "braiding oracle");
      const auto as = detail::cell_reps(p, n, m, Ka);
      const auto bs = detail::cell_reps(p, n, m, Kb);
      const auto xys = detail::cell_reps(p, 2 * n, *R2, Kx);
      const Rational t = s.t->exact();
      CycloNumber acc;
      for (const auto& xy : xys) {
        const CycloNumber w = phi2(xy).conj();
        if (w.is_zero()) continue;
        RationalVec x(xy.begin(), xy.begin() + n), y(xy.begin() + n, xy.end());
        for (const auto& a : as) {
          RationalVec arg(2 * n), shift(n);
          for (int i = 0; i < n; ++i) {
            arg[i] = x[i] + a[i];
            arg[n + i] = y[i] - a[i];
            shift[i] = a[i] + x[i] - y[i];
          }
          const CycloNumber v = phi1(arg) * w;
          if (v.is_zero()) continue;
          CycloNumber bsum;
          for (const auto& b : bs) bsum += chi(p, t * dot(shift, b));
          acc += v * bsum;
        }
      }
      acc *= pow_p(p, -n * Ka) * pow_p(p, -n * Kb) * pow_p(p, -2 * n * Kx);
      return acc;
    }
    case ExperimentKind::CtempConditionII: {
      const Rational kq = std::get<Rational>(*s.k);
      if (kq == 0) return CycloNumber();
      const long j = *padic_exponent_of_power(kq, p);
      const int n = fn(0)->dim();
      if (!find_symdiff_witness(p, m, j, n)) return CycloNumber();
      const long ro = std::max(m, j), co = std::max({2 * m, j, 2 * j, m + j});
      PadicPair pr{s.t->exact(), fn(0), fn(1)};
      return surface_pair(pr, pr, ro) * (pow_p(p, co) / pow_p(p, 2 * m));
    }
  }
  return CycloNumber();
}

// --- R ---------------------------------------------------------------------

RealGrid finer(const RealGrid& g) {
  if (!g.profiles()) return g;
  return g.resampled(g.spacing() / 2);
}

struct DirectSurface {
  long alpha_lo = 0, alpha_hi = -1;
  double h = 0;
  std::vector<double> b;
  double bw = 0;
  std::vector<cplx> M;  // row per alpha in [alpha_lo, alpha_hi]
  double aw(long alpha, double r) const {
    const double a = std::abs(static_cast<double>(alpha) * h);
    return std::abs(a - r) < 1e-9 * std::max(1.0, r) ? 0.5 * h : h;
  }
  cplx at(long alpha, std::size_t q) const {
    if (alpha < alpha_lo || alpha > alpha_hi) return 0.0;
    return M[static_cast<std::size_t>(alpha - alpha_lo) * b.size() + q];
  }
};

/// M(a, b) = h sum_x exp(-2 pi i t b x) f1(x - a) conj(f2(x)) for a = alpha h in [-r, r].
DirectSurface direct_surface(double t, const RealGrid& f1, const RealGrid& f2, double r) {
  DirectSurface s;
  const double h = f1.spacing();
  s.h = h;
  const long d = lattice_offset(f2.origin()[0], f1.origin()[0], h);
  const long n1 = f1.shape()[0], n2 = f2.shape()[0];
  const long top = static_cast<long>(std::floor(r / h + 1e-9));
  s.alpha_lo = std::max(-top, d - (n1 - 1));
  s.alpha_hi = std::min(top, d + n2 - 1);
  const long nb = std::max(1L, static_cast<long>(std::ceil(2 * r / h - 1e-9)));
  s.bw = 2 * r / static_cast<double>(nb);
  for (long q = 0; q < nb; ++q) s.b.push_back(-r + (static_cast<double>(q) + 0.5) * s.bw);
  if (s.alpha_hi < s.alpha_lo) return s;
  charge(static_cast<double>(s.alpha_hi - s.alpha_lo + 1) * static_cast<double>(nb) * static_cast<double>(n2),
         "real oracle");
  s.M.assign(static_cast<std::size_t>(s.alpha_hi - s.alpha_lo + 1) * s.b.size(), 0.0);
  for (long alpha = s.alpha_lo; alpha <= s.alpha_hi; ++alpha) {
    for (std::size_t q = 0; q < s.b.size(); ++q) {
      cplx acc = 0;
      for (long j = 0; j < n2; ++j) {
        const long i1 = j + d - alpha;  // x - a on the f1 lattice
        if (i1 < 0 || i1 >= n1) continue;
        const double x = f2.node(0, j);
        acc += std::polar(1.0, -kTwoPi * t * s.b[q] * x) * f1.samples()[i1] * std::conj(f2.samples()[j]);
      }
      s.M[static_cast<std::size_t>(alpha - s.alpha_lo) * s.b.size() + q] = h * acc;
    }
  }
  return s;
}

cplx direct_pair(const DirectSurface& A, const DirectSurface& B, double r) {
  cplx acc = 0;
  for (long alpha = std::max(A.alpha_lo, B.alpha_lo); alpha <= std::min(A.alpha_hi, B.alpha_hi); ++alpha) {
    cplx row = 0;
    for (std::size_t q = 0; q < A.b.size(); ++q) row += A.at(alpha, q) * std::conj(B.at(alpha, q));
    acc += A.aw(alpha, r) * A.bw * row;
  }
  return acc;
}

/// (1 / 2R) int_{-R}^{R} exp(2 pi i y c) dc by the midpoint rule.
double midpoint_average(double y, double R) {
  const long N = 64 + static_cast<long>(std::ceil(std::abs(y) * 2 * R * 64));
  charge(static_cast<double>(N), "central-variable quadrature");
  const double w = 2 * R / static_cast<double>(N);
  double acc = 0;
  for (long i = 0; i < N; ++i) acc += std::cos(kTwoPi * y * (-R + (static_cast<double>(i) + 0.5) * w));
  return acc * w / (2 * R);
}

cplx real_oracle(const ExperimentSpec& s, double r) {
  auto fine = [&](std::size_t i) { return finer(s.functions.at(i).real()); };
  switch (s.kind) {
    case ExperimentKind::SchurDiag: {
      const double t = s.t->real();
      return direct_pair(direct_surface(t, fine(0), fine(1), r), direct_surface(t, fine(2), fine(3), r), r);
    }
    case ExperimentKind::SchurCrossTT: {
      const double c = midpoint_average(s.t->real() - s.t2->real(), r * r);
      return c * direct_pair(direct_surface(s.t->real(), fine(0), fine(1), r),
                             direct_surface(s.t2->real(), fine(2), fine(3), r), r);
    }
    case ExperimentKind::SchurCrossPiRho: {
      const double t = s.t->real();
      const double z = s.z1.at(0).real(), x = s.x1.at(0).real();
      const auto M = direct_surface(t, fine(0), fine(1), r);
      cplx acc = 0;
      for (long alpha = M.alpha_lo; alpha <= M.alpha_hi; ++alpha) {
        const double a = static_cast<double>(alpha) * M.h;
        for (std::size_t q = 0; q < M.b.size(); ++q) {
          acc += M.aw(alpha, r) * M.bw * M.at(alpha, q) * std::polar(1.0, -kTwoPi * (z * a + x * M.b[q]));
        }
      }
      return midpoint_average(t, r * r) / (2 * r) * acc;
    }
    case ExperimentKind::SchurOnedim: {
      double prod = 1;
      for (std::size_t i = 0; i < s.z1.size(); ++i) {
        prod *= midpoint_average(s.z1[i].real() - s.z2[i].real(), r);
        prod *= midpoint_average(s.x1[i].real() - s.x2[i].real(), r);
      }
      return prod;
    }
    case ExperimentKind::BraidingPairing: {
      // b-integral in closed form: int_{-r}^{r} exp(2 pi i s b) db = sin(2 pi s r) / (pi s)
      const RealGrid p1 = fine(0), p2 = fine(1);
      const double h = p1.spacing();
      const double t = s.t->real();
      const long dx = lattice_offset(p2.origin()[0], p1.origin()[0], h);
      const long dy = lattice_offset(p2.origin()[1], p1.origin()[1], h);
      const long top = static_cast<long>(std::floor(r / h + 1e-9));
      const long nx1 = p1.shape()[0], ny1 = p1.shape()[1], nx2 = p2.shape()[0], ny2 = p2.shape()[1];
      charge(static_cast<double>(2 * top + 1) * static_cast<double>(nx2 * ny2), "real braiding oracle");
      cplx acc = 0;
      for (long alpha = -top; alpha <= top; ++alpha) {
        const double a = static_cast<double>(alpha) * h;
        const double wa = std::abs(std::abs(a) - r) < 1e-9 * std::max(1.0, r) ? 0.5 * h : h;
        cplx row = 0;
        for (long i = 0; i < nx2; ++i) {
          const long i1 = i + dx + alpha;
          if (i1 < 0 || i1 >= nx1) continue;
          for (long j = 0; j < ny2; ++j) {
            const long j1 = j + dy - alpha;
            if (j1 < 0 || j1 >= ny1) continue;
            const cplx v = p1.samples()[i1 * ny1 + j1] * std::conj(p2.samples()[i * ny2 + j]);
            if (v == 0.0) continue;
            const double sarg = t * (a + p2.node(0, i) - p2.node(1, j));
            const double K = sarg == 0.0 ? 2 * r : std::sin(kTwoPi * sarg * r) / (std::numbers::pi * sarg);
            row += v * K;
          }
        }
        acc += wa * h * h * row;
      }
      return acc;
    }
    case ExperimentKind::CtempConditionII: {
      const double k = to_double(*s.k);
      if (k == 0) return 0.0;
      const double t = s.t->real();
      const RealGrid f1 = fine(0), f2 = fine(1);
      auto I = [&](double rho) {
        const auto M = direct_surface(t, f1, f2, rho);
        return direct_pair(M, M, rho).real();
      };
      const auto sw = sandwich_boxes(r, k, 1);
      double gap = 2 * sw.outer.rc * I(sw.outer.ra);
      if (!sw.inner.degenerate) gap -= 2 * sw.inner.rc * I(sw.inner.ra);
      return gap / (2 * r * r);
    }
  }
  return 0.0;
}

}  // namespace

namespace detail {

ComplexValue oracle_value(const ExperimentSpec& spec, const ExactOrReal& r) {
  if (spec.field.is_padic()) {
    const long m = *padic_exponent_of_power(std::get<Rational>(r), spec.field.p);
    return ComplexValue::of(padic_oracle(spec, m));
  }
  return ComplexValue::of(real_oracle(spec, to_double(r)));
}

}  // namespace detail

ComplexValue brute_force_oracle(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                                const ExactOrReal& r) {
  if (f1.is_padic()) {
    const long m = *padic_exponent_of_power(std::get<Rational>(r), f1.field().p);
    PadicPair pr{t.exact(), &f1.padic(), &f2.padic()};
    return ComplexValue::of(surface_pair(pr, pr, m));
  }
  const double rr = to_double(r);
  const auto M = direct_surface(t.real(), finer(f1.real()), finer(f2.real()), rr);
  return ComplexValue::of(direct_pair(M, M, rr));
}

}  // namespace hschur
