#include "hschur/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "experiments_internal.hpp"
#include "hschur/error.hpp"

namespace hschur {

namespace detail {

std::vector<RationalVec> cell_reps(unsigned long p, int n, long R, long s) {
  if (s < -R) s = -R;
  std::vector<Rational> one;
  Integer count = 1;
  for (long i = 0; i < R + s; ++i) count *= p;
  const Rational step = pow_p(p, -R);
  for (Integer j = 0; j < count; ++j) one.push_back(step * Rational(j));
  std::vector<RationalVec> out{RationalVec{}};
  for (int d = 0; d < n; ++d) {
    std::vector<RationalVec> next;
    next.reserve(out.size() * one.size());
    for (const auto& v : out) {
      for (const auto& x : one) {
        RationalVec w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

double RealNodes::a_weight(long alpha) const {
  return (alpha == alpha_lo || alpha == alpha_hi) && edge_exact ? 0.5 * h : h;
}

RealNodes real_nodes(double r, double h, double hb) {
  RealNodes q;
  q.h = h;
  const double qa = r / h;
  const long top = static_cast<long>(std::floor(qa + 1e-9));
  q.alpha_lo = -top;
  q.alpha_hi = top;
  q.edge_exact = std::abs(qa - static_cast<double>(top)) < 1e-9;
  const long nb = std::max(1L, static_cast<long>(std::ceil(2 * r / hb - 1e-9)));
  q.b_weight = 2 * r / static_cast<double>(nb);
  for (long i = 0; i < nb; ++i) q.b.push_back(-r + (static_cast<double>(i) + 0.5) * q.b_weight);
  return q;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_alias(double t, double r, double h) {
  if (std::abs(t) * r > 1.0 / (2.0 * h) + 1e-9) {
    throw Error(ErrorKind::InvalidRadius, "radius " + std::to_string(r) + " with |t| = " + std::to_string(std::abs(t)) +
                                              " exceeds the alias-free range 1/(2|t|h) of the grid");
  }
}

std::string radius_text(const FieldDesc& f, const ExactOrReal& r) {
  if (f.is_padic()) return to_string(std::get<Rational>(r));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
  return buf;
}

}  // namespace detail

namespace {

using detail::cell_reps;
using detail::sinc;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KindInfo {
  ExperimentKind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {ExperimentKind::SchurDiag, "schur_diag"},
    {ExperimentKind::SchurCrossTT, "schur_cross_tt"},
    {ExperimentKind::SchurCrossPiRho, "schur_cross_pi_rho"},
    {ExperimentKind::SchurOnedim, "schur_onedim"},
    {ExperimentKind::BraidingPairing, "braiding_pairing"},
    {ExperimentKind::CtempConditionII, "ctemp_condition_ii"},
};

std::size_t required_functions(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SchurDiag:
    case ExperimentKind::SchurCrossTT:
      return 4;
    case ExperimentKind::SchurOnedim:
      return 0;
    default:
      return 2;
  }
}

PadicBallChar padic_surface(const Rational& t, const PadicBallChar& f1, const PadicBallChar& f2) {
  const int n = f1.dim();
  return dilate(fourier_wigner(tensor(f1, conj(f2))), n, n, t);
}

long val(const Rational& x, unsigned long p) {
  auto v = padic_valuation(x, p);
  if (!v) throw Error(ErrorKind::UnsupportedOperation, "valuation of zero");
  return *v;
}

// int_{B(p^{2m})} chi(y c) dc / mu(B(p^{2m}))
Rational c_factor(const FieldDesc& f, const Rational& y, long m) {
  return char_ball_integral(f, y, 2 * m) / pow_p(f.p, 2 * m);
}

double norm_of(const TestFunction& f) { return std::sqrt(std::max(0.0, norm_sq(f).approx.real())); }

// --- the per-experiment engines --------------------------------------------

class Engine {
 public:
  explicit Engine(const ExperimentSpec& spec);

  ComplexValue value(std::size_t i, std::string* note);
  ComplexValue target() const { return target_; }
  double normalizer(std::size_t i) const;
  /// Index of the first radius at or beyond the exactness threshold (p-adic).
  std::optional<long> threshold_exponent() const { return threshold_; }
  double scale() const { return scale_; }
  std::string target_formula() const { return formula_; }
  const RadiusSchedule& schedule() const { return sched_; }
  const ExperimentSpec& spec() const { return spec_; }

 private:
  void prepare_padic();
  void prepare_real();
  CycloNumber padic_value(long m, std::string* note) const;
  std::complex<double> real_value(double r, std::string* note) const;
  CycloNumber padic_braiding(long m) const;
  std::complex<double> real_surface_char(const RealSurface& s, double r) const;

  const ExperimentSpec& spec_;
  RadiusSchedule sched_;
  ComplexValue target_;
  std::optional<long> threshold_;
  double scale_ = 1;
  std::string formula_;
  double hb_ = 0;

  std::vector<PadicBallChar> psurf_;
  std::vector<RealSurface> rsurf_;
};

Engine::Engine(const ExperimentSpec& spec) : spec_(spec), sched_(spec.field, spec.radii) {
  validate(spec);
  if (spec.field.is_padic()) {
    prepare_padic();
  } else {
    prepare_real();
  }
}

void Engine::prepare_padic() {
  const auto& F = spec_.functions;
  const unsigned long p = spec_.field.p;
  auto pf = [&](std::size_t i) { return F[i].padic(); };
  switch (spec_.kind) {
    case ExperimentKind::SchurDiag: {
      const Rational& t = spec_.t->exact();
      const int n = pf(0).dim();
      psurf_ = {padic_surface(t, pf(0), pf(1)), padic_surface(t, pf(2), pf(3))};
      CycloNumber tgt = inner(pf(0), pf(2)) * inner(pf(1), pf(3)).conj();
      tgt *= pow_p(p, n * val(t, p));
      target_ = ComplexValue::of(tgt);
      auto r1 = psurf_[0].support_exponent(), r2 = psurf_[1].support_exponent();
      if (!r1 || !r2) {
        threshold_ = std::numeric_limits<long>::min();
      } else {
        threshold_ = std::min(*r1, *r2);
      }
      formula_ = "mod(t)^-n <f1,f3> conj(<f2,f4>)";
      scale_ = norm_of(F[0]) * norm_of(F[1]) * norm_of(F[2]) * norm_of(F[3]);
      break;
    }
    case ExperimentKind::SchurCrossTT: {
      psurf_ = {padic_surface(spec_.t->exact(), pf(0), pf(1)), padic_surface(spec_.t2->exact(), pf(2), pf(3))};
      target_ = ComplexValue::of(CycloNumber());
      const long v = val(spec_.t->exact() - spec_.t2->exact(), p);
      // c-factor vanishes once |t1 - t2| r^2 > 1, i.e. 2m > v
      threshold_ = static_cast<long>(std::floor(v / 2.0)) + 1;
      formula_ = "0 (t1 != t2)";
      scale_ = norm_of(F[0]) * norm_of(F[1]) * norm_of(F[2]) * norm_of(F[3]);
      break;
    }
    case ExperimentKind::SchurCrossPiRho: {
      psurf_ = {padic_surface(spec_.t->exact(), pf(0), pf(1))};
      target_ = ComplexValue::of(CycloNumber());
      const long v = val(spec_.t->exact(), p);
      threshold_ = static_cast<long>(std::floor(v / 2.0)) + 1;
      formula_ = "0 (pi_t against rho_{z,x})";
      scale_ = norm_of(F[0]) * norm_of(F[1]);
      break;
    }
    case ExperimentKind::SchurOnedim: {
      bool equal = true;
      long thr = std::numeric_limits<long>::max();
      for (std::size_t i = 0; i < spec_.z1.size(); ++i) {
        for (const Rational& d : {Rational(spec_.z1[i].exact() - spec_.z2[i].exact()), Rational(spec_.x1[i].exact() - spec_.x2[i].exact())}) {
          if (d == 0) continue;
          equal = false;
          thr = std::min(thr, val(d, p) + 1);  // int_{B(p^m)} chi(d a) da = 0 iff m > v(d)
        }
      }
      target_ = ComplexValue::of(CycloNumber(equal ? 1 : 0));
      threshold_ = equal ? std::numeric_limits<long>::min() : thr;
      formula_ = equal ? "1 = 1/dim <v,v> conj(<w,w>)" : "0 ((z1,x1) != (z2,x2))";
      break;
    }
    case ExperimentKind::BraidingPairing: {
      const Rational& t = spec_.t->exact();
      const int n = pf(0).dim() / 2;
      if (pf(0).dim() % 2 != 0) throw Error(ErrorKind::OddDimension, spec_.id + ": braiding needs phi on K^{2n}");
      CycloNumber tgt = inner(flip(pf(0)), pf(1));
      tgt *= pow_p(p, n * val(t, p));
      target_ = ComplexValue::of(tgt);
      const long vt = val(t, p);
      auto R2 = pf(1).support_exponent();
      long thr = std::max(pf(0).constancy_scale() + vt, R2.value_or(std::numeric_limits<long>::min() / 4));
      thr = std::max(thr, static_cast<long>(std::ceil(vt / 2.0)));
      threshold_ = R2 ? thr : std::numeric_limits<long>::min();
      formula_ = "mod(t)^-n <F phi1, phi2>";
      scale_ = norm_of(F[0]) * norm_of(F[1]);
      break;
    }
    case ExperimentKind::CtempConditionII: {
      psurf_ = {padic_surface(spec_.t->exact(), pf(0), pf(1))};
      target_ = ComplexValue::of(CycloNumber());
      if (!spec_.k) throw Error(ErrorKind::ConfigInvalid, spec_.id + ": missing k");
      auto j = padic_exponent_of_power(std::get<Rational>(*spec_.k), p);
      if (std::get<Rational>(*spec_.k) == 0) {
        threshold_ = std::numeric_limits<long>::min();
      } else {
        if (!j) throw Error(ErrorKind::InvalidRadius, spec_.id + ": k must be a power of p");
        threshold_ = std::max(*j, static_cast<long>(std::ceil(*j / 2.0)));
      }
      formula_ = "0 (g2^-1 F g1 = F)";
      const double a = norm_of(F[0]), b = norm_of(F[1]);
      scale_ = a * a * b * b;
      break;
    }
  }
}

void Engine::prepare_real() {
  const auto& F = spec_.functions;
  for (const auto& f : F) {
    const int want = spec_.kind == ExperimentKind::BraidingPairing ? 2 : 1;
    if (f.dim() != want) {
      throw Error(ErrorKind::UnsupportedOperation, spec_.id + ": real experiments are implemented for n = 1");
    }
  }
  if (!F.empty()) hb_ = spec_.quad_h.value_or(F[0].real().spacing());
  auto rf = [&](std::size_t i) { return F[i].real(); };
  switch (spec_.kind) {
    case ExperimentKind::SchurDiag: {
      const double t = spec_.t->real();
      rsurf_ = {RealSurface(t, rf(0), rf(1)), RealSurface(t, rf(2), rf(3))};
      target_ = ComplexValue::of(inner(rf(0), rf(2)) * std::conj(inner(rf(1), rf(3))) / std::abs(t));
      formula_ = "mod(t)^-n <f1,f3> conj(<f2,f4>)";
      scale_ = norm_of(F[0]) * norm_of(F[1]) * norm_of(F[2]) * norm_of(F[3]);
      break;
    }
    case ExperimentKind::SchurCrossTT:
      rsurf_ = {RealSurface(spec_.t->real(), rf(0), rf(1)), RealSurface(spec_.t2->real(), rf(2), rf(3))};
      target_ = ComplexValue::of(std::complex<double>(0));
      formula_ = "0 (t1 != t2)";
      scale_ = norm_of(F[0]) * norm_of(F[1]) * norm_of(F[2]) * norm_of(F[3]);
      break;
    case ExperimentKind::SchurCrossPiRho:
      rsurf_ = {RealSurface(spec_.t->real(), rf(0), rf(1))};
      target_ = ComplexValue::of(std::complex<double>(0));
      formula_ = "0 (pi_t against rho_{z,x})";
      scale_ = norm_of(F[0]) * norm_of(F[1]);
      break;
    case ExperimentKind::SchurOnedim: {
      bool equal = true;
      for (std::size_t i = 0; i < spec_.z1.size(); ++i) {
        equal = equal && spec_.z1[i].real() == spec_.z2[i].real() && spec_.x1[i].real() == spec_.x2[i].real();
      }
      target_ = ComplexValue::of(std::complex<double>(equal ? 1.0 : 0.0));
      formula_ = equal ? "1 = 1/dim <v,v> conj(<w,w>)" : "0 ((z1,x1) != (z2,x2))";
      break;
    }
    case ExperimentKind::BraidingPairing:
      target_ = ComplexValue::of(inner(flip(rf(0)), rf(1)) / std::abs(spec_.t->real()));
      formula_ = "mod(t)^-n <F phi1, phi2>";
      scale_ = norm_of(F[0]) * norm_of(F[1]);
      break;
    case ExperimentKind::CtempConditionII: {
      rsurf_ = {RealSurface(spec_.t->real(), rf(0), rf(1))};
      target_ = ComplexValue::of(std::complex<double>(0));
      if (!spec_.k) throw Error(ErrorKind::ConfigInvalid, spec_.id + ": missing k");
      formula_ = "0 (sandwich gap of condition ii)";
      const double a = norm_of(F[0]), b = norm_of(F[1]);
      scale_ = a * a * b * b;
      break;
    }
  }
}

double Engine::normalizer(std::size_t i) const {
  const FieldDesc& f = spec_.field;
  const int n = spec_.kind == ExperimentKind::SchurOnedim ? static_cast<int>(spec_.z1.size())
                : spec_.kind == ExperimentKind::BraidingPairing ? spec_.functions[0].dim() / 2
                                                               : std::max(1, spec_.functions.empty() ? 1 : spec_.functions[0].dim());
  auto mu = [&](int l, std::size_t idx, int power) -> double {
    if (f.is_padic()) return padic_ball_measure(f.p, l, power * sched_.exponent(idx)).get_d();
    return std::pow(2.0 * std::pow(sched_.value(idx), power), l);
  };
  switch (spec_.kind) {
    case ExperimentKind::SchurCrossPiRho:
      return 1.0 / (mu(n, i, 1) * mu(1, i, 2));
    case ExperimentKind::SchurOnedim:
      return 1.0 / (mu(n, i, 1) * mu(n, i, 1) * mu(1, i, 2));
    default:
      return 1.0 / mu(1, i, 2);
  }
}

ComplexValue Engine::value(std::size_t i, std::string* note) {
  if (spec_.field.is_padic()) return ComplexValue::of(padic_value(sched_.exponent(i), note));
  return ComplexValue::of(real_value(sched_.value(i), note));
}

CycloNumber Engine::padic_value(long m, std::string* note) const {
  const FieldDesc& f = spec_.field;
  const unsigned long p = f.p;
  switch (spec_.kind) {
    case ExperimentKind::SchurDiag:
      return inner(restrict_to_ball(psurf_[0], m), psurf_[1]);
    case ExperimentKind::SchurCrossTT: {
      const Rational c = c_factor(f, spec_.t->exact() - spec_.t2->exact(), m);
      if (c == 0) return CycloNumber();
      return inner(restrict_to_ball(psurf_[0], m), psurf_[1]) * c;
    }
    case ExperimentKind::SchurCrossPiRho: {
      const Rational c = c_factor(f, spec_.t->exact(), m);
      if (c == 0) return CycloNumber();
      const int n = psurf_[0].dim() / 2;
      PadicTerm e;
      e.coeff = CycloNumber(1);
      for (int i = 0; i < n; ++i) e.freq.push_back(spec_.z1.at(i).exact());
      for (int i = 0; i < n; ++i) e.freq.push_back(spec_.x1.at(i).exact());
      e.center.assign(2 * n, Rational(0));
      e.scale.assign(2 * n, -m);
      PadicBallChar E(p, 2 * n, {e});
      return inner(restrict_to_ball(psurf_[0], m), E) * (c / pow_p(p, n * m));
    }
    case ExperimentKind::SchurOnedim: {
      Rational prod = 1;
      for (std::size_t i = 0; i < spec_.z1.size(); ++i) {
        prod *= char_ball_integral(f, spec_.z1[i].exact() - spec_.z2[i].exact(), m) / pow_p(p, m);
        prod *= char_ball_integral(f, spec_.x1[i].exact() - spec_.x2[i].exact(), m) / pow_p(p, m);
      }
      return CycloNumber(prod);
    }
    case ExperimentKind::BraidingPairing:
      return padic_braiding(m);
    case ExperimentKind::CtempConditionII: {
      const Rational kq = std::get<Rational>(*spec_.k);
      if (kq == 0) return CycloNumber();
      const long j = *padic_exponent_of_power(kq, p);
      if (ultrametric_symdiff_empty(p, m, j)) return CycloNumber();
      // outer box of the conjugates: B(max(r, k))^2 x B(max(r^2, k, k^2, r k))
      const long ro = std::max(m, j), co = std::max({2 * m, j, 2 * j, m + j});
      if (note) *note = "outer-box bound (box not yet invariant)";
      const CycloNumber I = inner(restrict_to_ball(psurf_[0], ro), psurf_[0]);
      return I * (pow_p(p, co) / pow_p(p, 2 * m));
    }
  }
  return CycloNumber();
}

// mu(B(r)) int_{a in B(r)} int_{|w - a| <= delta} Psi(a, w) dw da,
// Psi(a, w) = int phi1(x + a, x + w - a) conj(phi2(x, x + w)) dx, delta = 1 / (|t| r).
CycloNumber Engine::padic_braiding(long m) const {
  const auto& phi1 = spec_.functions[0].padic();
  const auto& phi2 = spec_.functions[1].padic();
  const unsigned long p = phi1.prime();
  const int n = phi1.dim() / 2;
  auto R2 = phi2.support_exponent();
  if (!R2 || phi1.terms().empty()) return CycloNumber();
  const long vt = val(spec_.t->exact(), p);
  const long e_delta = -m + vt;
  const long L = std::max(phi1.constancy_scale(), phi2.constancy_scale());
  auto psi = [&](const RationalVec& a, const RationalVec& w) {
    RationalVec wa(n), zero(n, Rational(0));
    for (int i = 0; i < n; ++i) wa[i] = w[i] - a[i];
    return inner(diagonal(phi1, a, wa), diagonal(phi2, zero, w));
  };
  CycloNumber sum;
  if (e_delta <= m) {
    const long wexp = std::min(m, *R2);
    const long sw = std::max(L, -wexp);
    std::vector<RationalVec> ds;
    Rational mu_d;
    if (-e_delta >= L) {
      ds = {RationalVec(n, Rational(0))};
      mu_d = pow_p(p, n * e_delta);
    } else {
      ds = cell_reps(p, n, e_delta, L);
      mu_d = pow_p(p, -n * L);
    }
    const Rational mu_w = pow_p(p, -n * sw);
    for (const auto& w : cell_reps(p, n, wexp, sw)) {
      for (const auto& d : ds) {
        RationalVec a(n);
        for (int i = 0; i < n; ++i) a[i] = w[i] + d[i];
        sum += psi(a, w) * (mu_w * mu_d);
      }
    }
  } else {
    const long sa = std::max(L, -m);
    const long wexp = std::min(e_delta, *R2);
    const long sw = std::max(L, -wexp);
    const Rational mu = pow_p(p, -n * sa) * pow_p(p, -n * sw);
    for (const auto& a : cell_reps(p, n, m, sa)) {
      for (const auto& w : cell_reps(p, n, wexp, sw)) sum += psi(a, w) * mu;
    }
  }
  return sum * pow_p(p, n * m);
}

std::complex<double> pair_integral(const RealSurface& s1, const RealSurface& s2, double r, double hb,
                                   const std::function<std::complex<double>(long, double)>* weight) {
  const double h = s1.spacing();
  detail::check_alias(s1.t(), r, h);
  detail::check_alias(s2.t(), r, h);
  const auto q = detail::real_nodes(r, h, hb);
  const long lo = std::max({q.alpha_lo, s1.alpha_min(), s2.alpha_min()});
  const long hi = std::min({q.alpha_hi, s1.alpha_max(), s2.alpha_max()});
  if (hi < lo) return 0.0;
  std::vector<kernels::SurfaceRow> rows1, rows2;
  for (long a = lo; a <= hi; ++a) {
    rows1.push_back(s1.row(a));
    rows2.push_back(s2.row(a));
  }
  const auto m1 = kernels::surface_matrix(rows1, s1.t(), h, q.b);
  const auto m2 = &s1 == &s2 ? m1 : kernels::surface_matrix(rows2, s2.t(), h, q.b);
  const std::size_t nb = q.b.size();
  // Samples stand for cell-constant functions; the x-integral over a cell of
  // exp(-2 pi i t b x) is the lattice term times sinc(pi t b h).
  std::vector<double> c1(nb), c2(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    c1[k] = detail::sinc(std::numbers::pi * s1.t() * q.b[k] * h);
    c2[k] = weight ? 1.0 : detail::sinc(std::numbers::pi * s2.t() * q.b[k] * h);
  }
  std::complex<double> total = 0;
  for (long a = lo; a <= hi; ++a) {
    const std::size_t row = static_cast<std::size_t>(a - lo);
    std::complex<double> acc = 0;
    for (std::size_t k = 0; k < nb; ++k) {
      const auto other = weight ? (*weight)(a, q.b[k]) : m2[row * nb + k];
      acc += c1[k] * c2[k] * m1[row * nb + k] * std::conj(other);
    }
    total += q.a_weight(a) * q.b_weight * acc;
  }
  return total;
}

std::complex<double> Engine::real_surface_char(const RealSurface& s, double r) const {
  const double z = spec_.z1.at(0).real(), x = spec_.x1.at(0).real();
  const double h = s.spacing();
  std::function<std::complex<double>(long, double)> e = [&](long alpha, double b) {
    return std::polar(1.0, kTwoPi * (z * static_cast<double>(alpha) * h + x * b));
  };
  return pair_integral(s, s, r, hb_, &e);
}

std::complex<double> Engine::real_value(double r, std::string* note) const {
  switch (spec_.kind) {
    case ExperimentKind::SchurDiag:
      return pair_integral(rsurf_[0], rsurf_[1], r, hb_, nullptr);
    case ExperimentKind::SchurCrossTT: {
      const double d = spec_.t->real() - spec_.t2->real();
      return sinc(kTwoPi * d * r * r) * pair_integral(rsurf_[0], rsurf_[1], r, hb_, nullptr);
    }
    case ExperimentKind::SchurCrossPiRho: {
      const double t = spec_.t->real();
      return sinc(kTwoPi * t * r * r) / (2 * r) * real_surface_char(rsurf_[0], r);
    }
    case ExperimentKind::SchurOnedim: {
      double prod = 1;
      for (std::size_t i = 0; i < spec_.z1.size(); ++i) {
        prod *= sinc(kTwoPi * (spec_.z1[i].real() - spec_.z2[i].real()) * r);
        prod *= sinc(kTwoPi * (spec_.x1[i].real() - spec_.x2[i].real()) * r);
      }
      return prod;
    }
    case ExperimentKind::BraidingPairing: {
      const auto& p1 = spec_.functions[0].real();
      const auto& p2 = spec_.functions[1].real();
      const double h = p1.spacing();
      detail::check_alias(spec_.t->real(), r, h);
      kernels::Grid2 g1{p1.origin()[0], p1.origin()[1], p1.shape()[0], p1.shape()[1], p1.samples().data()};
      kernels::Grid2 g2{p2.origin()[0], p2.origin()[1], p2.shape()[0], p2.shape()[1], p2.samples().data()};
      const long dx = lattice_offset(p2.origin()[0], p1.origin()[0], h);
      const long dy = lattice_offset(p2.origin()[1], p1.origin()[1], h);
      const auto q = detail::real_nodes(r, h, h);
      const long lo = std::max({q.alpha_lo, -dx - (g2.nx - 1), dy - g1.ny + 1});
      const long hi = std::min({q.alpha_hi, g1.nx - 1 - dx, g2.ny - 1 + dy});
      return kernels::braiding_sum(g1, g2, h, spec_.t->real(), r, lo, hi);
    }
    case ExperimentKind::CtempConditionII: {
      const double k = to_double(*spec_.k);
      if (k == 0) return 0.0;
      const auto s = sandwich_boxes(r, k, 1);
      const double I_out = pair_integral(rsurf_[0], rsurf_[0], s.outer.ra, hb_, nullptr).real();
      double gap = 2 * s.outer.rc * I_out;
      if (s.inner.degenerate) {
        if (note) *note = "degenerate inner box; gap is the outer integral";
      } else {
        gap -= 2 * s.inner.rc * pair_integral(rsurf_[0], rsurf_[0], s.inner.ra, hb_, nullptr).real();
      }
      return gap / (2 * r * r);
    }
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(ExperimentKind k) {
  for (const auto& info : kKinds) {
    if (info.kind == k) return info.name;
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  for (const auto& info : kKinds) {
    if (s == info.name) return info.kind;
  }
  throw Error(ErrorKind::ConfigInvalid, "unknown experiment kind '" + s + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& info : kKinds) v.push_back(info.kind);
    return v;
  }();
  return kinds;
}

RadiusSchedule::RadiusSchedule(FieldDesc field, std::vector<ExactOrReal> radii)
    : field_(field), radii_(std::move(radii)) {
  if (radii_.empty()) throw Error(ErrorKind::ConfigInvalid, "empty radius schedule");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (field_.is_padic()) {
      const auto* q = std::get_if<Rational>(&radii_[i]);
      if (!q || !padic_exponent_of_power(*q, field_.p)) {
        throw Error(ErrorKind::InvalidRadius, "p-adic radii must be powers of p");
      }
    } else if (!(to_double(radii_[i]) > 0)) {
      throw Error(ErrorKind::InvalidRadius, "radii must be positive");
    }
    if (i > 0 && !(to_double(radii_[i]) > to_double(radii_[i - 1]))) {
      throw Error(ErrorKind::ConfigInvalid, "radius schedule must be strictly increasing");
    }
  }
}

long RadiusSchedule::exponent(std::size_t i) const {
  return *padic_exponent_of_power(std::get<Rational>(radii_[i]), field_.p);
}

void validate(const ExperimentSpec& spec) {
  auto fail = [&](ErrorKind k, const std::string& msg) { throw Error(k, spec.id + ": " + msg); };
  RadiusSchedule check_radii(spec.field, spec.radii);
  if (!spec.oracle_radii.empty()) RadiusSchedule check_oracle(spec.field, spec.oracle_radii);
  if (spec.functions.size() != required_functions(spec.kind)) {
    fail(ErrorKind::ConfigInvalid, "needs " + std::to_string(required_functions(spec.kind)) + " test functions");
  }
  const int want_dim = spec.kind == ExperimentKind::BraidingPairing ? 2 * spec.n : spec.n;
  for (const auto& f : spec.functions) {
    if (!(f.field() == spec.field)) fail(ErrorKind::FieldMismatch, "test function over another field");
    if (f.dim() != want_dim) {
      fail(ErrorKind::DimensionMismatch, "test function on K^" + std::to_string(f.dim()) + ", expected K^" +
                                             std::to_string(want_dim));
    }
  }
  if (!spec.field.is_padic() && spec.n != 1) fail(ErrorKind::UnsupportedOperation, "real experiments need n = 1");
  auto scalar_ok = [&](const LocalScalar& x) { return x.field() == spec.field; };
  if (spec.kind != ExperimentKind::SchurOnedim) {
    if (!spec.t) fail(ErrorKind::ConfigInvalid, "missing t");
    if (!scalar_ok(*spec.t)) fail(ErrorKind::FieldMismatch, "t over another field");
    InfDimRep nonzero(*spec.t);
  }
  if (spec.kind == ExperimentKind::SchurCrossTT) {
    if (!spec.t2) fail(ErrorKind::ConfigInvalid, "missing t2");
    if (!scalar_ok(*spec.t2)) fail(ErrorKind::FieldMismatch, "t2 over another field");
    InfDimRep nonzero(*spec.t2);
    const bool same = spec.field.is_padic() ? spec.t->exact() == spec.t2->exact() : spec.t->real() == spec.t2->real();
    if (same) fail(ErrorKind::WrongExperiment, "t1 == t2 belongs to schur_diag");
  }
  auto vec_ok = [&](const std::vector<LocalScalar>& v, const char* name) {
    if (v.size() != static_cast<std::size_t>(spec.n)) fail(ErrorKind::DimensionMismatch, std::string(name) + " needs n entries");
    for (const auto& x : v) {
      if (!scalar_ok(x)) fail(ErrorKind::FieldMismatch, std::string(name) + " over another field");
    }
  };
  if (spec.kind == ExperimentKind::SchurCrossPiRho) {
    vec_ok(spec.z1, "z");
    vec_ok(spec.x1, "x");
  }
  if (spec.kind == ExperimentKind::SchurOnedim) {
    vec_ok(spec.z1, "z");
    vec_ok(spec.x1, "x");
    vec_ok(spec.z2, "z2");
    vec_ok(spec.x2, "x2");
  }
  if (spec.kind == ExperimentKind::CtempConditionII) {
    if (!spec.k) fail(ErrorKind::ConfigInvalid, "missing k");
    if (spec.field.is_padic()) {
      const auto* kq = std::get_if<Rational>(&*spec.k);
      if (!kq || (*kq != 0 && !padic_exponent_of_power(*kq, spec.field.p))) {
        fail(ErrorKind::InvalidRadius, "k must be 0 or a power of p");
      }
    } else if (!(to_double(*spec.k) >= 0)) {
      fail(ErrorKind::InvalidRadius, "k must be nonnegative");
    }
  }
  if (!(spec.rel_tol > 0)) fail(ErrorKind::ConfigInvalid, "rel_tol must be positive");
  if (!spec.field.is_padic() && !spec.functions.empty()) {
    const double h = spec.functions[0].real().spacing();
    for (const auto& f : spec.functions) {
      if (f.real().spacing() != h) fail(ErrorKind::GridMismatch, "test functions on different grid spacings");
    }
    double tmax = std::abs(spec.t->real());
    if (spec.t2) tmax = std::max(tmax, std::abs(spec.t2->real()));
    double rmax = to_double(spec.radii.back());
    if (spec.kind == ExperimentKind::CtempConditionII) rmax = sandwich_boxes(rmax, to_double(*spec.k), 1).outer.ra;
    if (tmax * rmax > 1.0 / (2.0 * h) + 1e-9) {
      fail(ErrorKind::InvalidRadius, "largest radius exceeds the alias-free range 1/(2|t|h) = " +
                                         std::to_string(1.0 / (2.0 * h * tmax)) + " of the grid");
    }
  }
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  Engine eng(spec);
  ExperimentReport rep;
  rep.id = spec.id;
  rep.kind = to_string(spec.kind);
  rep.field = spec.field.name();
  rep.target = eng.target();
  rep.target_formula = eng.target_formula();
  rep.scale = eng.scale();
  const auto& sched = eng.schedule();
  for (std::size_t i = 0; i < sched.size(); ++i) {
    RadiusRecord rec;
    rec.r = sched.value(i);
    rec.r_text = detail::radius_text(spec.field, sched.radii()[i]);
    rec.value = eng.value(i, &rec.note);
    rec.target = rep.target;
    rec.normalizer = eng.normalizer(i);
    if (rec.value.is_exact()) {
      const CycloNumber diff = *rec.value.exact - *rec.target.exact;
      rec.exact_flag = diff.is_zero();
      rec.abs_error = std::abs(diff.to_complex());
    } else {
      rec.abs_error = std::abs(rec.value.approx - rec.target.approx);
    }
    rep.records.push_back(std::move(rec));
  }

  if (spec.field.is_padic()) {
    const long thr = *eng.threshold_exponent();
    bool any = false, all = true;
    for (std::size_t i = 0; i < sched.size(); ++i) {
      if (sched.exponent(i) < thr) continue;
      any = true;
      all = all && rep.records[i].exact_flag;
    }
    if (thr == std::numeric_limits<long>::min()) {
      rep.threshold_text = "every radius";
    } else {
      rep.threshold_text = to_string(pow_p(spec.field.p, thr));
    }
    rep.pass = any && all;
    const std::string where = thr == std::numeric_limits<long>::min() ? "at every radius" : "for r >= " + rep.threshold_text;
    rep.verdict = !any ? "no radius reaches the threshold r >= " + rep.threshold_text
                  : all ? "exact equality " + where
                        : "value differs from the target " + where;
  } else {
    const auto& recs = rep.records;
    const double tol = spec.rel_tol * rep.scale;
    const double slack = 1e-12 * std::max(1.0, rep.scale);
    bool mono = true;
    const std::size_t first = recs.size() >= 3 ? recs.size() - 3 : 0;
    for (std::size_t i = first + 1; i < recs.size(); ++i) mono = mono && recs[i].abs_error <= recs[i - 1].abs_error + slack;
    bool ok = recs.back().abs_error <= tol && mono;
    std::string why;
    if (spec.kind == ExperimentKind::CtempConditionII && to_double(*spec.k) > 0) {
      bool positive = true;
      for (std::size_t i = first; i < recs.size(); ++i) positive = positive && recs[i].value.approx.real() > 0;
      ok = ok && positive;
      if (!positive) why = "; gap not positive";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "final error %.3g vs tolerance %.3g; last-3 errors %s", recs.back().abs_error, tol,
                  mono ? "nonincreasing" : "not monotone");
    rep.pass = ok;
    rep.verdict = std::string(buf) + why;
  }
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

OracleReport run_oracle(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentSpec sub = spec;
  if (!spec.oracle_radii.empty()) sub.radii = spec.oracle_radii;
  Engine eng(sub);
  OracleReport rep;
  rep.id = spec.id;
  rep.kind = to_string(spec.kind);
  rep.tolerance = spec.field.is_padic() ? 0.0 : 0.01 * eng.scale();
  rep.pass = true;
  const auto& sched = eng.schedule();
  for (std::size_t i = 0; i < sched.size(); ++i) {
    OracleRecord rec;
    rec.r = sched.value(i);
    rec.r_text = detail::radius_text(spec.field, sched.radii()[i]);
    rec.fast = eng.value(i, nullptr);
    rec.oracle = detail::oracle_value(sub, sched.radii()[i]);
    if (rec.fast.is_exact() && rec.oracle.is_exact()) {
      const CycloNumber diff = *rec.fast.exact - *rec.oracle.exact;
      rec.agree = diff.is_zero();
      rec.abs_diff = std::abs(diff.to_complex());
    } else {
      rec.abs_diff = std::abs(rec.fast.approx - rec.oracle.approx);
      rec.agree = rec.abs_diff <= rep.tolerance;
    }
    rep.pass = rep.pass && rec.agree;
    rep.records.push_back(std::move(rec));
  }
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

ExperimentSpec with_n(ExperimentSpec spec) {
  if (spec.functions.empty()) {
    spec.n = static_cast<int>(spec.z1.size());
  } else {
    spec.n = spec.functions[0].dim() / (spec.kind == ExperimentKind::BraidingPairing ? 2 : 1);
  }
  return spec;
}

ExperimentSpec base_spec(ExperimentKind kind, const RadiusSchedule& s) {
  ExperimentSpec spec;
  spec.id = to_string(kind);
  spec.kind = kind;
  spec.field = s.field();
  spec.radii = s.radii();
  return spec;
}

}  // namespace

ExperimentReport schur_diag(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                            const TestFunction& f3, const TestFunction& f4, const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::SchurDiag, s);
  spec.t = t;
  spec.functions = {f1, f2, f3, f4};
  return run_experiment(with_n(std::move(spec)));
}

RatioReport ctemp_condition_i(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                              const TestFunction& g1, const TestFunction& g2, const RadiusSchedule& s,
                              double rel_tol) {
  const auto num = schur_diag(t, f1, f2, f1, f2, s);
  const auto den = schur_diag(t, g1, g2, g1, g2, s);
  RatioReport out;
  const double tden = den.target.approx.real();
  if (!(tden > 0)) throw Error(ErrorKind::ConfigInvalid, "reference vectors must be nonzero");
  out.target = num.target.approx.real() / tden;
  for (std::size_t i = 0; i < num.records.size(); ++i) {
    const auto& a = num.records[i];
    const auto& b = den.records[i];
    const double d = b.value.approx.real();
    out.records.push_back({a.r_text, a.r, a.value, b.value,
                           d != 0 ? a.value.approx.real() / d : std::numeric_limits<double>::quiet_NaN()});
  }
  const auto& last = out.records.back();
  std::ostringstream os;
  if (s.field().is_padic()) {
    const bool cross = *last.num.exact * *den.target.exact == *last.den.exact * *num.target.exact;
    out.pass = num.pass && den.pass && cross;
    os << "ratio at r=" << last.r_text << (cross ? " equals " : " differs from ") << "the target exactly";
  } else {
    const double err = std::abs(last.ratio - out.target);
    out.pass = std::isfinite(last.ratio) && err <= rel_tol * out.target;
    os << "final ratio " << last.ratio << " vs target " << out.target << " (tolerance " << rel_tol * out.target
       << ")";
  }
  out.verdict = os.str();
  return out;
}

ExperimentReport schur_cross_tt(const LocalScalar& t1, const LocalScalar& t2, const TestFunction& f1,
                                const TestFunction& f2, const TestFunction& f3, const TestFunction& f4,
                                const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::SchurCrossTT, s);
  spec.t = t1;
  spec.t2 = t2;
  spec.functions = {f1, f2, f3, f4};
  return run_experiment(with_n(std::move(spec)));
}

ExperimentReport schur_cross_pi_rho(const LocalScalar& t, const std::vector<LocalScalar>& z,
                                    const std::vector<LocalScalar>& x, const TestFunction& f1,
                                    const TestFunction& f2, const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::SchurCrossPiRho, s);
  spec.t = t;
  spec.z1 = z;
  spec.x1 = x;
  spec.functions = {f1, f2};
  return run_experiment(with_n(std::move(spec)));
}

ExperimentReport schur_onedim(const std::vector<LocalScalar>& z1, const std::vector<LocalScalar>& x1,
                              const std::vector<LocalScalar>& z2, const std::vector<LocalScalar>& x2,
                              const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::SchurOnedim, s);
  spec.z1 = z1;
  spec.x1 = x1;
  spec.z2 = z2;
  spec.x2 = x2;
  return run_experiment(with_n(std::move(spec)));
}

ExperimentReport braiding_pairing(const LocalScalar& t, const TestFunction& phi1, const TestFunction& phi2,
                                  const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::BraidingPairing, s);
  spec.t = t;
  spec.functions = {phi1, phi2};
  return run_experiment(with_n(std::move(spec)));
}

ExperimentReport ctemp_condition_ii(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                                    const ExactOrReal& k, const RadiusSchedule& s) {
  auto spec = base_spec(ExperimentKind::CtempConditionII, s);
  spec.t = t;
  spec.k = k;
  spec.functions = {f1, f2};
  return run_experiment(with_n(std::move(spec)));
}

}  // namespace hschur
