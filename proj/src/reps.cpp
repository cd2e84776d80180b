#include "hschur/reps.hpp"

#include <cmath>
#include <numbers>

#include "hschur/error.hpp"

namespace hschur {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_padic(const FieldDesc& field, const AnyElement& g) {
  if (field.is_padic() != std::holds_alternative<PadicElement>(g)) {
    throw Error(ErrorKind::FieldMismatch, "group element and representation over different fields");
  }
}

}  // namespace

InfDimRep::InfDimRep(LocalScalar t_) : t(std::move(t_)) {
  const bool zero = t.field().is_padic() ? t.exact() == 0 : t.real() == 0.0;
  if (zero) throw Error(ErrorKind::UnsupportedOperation, "pi_t needs t != 0");
}

UnitPhase rho_eval(const OneDimRep& rep, const AnyElement& g) {
  if (rep.z.empty()) throw Error(ErrorKind::DimensionMismatch, "empty rho parameters");
  const FieldDesc field = rep.z.front().field();
  require_padic(field, g);
  if (field.is_padic()) {
    const auto& e = std::get<PadicElement>(g);
    if (static_cast<std::size_t>(e.n()) != rep.z.size()) throw Error(ErrorKind::DimensionMismatch, "rho arity");
    Rational s = 0;
    for (int i = 0; i < e.n(); ++i) s += rep.z[i].exact() * e.a[i] + rep.x[i].exact() * e.b[i];
    return character(LocalScalar(field, s));
  }
  const auto& e = std::get<RealElement>(g);
  if (static_cast<std::size_t>(e.n()) != rep.z.size()) throw Error(ErrorKind::DimensionMismatch, "rho arity");
  double s = 0;
  for (int i = 0; i < e.n(); ++i) s += rep.z[i].real() * e.a[i] + rep.x[i].real() * e.b[i];
  return character(LocalScalar(s));
}

TestFunction pi_apply(const InfDimRep& rep, const AnyElement& g, const TestFunction& f) {
  require_padic(f.field(), g);
  if (f.is_padic()) {
    const auto& e = std::get<PadicElement>(g);
    const Rational& t = rep.t.exact();
    if (e.n() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "element and function arity differ");
    RationalVec xi;
    for (const auto& b : e.b) xi.push_back(-t * b);
    PadicBallChar out = modulate(translate(f.padic(), e.a), xi);
    const Rational phase = t * e.c;
    return out * CycloNumber::root_of_unity(f.padic().prime(), padic_fractional_part(phase, f.padic().prime()));
  }
  const auto& e = std::get<RealElement>(g);
  const double t = rep.t.real();
  if (e.n() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "element and function arity differ");
  std::vector<double> xi;
  for (double b : e.b) xi.push_back(-t * b);
  RealGrid out = modulate(translate(f.real(), e.a), xi);
  return out * std::polar(1.0, kTwoPi * t * e.c);
}

ComplexValue matrix_coeff(const InfDimRep& rep, const TestFunction& f1, const TestFunction& f2,
                          const AnyElement& g) {
  return inner(pi_apply(rep, g, f1), f2);
}

RealSurface::RealSurface(double t, const RealGrid& f1, const RealGrid& f2) : t_(t), h_(f1.spacing()) {
  if (f1.dim() != 1 || f2.dim() != 1) {
    throw Error(ErrorKind::UnsupportedOperation, "real coefficient surfaces are implemented for n = 1");
  }
  if (std::abs(f1.spacing() - f2.spacing()) > 1e-12) throw Error(ErrorKind::GridMismatch, "spacing differs");
  // f1(x - alpha h) is nonzero for x = o1 + (i + alpha) h; f2 lives on o2 + j h.
  const long d = lattice_offset(f1.origin()[0], f2.origin()[0], h_);  // o1 = o2 + d h
  const long n1 = f1.shape()[0], n2 = f2.shape()[0];
  // x index j (of f2) meets f1 index i = j - alpha - d
  alpha_min_ = -d - (n1 - 1);
  alpha_max_ = -d + (n2 - 1);
  for (long alpha = alpha_min_; alpha <= alpha_max_; ++alpha) {
    kernels::SurfaceRow row;
    const long j0 = std::max(0L, alpha + d), j1 = std::min(n2 - 1, alpha + d + n1 - 1);
    row.x0 = f2.node(0, j0);
    for (long j = j0; j <= j1; ++j) {
      row.g.push_back(f1.samples()[j - alpha - d] * std::conj(f2.samples()[j]));
    }
    rows_.push_back(std::move(row));
  }
}

const kernels::SurfaceRow& RealSurface::row(long alpha) const {
  static const kernels::SurfaceRow empty;
  if (alpha < alpha_min_ || alpha > alpha_max_) return empty;
  return rows_[alpha - alpha_min_];
}

std::complex<double> RealSurface::operator()(long alpha, double b) const {
  const auto m = kernels::surface_matrix({row(alpha)}, t_, h_, {b}, kernels::Exec::Serial);
  return m.empty() ? 0.0 : m[0];
}

CoeffSurface coeff_surface(const InfDimRep& rep, const TestFunction& f1, const TestFunction& f2) {
  if (!(f1.field() == f2.field())) throw Error(ErrorKind::FieldMismatch, "surface over different fields");
  if (f1.is_padic()) {
    const int n = f1.dim();
    PadicBallChar V = fourier_wigner(tensor(f1.padic(), conj(f2.padic())));
    return {dilate(V, n, n, rep.t.exact())};
  }
  return {RealSurface(rep.t.real(), f1.real(), f2.real())};
}

ComplexValue eval_surface(const CoeffSurface& s, const std::vector<LocalScalar>& a,
                          const std::vector<LocalScalar>& b) {
  if (const auto* p = std::get_if<PadicBallChar>(&s.data)) {
    RationalVec x;
    for (const auto& v : a) x.push_back(v.exact());
    for (const auto& v : b) x.push_back(v.exact());
    return ComplexValue::of((*p)(x));
  }
  const auto& rs = std::get<RealSurface>(s.data);
  const double q = a.at(0).real() / rs.spacing();
  const long alpha = std::lround(q);
  if (std::abs(q - static_cast<double>(alpha)) > 1e-6) throw Error(ErrorKind::GridMismatch, "a off the lattice");
  return ComplexValue::of(rs(alpha, b.at(0).real()));
}

TestFunction braiding_apply(const InfDimRep& rep, const AnyElement& g, const TestFunction& phi) {
  require_padic(phi.field(), g);
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "braiding acts on K^{2n}");
  const int n = phi.dim() / 2;
  if (phi.is_padic()) {
    const auto& e = std::get<PadicElement>(g);
    const Rational& t = rep.t.exact();
    const unsigned long p = phi.padic().prime();
    RationalVec shift, xi;
    for (int i = 0; i < n; ++i) shift.push_back(-e.a[i]);
    for (int i = 0; i < n; ++i) shift.push_back(e.a[i]);
    for (int i = 0; i < n; ++i) xi.push_back(t * e.b[i]);
    for (int i = 0; i < n; ++i) xi.push_back(-t * e.b[i]);
    PadicBallChar out = modulate(translate(phi.padic(), shift), xi);
    return out * CycloNumber::root_of_unity(p, padic_fractional_part(t * dot(e.a, e.b), p));
  }
  const auto& e = std::get<RealElement>(g);
  const double t = rep.t.real();
  std::vector<double> shift, xi;
  for (int i = 0; i < n; ++i) shift.push_back(-e.a[i]);
  for (int i = 0; i < n; ++i) shift.push_back(e.a[i]);
  for (int i = 0; i < n; ++i) xi.push_back(t * e.b[i]);
  for (int i = 0; i < n; ++i) xi.push_back(-t * e.b[i]);
  RealGrid out = modulate(translate(phi.real(), shift), xi);
  return out * std::polar(1.0, kTwoPi * t * dot(e.a, e.b));
}

}  // namespace hschur
