#pragma once

#include <variant>
#include <vector>

#include "hschur/heisenberg.hpp"
#include "hschur/kernels.hpp"
#include "hschur/test_function.hpp"

namespace hschur {

/// rho_{z,x}(a, b, c) = chi(z.a + x.b).
struct OneDimRep {
  std::vector<LocalScalar> z, x;
};

/// (pi_t(a, b, c) f)(x) = chi(t (c - x.b)) f(x - a), t != 0.
struct InfDimRep {
  LocalScalar t;
  explicit InfDimRep(LocalScalar t);
};

/// Group element of either path, tagged by the field.
using AnyElement = std::variant<PadicElement, RealElement>;

UnitPhase rho_eval(const OneDimRep& rep, const AnyElement& g);
TestFunction pi_apply(const InfDimRep& rep, const AnyElement& g, const TestFunction& f);
ComplexValue matrix_coeff(const InfDimRep& rep, const TestFunction& f1, const TestFunction& f2,
                          const AnyElement& g);

/// Lazy evaluator of M_t(a, b) = int chi(-t x.b) f1(x - a) conj(f2(x)) dx on a
/// real grid (n = 1): one row g_a(x) = f1(x - a) conj(f2(x)) per lattice a.
class RealSurface {
 public:
  RealSurface(double t, const RealGrid& f1, const RealGrid& f2);

  double t() const { return t_; }
  double spacing() const { return h_; }
  /// Lattice indices alpha (a = alpha h) whose row is not identically zero.
  long alpha_min() const { return alpha_min_; }
  long alpha_max() const { return alpha_max_; }
  const kernels::SurfaceRow& row(long alpha) const;
  std::complex<double> operator()(long alpha, double b) const;

 private:
  double t_, h_;
  long alpha_min_ = 0, alpha_max_ = -1;
  std::vector<kernels::SurfaceRow> rows_;
};

/// M_t as a closed-form ball-character sum on Q_p^{2n} (a first, then b), or lazily on R.
struct CoeffSurface {
  std::variant<PadicBallChar, RealSurface> data;
};

CoeffSurface coeff_surface(const InfDimRep& rep, const TestFunction& f1, const TestFunction& f2);
ComplexValue eval_surface(const CoeffSurface& s, const std::vector<LocalScalar>& a,
                          const std::vector<LocalScalar>& b);

/// (pi_t(g^{-1}) (x) pi_t(g)) phi (x, y) = chi(t (a + x - y).b) phi(x + a, y - a).
TestFunction braiding_apply(const InfDimRep& rep, const AnyElement& g, const TestFunction& phi);

}  // namespace hschur
