#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace hschur {

using cplx = std::complex<double>;

/// Closed-form factor along one axis, used to (re)sample a grid at any spacing.
struct AxisProfile {
  enum class Kind { Indicator, Triangle };
  Kind kind = Kind::Indicator;
  double lo = 0, hi = 1;

  double operator()(double x) const;
};

/// Function on R^l sampled at the lattice nodes origin + j h (j in the box
/// [0, shape)). Midpoint semantics: every node carries measure h^l.
class RealGrid {
 public:
  RealGrid() = default;
  RealGrid(std::vector<double> origin, double h, std::vector<long> shape, std::vector<cplx> samples);

  /// Tensor product of axis profiles sampled at the midpoints lo + (j + 1/2) h.
  /// Each lo must be a multiple of h so that different profiles share a lattice.
  static RealGrid from_profiles(const std::vector<AxisProfile>& axes, double h, cplx amplitude = 1.0);

  int dim() const { return static_cast<int>(shape_.size()); }
  double spacing() const { return h_; }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<long>& shape() const { return shape_; }
  const std::vector<cplx>& samples() const { return samples_; }
  std::vector<cplx>& samples() { return samples_; }
  std::size_t size() const { return samples_.size(); }

  /// Analytic description if the grid was built from profiles (and only translated since).
  const std::optional<std::vector<AxisProfile>>& profiles() const { return profiles_; }
  cplx amplitude() const { return amplitude_; }
  /// Resample the analytic description at a new spacing.
  RealGrid resampled(double h) const;

  std::size_t flat(const std::vector<long>& idx) const;
  /// Value at lattice point x (zero off the stored box); x must be on the lattice.
  cplx at_point(const std::vector<double>& x) const;
  /// Coordinate of node j along axis i.
  double node(int axis, long j) const { return origin_[axis] + static_cast<double>(j) * h_; }

 private:
  std::vector<double> origin_;
  double h_ = 1;
  std::vector<long> shape_;
  std::vector<cplx> samples_;
  std::optional<std::vector<AxisProfile>> profiles_;
  cplx amplitude_ = 1.0;

  friend RealGrid translate(const RealGrid&, const std::vector<double>&);
  friend RealGrid operator*(RealGrid, cplx);
};

/// Integer k with (o1 - o2) / h = k, or throws grid-mismatch.
long lattice_offset(double o1, double o2, double h);

cplx inner(const RealGrid& f, const RealGrid& g);
double norm_sq(const RealGrid& f);
RealGrid operator*(RealGrid f, cplx c);
RealGrid translate(const RealGrid& f, const std::vector<double>& a);
RealGrid modulate(const RealGrid& f, const std::vector<double>& xi);
RealGrid conj(const RealGrid& f);
/// Discrete transform onto the self-dual lattice: N = 1/h^2 nodes per axis,
/// spacing h, centered at 0. Requires 1/h^2 to be an integer.
RealGrid partial_fourier(const RealGrid& f, int first, int count);
RealGrid fourier(const RealGrid& f);
RealGrid tensor(const RealGrid& f, const RealGrid& g);
RealGrid flip(const RealGrid& phi);
RealGrid fourier_wigner(const RealGrid& phi);
RealGrid fourier_wigner_prime(const RealGrid& phi);

}  // namespace hschur
