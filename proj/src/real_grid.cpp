#include "hschur/real_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hschur/error.hpp"
#include "hschur/kernels.hpp"

namespace hschur {

namespace {

constexpr double kLatticeTol = 1e-6;

long product(const std::vector<long>& s) {
  long n = 1;
  for (long v : s) n *= v;
  return n;
}

// Advance a row-major multi-index; false once it wraps around.
bool next_index(std::vector<long>& idx, const std::vector<long>& shape) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < shape[i]) return true;
    idx[i] = 0;
  }
  return false;
}

long round_to_long(double x) { return std::lround(x); }

bool is_lattice_multiple(double x, double h, long* k) {
  const double q = x / h;
  const long r = round_to_long(q);
  if (std::abs(q - static_cast<double>(r)) > kLatticeTol) return false;
  if (k) *k = r;
  return true;
}

}  // namespace

double AxisProfile::operator()(double x) const {
  if (x < lo || x > hi) return 0.0;
  if (kind == Kind::Indicator) return 1.0;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  return 1.0 - std::abs(x - mid) / half;
}

RealGrid::RealGrid(std::vector<double> origin, double h, std::vector<long> shape, std::vector<cplx> samples)
    : origin_(std::move(origin)), h_(h), shape_(std::move(shape)), samples_(std::move(samples)) {
  if (!(h_ > 0)) throw Error(ErrorKind::GridMismatch, "grid spacing must be positive");
  if (origin_.size() != shape_.size()) throw Error(ErrorKind::DimensionMismatch, "origin/shape arity");
  for (long s : shape_) {
    if (s < 0) throw Error(ErrorKind::GridMismatch, "negative extent");
  }
  if (static_cast<long>(samples_.size()) != product(shape_)) {
    throw Error(ErrorKind::GridMismatch, "sample count does not match shape");
  }
}

RealGrid RealGrid::from_profiles(const std::vector<AxisProfile>& axes, double h, cplx amplitude) {
  std::vector<double> origin;
  std::vector<long> shape;
  for (const auto& ax : axes) {
    long k = 0;
    if (!is_lattice_multiple(ax.lo, h, &k)) {
      throw Error(ErrorKind::GridMismatch, "profile endpoint is not a multiple of h");
    }
    const long n = std::max(0L, round_to_long((ax.hi - ax.lo) / h));
    origin.push_back(static_cast<double>(k) * h + 0.5 * h);
    shape.push_back(n);
  }
  std::vector<cplx> samples(product(shape));
  std::vector<long> idx(shape.size(), 0);
  if (!samples.empty()) {
    std::size_t flat = 0;
    do {
      double v = 1.0;
      for (std::size_t i = 0; i < axes.size(); ++i) v *= axes[i](origin[i] + static_cast<double>(idx[i]) * h);
      samples[flat++] = amplitude * v;
    } while (next_index(idx, shape));
  }
  RealGrid g(std::move(origin), h, std::move(shape), std::move(samples));
  g.profiles_ = axes;
  g.amplitude_ = amplitude;
  return g;
}

RealGrid RealGrid::resampled(double h) const {
  if (!profiles_) throw Error(ErrorKind::UnsupportedOperation, "grid has no analytic profile to resample");
  return from_profiles(*profiles_, h, amplitude_);
}

std::size_t RealGrid::flat(const std::vector<long>& idx) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < shape_.size(); ++i) f = f * shape_[i] + idx[i];
  return f;
}

cplx RealGrid::at_point(const std::vector<double>& x) const {
  std::vector<long> idx(shape_.size());
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    long k = 0;
    if (!is_lattice_multiple(x[i] - origin_[i], h_, &k)) {
      throw Error(ErrorKind::GridMismatch, "point is off the grid lattice");
    }
    if (k < 0 || k >= shape_[i]) return 0.0;
    idx[i] = k;
  }
  return samples_[flat(idx)];
}

long lattice_offset(double o1, double o2, double h) {
  long k = 0;
  if (!is_lattice_multiple(o1 - o2, h, &k)) throw Error(ErrorKind::GridMismatch, "incommensurable grid origins");
  return k;
}

cplx inner(const RealGrid& f, const RealGrid& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "grids of different dimension");
  if (std::abs(f.spacing() - g.spacing()) > kLatticeTol * f.spacing()) {
    throw Error(ErrorKind::GridMismatch, "grids with different spacing");
  }
  const int l = f.dim();
  const double h = f.spacing();
  // overlap box in f's index space
  std::vector<long> off(l), lo(l), hi(l);
  for (int i = 0; i < l; ++i) {
    off[i] = lattice_offset(g.origin()[i], f.origin()[i], h);  // g index j <-> f index j + off
    lo[i] = std::max(0L, off[i]);
    hi[i] = std::min(f.shape()[i], g.shape()[i] + off[i]);
    if (hi[i] <= lo[i]) return 0.0;
  }
  std::vector<long> ext(l), idx(l, 0), fi(l), gi(l);
  for (int i = 0; i < l; ++i) ext[i] = hi[i] - lo[i];
  cplx acc = 0;
  do {
    for (int i = 0; i < l; ++i) {
      fi[i] = lo[i] + idx[i];
      gi[i] = fi[i] - off[i];
    }
    acc += f.samples()[f.flat(fi)] * std::conj(g.samples()[g.flat(gi)]);
  } while (next_index(idx, ext));
  return acc * std::pow(h, l);
}

double norm_sq(const RealGrid& f) {
  double s = 0;
  for (const auto& v : f.samples()) s += std::norm(v);
  return s * std::pow(f.spacing(), f.dim());
}

RealGrid operator*(RealGrid f, cplx c) {
  for (auto& v : f.samples_) v *= c;
  f.amplitude_ *= c;
  return f;
}

RealGrid translate(const RealGrid& f, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != f.dim()) throw Error(ErrorKind::DimensionMismatch, "translation arity");
  RealGrid g = f;
  for (int i = 0; i < f.dim(); ++i) {
    long k = 0;
    if (!is_lattice_multiple(a[i], f.spacing(), &k)) {
      throw Error(ErrorKind::GridMismatch, "translation is not a lattice multiple of h");
    }
    g.origin_[i] += static_cast<double>(k) * f.spacing();
    if (g.profiles_) {
      (*g.profiles_)[i].lo += static_cast<double>(k) * f.spacing();
      (*g.profiles_)[i].hi += static_cast<double>(k) * f.spacing();
    }
  }
  return g;
}

RealGrid modulate(const RealGrid& f, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != f.dim()) throw Error(ErrorKind::DimensionMismatch, "frequency arity");
  std::vector<cplx> s = f.samples();
  std::vector<long> idx(f.dim(), 0);
  if (!s.empty()) {
    std::size_t k = 0;
    do {
      double ph = 0;
      for (int i = 0; i < f.dim(); ++i) ph += xi[i] * f.node(i, idx[i]);
      s[k++] *= std::polar(1.0, 2.0 * std::numbers::pi * ph);
    } while (next_index(idx, f.shape()));
  }
  return RealGrid(f.origin(), f.spacing(), f.shape(), std::move(s));
}

RealGrid conj(const RealGrid& f) {
  std::vector<cplx> s = f.samples();
  for (auto& v : s) v = std::conj(v);
  return RealGrid(f.origin(), f.spacing(), f.shape(), std::move(s));
}

RealGrid partial_fourier(const RealGrid& f, int first, int count) {
  if (first < 0 || count < 0 || first + count > f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "partial Fourier block out of range");
  }
  const double h = f.spacing();
  const double inv = 1.0 / (h * h);
  const long N = round_to_long(inv);
  if (std::abs(inv - static_cast<double>(N)) > kLatticeTol * inv || N % 2 != 0) {
    throw Error(ErrorKind::GridMismatch, "1/h^2 must be an even integer for the self-dual lattice");
  }
  RealGrid cur = f;
  for (int axis = first; axis < first + count; ++axis) {
    const long len = cur.shape()[axis];
    if (len > N) throw Error(ErrorKind::GridMismatch, "grid wider than the dual period");
    // Move `axis` last: rows = product of the other extents.
    const int l = cur.dim();
    std::vector<long> outer_shape;
    for (int i = 0; i < l; ++i) {
      if (i != axis) outer_shape.push_back(cur.shape()[i]);
    }
    const long rows = product(outer_shape);
    std::vector<cplx> in(rows * len);
    std::vector<long> idx(l, 0);
    if (!cur.samples().empty()) {
      std::size_t k = 0;
      do {
        long row = 0;
        for (int i = 0; i < l; ++i) {
          if (i != axis) row = row * cur.shape()[i] + idx[i];
        }
        in[row * len + idx[axis]] = cur.samples()[k++];
      } while (next_index(idx, cur.shape()));
    }
    std::vector<cplx> out(rows * N);
    kernels::dft_rows(in.data(), rows, len, N, out.data());

    // y_k = -(N/2) h + k h;  exp(-2 pi i y_k x_j) = exp(-2 pi i y_k o) * tw
    const double o = cur.origin()[axis];
    std::vector<double> origin = cur.origin();
    std::vector<long> shape = cur.shape();
    origin[axis] = -static_cast<double>(N / 2) * h;
    shape[axis] = N;
    std::vector<cplx> samples(rows * N);
    std::vector<cplx> pre(N);
    for (long k = 0; k < N; ++k) {
      const double y = origin[axis] + static_cast<double>(k) * h;
      pre[k] = h * std::polar(1.0, -2.0 * std::numbers::pi * y * o);
    }
    std::vector<long> oidx(l, 0);
    std::size_t k = 0;
    do {
      long row = 0;
      for (int i = 0; i < l; ++i) {
        if (i != axis) row = row * shape[i] + oidx[i];
      }
      samples[k++] = out[row * N + oidx[axis]] * pre[oidx[axis]];
    } while (next_index(oidx, shape));
    cur = RealGrid(std::move(origin), h, std::move(shape), std::move(samples));
  }
  return cur;
}

RealGrid fourier(const RealGrid& f) { return partial_fourier(f, 0, f.dim()); }

RealGrid tensor(const RealGrid& f, const RealGrid& g) {
  if (std::abs(f.spacing() - g.spacing()) > kLatticeTol * f.spacing()) {
    throw Error(ErrorKind::GridMismatch, "tensor of grids with different spacing");
  }
  std::vector<double> origin = f.origin();
  origin.insert(origin.end(), g.origin().begin(), g.origin().end());
  std::vector<long> shape = f.shape();
  shape.insert(shape.end(), g.shape().begin(), g.shape().end());
  std::vector<cplx> s;
  s.reserve(f.size() * g.size());
  for (const auto& a : f.samples()) {
    for (const auto& b : g.samples()) s.push_back(a * b);
  }
  return RealGrid(std::move(origin), f.spacing(), std::move(shape), std::move(s));
}

RealGrid flip(const RealGrid& phi) {
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "flip needs an even dimension");
  const int n = phi.dim() / 2;
  std::vector<double> origin(phi.origin().begin() + n, phi.origin().end());
  origin.insert(origin.end(), phi.origin().begin(), phi.origin().begin() + n);
  std::vector<long> shape(phi.shape().begin() + n, phi.shape().end());
  shape.insert(shape.end(), phi.shape().begin(), phi.shape().begin() + n);
  const long nx = product(std::vector<long>(phi.shape().begin(), phi.shape().begin() + n));
  const long ny = product(std::vector<long>(phi.shape().begin() + n, phi.shape().end()));
  std::vector<cplx> s(phi.size());
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) s[j * nx + i] = phi.samples()[i * ny + j];
  }
  return RealGrid(std::move(origin), phi.spacing(), std::move(shape), std::move(s));
}

namespace {

// psi(a, x) = phi(x - a, x)  or  phi(a - x, x) on the lattice.
RealGrid shear(const RealGrid& phi, bool prime_variant) {
  if (phi.dim() % 2 != 0) throw Error(ErrorKind::OddDimension, "Fourier-Wigner needs dimension 2n");
  const int n = phi.dim() / 2;
  const double h = phi.spacing();
  std::vector<double> origin(2 * n);
  std::vector<long> shape(2 * n);
  for (int i = 0; i < n; ++i) {
    const long su = phi.shape()[i], sv = phi.shape()[n + i];
    const double ou = phi.origin()[i], ov = phi.origin()[n + i];
    shape[i] = std::max(0L, su + sv - 1);
    origin[i] = prime_variant ? ou + ov : ov - ou - static_cast<double>(su - 1) * h;
    shape[n + i] = sv;
    origin[n + i] = ov;
  }
  std::vector<cplx> s(product(shape));
  RealGrid out(origin, h, shape, std::move(s));
  if (phi.size() == 0) return out;
  std::vector<long> idx(2 * n, 0), oidx(2 * n);
  std::size_t k = 0;
  do {
    for (int i = 0; i < n; ++i) {
      const long u = idx[i], v = idx[n + i];
      oidx[i] = prime_variant ? u + v : v - u + phi.shape()[i] - 1;
      oidx[n + i] = v;
    }
    out.samples()[out.flat(oidx)] = phi.samples()[k++];
  } while (next_index(idx, phi.shape()));
  return out;
}

}  // namespace

RealGrid fourier_wigner(const RealGrid& phi) {
  const int n = phi.dim() / 2;
  return partial_fourier(shear(phi, false), n, n);
}

RealGrid fourier_wigner_prime(const RealGrid& phi) {
  const int n = phi.dim() / 2;
  return partial_fourier(shear(phi, true), n, n);
}

}  // namespace hschur
