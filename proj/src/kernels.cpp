#include "hschur/kernels.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hschur::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> twiddles(std::size_t N) {
  std::vector<cplx> tw(N);
  for (std::size_t m = 0; m < N; ++m) {
    tw[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / static_cast<double>(N));
  }
  return tw;
}

void dft_row(const cplx* in, std::size_t len, std::size_t N, const std::vector<cplx>& tw, cplx* out) {
  const std::size_t half = N / 2;
  for (std::size_t k = 0; k < N; ++k) {
    // (k - N/2) j mod N, accumulated without overflow
    const std::size_t step = (k + N - half % N) % N;
    std::size_t m = 0;
    cplx acc = 0;
    for (std::size_t j = 0; j < len; ++j) {
      acc += in[j] * tw[m];
      m += step;
      if (m >= N) m -= N;
    }
    out[k] = acc;
  }
}

void surface_row(const SurfaceRow& row, double t, double h, const std::vector<double>& b, cplx* out) {
  for (std::size_t q = 0; q < b.size(); ++q) {
    const double w = -kTwoPi * t * b[q];
    const cplx step = std::polar(1.0, w * h);
    cplx ph = std::polar(1.0, w * row.x0);
    cplx acc = 0;
    for (std::size_t j = 0; j < row.g.size(); ++j) {
      // re-anchor periodically so the recurrence does not drift
      if ((j & 63) == 0 && j != 0) ph = std::polar(1.0, w * (row.x0 + static_cast<double>(j) * h));
      acc += row.g[j] * ph;
      ph *= step;
    }
    out[q] = h * acc;
  }
}

// Lattice-difference table K[k - k_lo] = int_{-r}^{r} cos(2 pi t u_k b) sinc^2(pi t b h) db,
// u_k = k h + shift: the b-integral after integrating K_r over a pair of grid cells.
struct KernelTable {
  long k_lo = 0;
  std::vector<double> values;
  double at(long k) const { return values[static_cast<std::size_t>(k - k_lo)]; }
};

KernelTable kernel_table(double h, double t, double r, double shift, long k_lo, long k_hi, Exec exec) {
  using Rule = boost::math::quadrature::gauss<double, 8>;
  const double umax = std::max(std::abs(k_lo * h + shift), std::abs(k_hi * h + shift)) + h;
  // panels of at most half an oscillation of the fastest cosine
  const long panels = std::max(4L, static_cast<long>(std::ceil(2.0 * r * std::abs(t) * umax * 2.0)) + 4);
  const double width = 2.0 * r / static_cast<double>(panels);
  std::vector<double> nodes, weights;
  for (long pnl = 0; pnl < panels; ++pnl) {
    const double mid = -r + (static_cast<double>(pnl) + 0.5) * width;
    auto add = [&](double x, double w) {
      const double b = mid + 0.5 * width * x;
      const double z = std::numbers::pi * t * b * h;
      const double sc = z == 0.0 ? 1.0 : std::sin(z) / z;
      nodes.push_back(b);
      weights.push_back(0.5 * width * w * sc * sc);
    };
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();
    for (std::size_t q = 0; q < xs.size(); ++q) {
      if (xs[q] == 0.0) {
        add(0.0, ws[q]);
      } else {
        add(xs[q], ws[q]);
        add(-xs[q], ws[q]);
      }
    }
  }
  KernelTable tab;
  tab.k_lo = k_lo;
  tab.values.assign(static_cast<std::size_t>(k_hi - k_lo + 1), 0.0);
  auto one = [&](long k) {
    const double u = static_cast<double>(k) * h + shift;
    double acc = 0;
    for (std::size_t q = 0; q < nodes.size(); ++q) acc += weights[q] * std::cos(kTwoPi * t * u * nodes[q]);
    tab.values[static_cast<std::size_t>(k - k_lo)] = acc;
  };
  const long n = k_hi - k_lo + 1;
  if (exec == Exec::Serial) {
    for (long k = k_lo; k <= k_hi; ++k) one(k);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) one(k_lo + i);
  }
  return tab;
}

cplx braiding_alpha(const Grid2& p1, const Grid2& p2, double h, const KernelTable& K, long alpha) {
  const long dx = std::lround((p2.x0 - p1.x0) / h);
  const long dy = std::lround((p2.y0 - p1.y0) / h);
  cplx acc = 0;
  for (long i = 0; i < p2.nx; ++i) {
    const long i1 = i + alpha + dx;
    if (i1 < 0 || i1 >= p1.nx) continue;
    for (long j = 0; j < p2.ny; ++j) {
      const long j1 = j - alpha + dy;
      if (j1 < 0 || j1 >= p1.ny) continue;
      const cplx v = p1.at(i1, j1) * std::conj(p2.at(i, j));
      if (v == cplx(0)) continue;
      acc += v * K.at(alpha + i - j);
    }
  }
  return acc * h * h;
}

}  // namespace

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void dft_rows(const cplx* in, std::size_t rows, std::size_t len, std::size_t N, cplx* out, Exec exec) {
  const auto tw = twiddles(N);
  if (exec == Exec::Serial) {
    for (std::size_t r = 0; r < rows; ++r) dft_row(in + r * len, len, N, tw, out + r * N);
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows); ++r) {
    dft_row(in + r * len, len, N, tw, out + r * N);
  }
}

std::vector<cplx> surface_matrix(const std::vector<SurfaceRow>& rows, double t, double h,
                                 const std::vector<double>& b_nodes, Exec exec) {
  const std::size_t nb = b_nodes.size();
  std::vector<cplx> out(rows.size() * nb);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < rows.size(); ++i) surface_row(rows[i], t, h, b_nodes, out.data() + i * nb);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows.size()); ++i) {
    surface_row(rows[i], t, h, b_nodes, out.data() + i * nb);
  }
  return out;
}

cplx braiding_sum(const Grid2& phi1, const Grid2& phi2, double h, double t, double r, long alpha_lo,
                  long alpha_hi, Exec exec) {
  if (alpha_hi < alpha_lo) return 0;
  const long n = alpha_hi - alpha_lo + 1;
  const KernelTable K = kernel_table(h, t, r, phi2.x0 - phi2.y0, alpha_lo - (phi2.ny - 1), alpha_hi + phi2.nx - 1, exec);
  std::vector<cplx> part(n);
  const double q = r / h;
  const long edge = std::abs(q - std::round(q)) < 1e-9 ? std::lround(q) : -1;
  auto one = [&](long k) {
    const long alpha = alpha_lo + k;
    const double w = (std::labs(alpha) == edge) ? 0.5 * h : h;
    part[k] = w * braiding_alpha(phi1, phi2, h, K, alpha);
  };
  if (exec == Exec::Serial) {
    for (long k = 0; k < n; ++k) one(k);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) one(k);
  }
  cplx total = 0;
  for (const auto& v : part) total += v;
  return total;
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace hschur::kernels
