#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

// Hot loops of the Real path and the Monte Carlo sampler. Each kernel has a
// serial reference and an OpenMP version; the OpenMP version reduces per-chunk
// partials in index order, so both return bit-identical results.
namespace hschur::kernels {

using cplx = std::complex<double>;

enum class Exec { Serial, Parallel };

/// out[r * N + k] = sum_j in[r * len + j] * exp(-2 pi i (k - N/2) j / N).
void dft_rows(const cplx* in, std::size_t rows, std::size_t len, std::size_t N, cplx* out,
              Exec exec = Exec::Parallel);

/// Samples g(x0 + j h), j = 0 .. g.size() - 1, of one slice x -> g_a(x).
struct SurfaceRow {
  double x0 = 0;
  std::vector<cplx> g;
};

/// out[i * nb + q] = h * sum_j rows[i].g[j] * exp(-2 pi i t x_j b_q).
std::vector<cplx> surface_matrix(const std::vector<SurfaceRow>& rows, double t, double h,
                                 const std::vector<double>& b_nodes, Exec exec = Exec::Parallel);

/// Grid function on a 2-d lattice, values at (x0 + i h, y0 + j h), row-major in i.
struct Grid2 {
  double x0 = 0, y0 = 0;
  long nx = 0, ny = 0;
  const cplx* data = nullptr;
  cplx at(long i, long j) const { return data[i * ny + j]; }
};

/// sum over alpha in [alpha_lo, alpha_hi] of w(alpha) * sum_{x, y}
///   phi1(x + alpha h, y - alpha h) conj(phi2(x, y)) K(alpha h + x - y) * h^2
/// with w = h (half weight at +-r when r is on the lattice) and
///   K(u) = int_{-r}^{r} exp(2 pi i t u b) sinc^2(pi t b h) db,
/// the b-integral once the samples are read as cell-constant functions.
/// phi1 and phi2 must share the lattice (their origins differ by multiples of h).
cplx braiding_sum(const Grid2& phi1, const Grid2& phi2, double h, double t, double r, long alpha_lo,
                  long alpha_hi, Exec exec = Exec::Parallel);

/// Counter-based generator: the i-th uniform in [0, 1) for a given seed.
double counter_uniform(std::uint64_t seed, std::uint64_t index);

/// Number of sample indices i in [0, n) for which pred(i) holds; pred must be pure.
template <class Pred>
std::uint64_t count_if_index(std::uint64_t n, Pred pred, Exec exec = Exec::Parallel) {
  std::uint64_t total = 0;
  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < n; ++i) total += pred(i) ? 1 : 0;
    return total;
  }
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    total += pred(static_cast<std::uint64_t>(i)) ? 1 : 0;
  }
  return total;
}

/// Thread count used by the Parallel variants (0 leaves the OpenMP default).
void set_threads(int n);

}  // namespace hschur::kernels
