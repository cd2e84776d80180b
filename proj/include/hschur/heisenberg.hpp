#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hschur/error.hpp"
#include "hschur/field.hpp"

namespace hschur {

/// (a, b, c) in K^n x K^n x K. S is Rational on Q_p and double on R.
template <class S>
struct GroupElement {
  std::vector<S> a, b;
  S c{};

  int n() const { return static_cast<int>(a.size()); }

  static GroupElement identity(int n) { return {std::vector<S>(n, S(0)), std::vector<S>(n, S(0)), S(0)}; }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

using PadicElement = GroupElement<Rational>;
using RealElement = GroupElement<double>;

template <class S>
S dot(const std::vector<S>& x, const std::vector<S>& y) {
  S s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// (a1 + a2, b1 + b2, c1 + c2 + a1.b2)
template <class S>
GroupElement<S> mul(const GroupElement<S>& g1, const GroupElement<S>& g2) {
  if (g1.n() != g2.n() || g1.b.size() != g2.b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "group elements of different n");
  }
  GroupElement<S> r;
  r.a.resize(g1.n());
  r.b.resize(g1.n());
  for (int i = 0; i < g1.n(); ++i) {
    r.a[i] = g1.a[i] + g2.a[i];
    r.b[i] = g1.b[i] + g2.b[i];
  }
  r.c = g1.c + g2.c + dot(g1.a, g2.b);
  return r;
}

/// (-a, -b, -c + a.b)
template <class S>
GroupElement<S> inv(const GroupElement<S>& g) {
  GroupElement<S> r;
  for (const auto& x : g.a) r.a.push_back(-x);
  for (const auto& x : g.b) r.b.push_back(-x);
  r.c = -g.c + dot(g.a, g.b);
  return r;
}

/// F = B(r) x B(r) x B(r^2) in H_n(K).
struct FolnerBox {
  FieldDesc field;
  int n = 1;
  ExactOrReal r;  // p-adic: a power of p

  ExactOrReal measure() const;
  /// Radius exponent m with r = p^m (p-adic only).
  long exponent() const;
  bool contains(const PadicElement& g) const;
  bool contains(const RealElement& g) const;
};

FolnerBox folner_box(const FieldDesc& field, const ExactOrReal& r, int n);

/// A box B(ra)^n x B(rb)^n x B(rc) of the real group.
struct RealBox {
  double ra = 0, rb = 0, rc = 0;
  bool degenerate = false;
  bool contains(const RealElement& g) const;
  double measure(int n) const;
};

/// For r = p^m and conjugator bound k = p^j: whether g2^{-1} F g1 = F for all
/// g1, g2 whose coordinates have norm <= k. Holds iff r >= k and r^2 >= k.
bool ultrametric_symdiff_empty(unsigned long p, long m, long j);

/// Witness (g1, g2, x) with x in F and g2^{-1} x g1 outside F (or the reverse
/// inclusion failing), searched over coordinate values {0, +-p^{-j}} and
/// points built from the box corners; nullopt if none is found.
struct SymdiffWitness {
  PadicElement g1, g2, x;
  bool x_in_f = false;
};
std::optional<SymdiffWitness> find_symdiff_witness(unsigned long p, long m, long j, int n);

struct Sandwich {
  RealBox inner, outer;
};
Sandwich sandwich_boxes(double r, double k, int n);

/// (mu(outer) - mu(inner)) / mu(F); with a degenerate inner box, mu(outer) / mu(F).
double symdiff_ratio_bound(double r, double k, int n);

struct MonteCarloEstimate {
  double value = 0;
  double stderr_ = 0;
  std::uint64_t hits = 0, samples = 0;
};

/// Uniform samples in the outer sandwich box; counts points of g2^{-1} F g1 (symdiff) F.
MonteCarloEstimate symdiff_ratio_montecarlo(double r, double k, int n, const RealElement& g1,
                                            const RealElement& g2, std::uint64_t samples,
                                            std::uint64_t seed);

}  // namespace hschur
