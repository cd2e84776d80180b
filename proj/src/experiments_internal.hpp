#pragma once

// Shared between the fast paths, the oracles and the reports.

#include <string>
#include <vector>

#include "hschur/experiments.hpp"

namespace hschur::detail {

/// Representatives of B(p^R)^n / p^s Z_p^n (s >= -R), each cell of measure p^{-n s}.
std::vector<RationalVec> cell_reps(unsigned long p, int n, long R, long s);

/// Real quadrature nodes: lattice a = alpha h with |a| <= r (half weight at +-r),
/// and midpoints of the uniform partition of [-r, r] for b.
struct RealNodes {
  long alpha_lo = 0, alpha_hi = -1;
  double h = 0;
  bool edge_exact = false;  // +-r falls on the lattice
  std::vector<double> b;
  double b_weight = 0;
  double a_weight(long alpha) const;
};
RealNodes real_nodes(double r, double h, double hb);

/// sin(x) / x with the value 1 at 0.
double sinc(double x);

/// Throws unless |t| r <= 1 / (2 h), where the lattice sum in x stops aliasing.
void check_alias(double t, double r, double h);

std::string radius_text(const FieldDesc& f, const ExactOrReal& r);

}  // namespace hschur::detail

namespace hschur::detail {

/// Reference value of the experiment at one radius (see oracle.cpp).
ComplexValue oracle_value(const ExperimentSpec& spec, const ExactOrReal& r);

}  // namespace hschur::detail
