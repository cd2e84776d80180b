#include <gtest/gtest.h>

#include <random>

#include "hschur/heisenberg.hpp"
#include "hschur/kernels.hpp"
#include "random_padic.hpp"

using namespace hschur;

namespace {

PadicElement pe(Rational a, Rational b, Rational c) { return {{a}, {b}, c}; }

PadicElement random_padic_element(std::mt19937& rng, unsigned long p, int n) {
  PadicElement g = PadicElement::identity(n);
  for (auto& x : g.a) x = testgen::small_padic(rng, p);
  for (auto& x : g.b) x = testgen::small_padic(rng, p);
  g.c = testgen::small_padic(rng, p);
  return g;
}

}  // namespace

TEST(Heisenberg, MultiplicationExamples) {
  EXPECT_EQ(mul(pe(1, 0, 0), pe(0, 1, 0)), pe(1, 1, 1));
  auto g = pe(3, Rational(1, 2), 7);
  EXPECT_EQ(mul(g, PadicElement::identity(1)), g);
  EXPECT_EQ(mul(pe(Rational(1, 2), 0, 0), pe(0, Rational(1, 2), 0)),
            pe(Rational(1, 2), Rational(1, 2), Rational(1, 4)));
  EXPECT_EQ(inv(PadicElement::identity(1)), PadicElement::identity(1));
  EXPECT_EQ(inv(pe(1, 2, 3)), pe(-1, -2, -1));
}

TEST(Heisenberg, GroupAxioms) {
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 3;
    auto x = random_padic_element(rng, 3, n), y = random_padic_element(rng, 3, n),
         z = random_padic_element(rng, 3, n);
    EXPECT_EQ(mul(mul(x, y), z), mul(x, mul(y, z)));
    EXPECT_EQ(mul(x, inv(x)), PadicElement::identity(n));
    EXPECT_EQ(mul(inv(x), x), PadicElement::identity(n));
    EXPECT_EQ(inv(inv(x)), x);
  }
}

TEST(Heisenberg, FolnerMeasures) {
  EXPECT_DOUBLE_EQ(std::get<double>(folner_box(FieldDesc::real(), 1.0, 1).measure()), 8.0);
  EXPECT_EQ(std::get<Rational>(folner_box(FieldDesc::padic(2), Rational(1), 1).measure()), 1);
  EXPECT_EQ(std::get<Rational>(folner_box(FieldDesc::padic(2), Rational(2), 1).measure()), 16);
  EXPECT_THROW(folner_box(FieldDesc::padic(2), Rational(3), 1), Error);
}

TEST(Heisenberg, UltrametricExamples) {
  EXPECT_TRUE(ultrametric_symdiff_empty(2, 1, 1));
  EXPECT_FALSE(ultrametric_symdiff_empty(2, 0, 1));
  for (long m = 0; m < 6; ++m) EXPECT_TRUE(ultrametric_symdiff_empty(2, m, 0));
  EXPECT_THROW(ultrametric_symdiff_empty(4, 1, 1), Error);
}

TEST(Heisenberg, UltrametricCriterionMatchesWitnessSearch) {
  for (unsigned long p : {2ul, 3ul}) {
    for (long m = -2; m <= 3; ++m) {
      for (long j = -2; j <= 3; ++j) {
        const bool empty = ultrametric_symdiff_empty(p, m, j);
        EXPECT_EQ(!find_symdiff_witness(p, m, j, 1).has_value(), empty) << p << " " << m << " " << j;
      }
    }
  }
}

TEST(Heisenberg, UltrametricCollapseUnderRandomSampling) {
  for (unsigned long p : {2ul, 3ul}) {
    for (long m = 0; m <= 2; ++m) {
      for (long j = 0; j <= m; ++j) {
        ASSERT_TRUE(ultrametric_symdiff_empty(p, m, j));
        const FolnerBox F{FieldDesc::padic(p), 1, pow_p(p, m)};
        std::mt19937 rng(static_cast<unsigned>(100 * p + 10 * m + j));
        const long top = std::max(m, j) + 1;  // coordinates of norm <= max(r, k) p
        std::uniform_int_distribution<long> u(-50, 50);
        std::uniform_int_distribution<int> d(0, static_cast<int>(top));
        auto coord = [&](long bound) {
          long e = d(rng);
          if (e > bound) e = bound;
          return Rational(Rational(u(rng)) / pow_p(p, e));
        };
        for (int s = 0; s < 10000; ++s) {
          PadicElement g1{{coord(j)}, {coord(j)}, coord(j)}, g2{{coord(j)}, {coord(j)}, coord(j)};
          PadicElement x{{coord(top)}, {coord(top)}, coord(2 * top)};
          ASSERT_EQ(F.contains(x), F.contains(mul(inv(g2), mul(x, g1))));
        }
      }
    }
  }
}

TEST(Heisenberg, SandwichExamples) {
  auto s = sandwich_boxes(100, 1, 1);
  EXPECT_DOUBLE_EQ(s.outer.ra, 102);
  EXPECT_DOUBLE_EQ(s.outer.rc, 10203);
  EXPECT_DOUBLE_EQ(s.inner.ra, 98);
  EXPECT_DOUBLE_EQ(s.inner.rc, 9797);
  EXPECT_FALSE(s.inner.degenerate);
  EXPECT_TRUE(sandwich_boxes(2, 1, 1).inner.degenerate);
  auto z = sandwich_boxes(5, 0, 1);
  EXPECT_DOUBLE_EQ(z.inner.rc, 25);
  EXPECT_DOUBLE_EQ(z.outer.ra, 5);
}

TEST(Heisenberg, SymdiffBound) {
  // closed form of the box measures, written out independently
  const double expect = (10404.0 * 10203 - 9604.0 * 9797) / 1e8;
  EXPECT_NEAR(symdiff_ratio_bound(100, 1, 1), expect, 1e-12);
  EXPECT_NEAR(symdiff_ratio_bound(100, 1, 1), 0.1206, 1e-4);
  EXPECT_EQ(symdiff_ratio_bound(100, 0, 1), 0.0);
  EXPECT_NEAR(symdiff_ratio_bound(1000, 1, 1), 0.0120, 1e-4);
  double prev = symdiff_ratio_bound(4, 1, 1);
  for (double r = 5; r < 2000; r *= 1.3) {
    const double cur = symdiff_ratio_bound(r, 1, 1);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(Heisenberg, SandwichContainsConjugates) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const double r = 10 + 40 * (u(rng) + 1), k = 1 + (u(rng) + 1);
    const int n = 1 + trial % 2;
    auto s = sandwich_boxes(r, k, n);
    auto rnd = [&](double ra, double rc) {
      RealElement g = RealElement::identity(n);
      for (auto& x : g.a) x = ra * u(rng);
      for (auto& x : g.b) x = ra * u(rng);
      g.c = rc * u(rng);
      return g;
    };
    auto g1 = rnd(k, k), g2 = rnd(k, k);
    const RealBox F{r, r, r * r};
    auto x = rnd(r, r * r);
    EXPECT_TRUE(s.outer.contains(mul(inv(g2), mul(x, g1))));
    auto y = rnd(s.inner.ra, s.inner.rc);
    EXPECT_TRUE(F.contains(y));
    EXPECT_TRUE(F.contains(mul(g2, mul(y, inv(g1)))));
  }
}

TEST(Heisenberg, MonteCarloUnderBound) {
  auto id = RealElement::identity(1);
  auto z = symdiff_ratio_montecarlo(10, 0, 1, id, id, 1000, 1);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.stderr_, 0.0);
  RealElement corner{{1}, {1}, 1}, neg{{-1}, {-1}, -1};
  auto e = symdiff_ratio_montecarlo(100, 1, 1, corner, neg, 200000, 7);
  EXPECT_GT(e.value, 0.0);
  EXPECT_LE(e.value, symdiff_ratio_bound(100, 1, 1));
  auto again = symdiff_ratio_montecarlo(100, 1, 1, corner, neg, 200000, 7);
  EXPECT_EQ(e.hits, again.hits);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const double r = 5 + 50 * (u(rng) + 1), k = 0.5 + (u(rng) + 1);
    RealElement g1{{k * u(rng)}, {k * u(rng)}, k * u(rng)}, g2{{k * u(rng)}, {k * u(rng)}, k * u(rng)};
    auto est = symdiff_ratio_montecarlo(r, k, 1, g1, g2, 20000, trial);
    EXPECT_LE(est.value, symdiff_ratio_bound(r, k, 1) + 3 * est.stderr_);
  }
}
