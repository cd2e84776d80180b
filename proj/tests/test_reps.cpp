#include <gtest/gtest.h>

#include <random>

#include "hschur/reps.hpp"
#include "oracle_util.hpp"
#include "random_padic.hpp"

using namespace hschur;

namespace {

const FieldDesc Q2 = FieldDesc::padic(2);
LocalScalar q(const Rational& x, const FieldDesc& f = Q2) { return LocalScalar(f, x); }
PadicBallChar one2() { return PadicBallChar::indicator(2, {0}, 0); }

PadicElement random_element(std::mt19937& rng, unsigned long p, int n) {
  PadicElement g = PadicElement::identity(n);
  for (auto& x : g.a) x = testgen::small_padic(rng, p);
  for (auto& x : g.b) x = testgen::small_padic(rng, p);
  g.c = testgen::small_padic(rng, p);
  return g;
}

// Pointwise definition of the matrix coefficient by coset enumeration.
CycloNumber brute_coeff(const Rational& t, const PadicBallChar& f1, const PadicBallChar& f2,
                        const PadicElement& g) {
  const unsigned long p = f1.prime();
  const long R = 4, L = 5;
  return oracle::integrate(p, 1, R, L, [&](const RationalVec& x) {
    const Rational ph = t * (g.c - x[0] * g.b[0]);
    return (f1({x[0] - g.a[0]}) * f2(x).conj()).times_root(p, padic_fractional_part(ph, p));
  });
}

}  // namespace

TEST(Reps, RhoExamples) {
  OneDimRep triv{{q(0)}, {q(0)}};
  EXPECT_EQ(rho_eval(triv, PadicElement{{5}, {Rational(1, 8)}, 3}).exact_theta(), 0);
  OneDimRep r{{LocalScalar(1.0)}, {LocalScalar(0.0)}};
  auto v = rho_eval(r, RealElement{{0.25}, {0.7}, 2.0}).value();
  EXPECT_NEAR(v.real(), 0, 1e-15);
  EXPECT_NEAR(v.imag(), 1, 1e-15);
  OneDimRep h{{q(Rational(1, 2))}, {q(0)}};
  EXPECT_EQ(rho_eval(h, PadicElement{{1}, {0}, 0}).value(), std::complex<double>(-1, 0));
}

TEST(Reps, RhoMultiplicative) {
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    OneDimRep r{{q(testgen::small_padic(rng, 2))}, {q(testgen::small_padic(rng, 2))}};
    auto g1 = random_element(rng, 2, 1), g2 = random_element(rng, 2, 1);
    EXPECT_EQ(rho_eval(r, mul(g1, g2)), rho_eval(r, g1) * rho_eval(r, g2));
  }
}

TEST(Reps, PiExamples) {
  InfDimRep pi(q(1));
  TestFunction f = one2();
  EXPECT_EQ(pi_apply(pi, PadicElement::identity(1), f).padic(), one2());
  EXPECT_EQ(pi_apply(pi, PadicElement{{1}, {0}, 0}, f).padic(), one2());
  EXPECT_THROW(InfDimRep(q(0)), Error);
}

TEST(Reps, PiHomomorphismAndUnitarity) {
  std::mt19937 rng(2);
  for (int i = 0; i < 40; ++i) {
    const Rational t = testgen::small_padic(rng, 2);
    if (t == 0) continue;
    InfDimRep pi(q(t));
    TestFunction f = testgen::random_function(rng, 2, 1, 3);
    auto g1 = random_element(rng, 2, 1), g2 = random_element(rng, 2, 1);
    EXPECT_EQ(pi_apply(pi, g1, pi_apply(pi, g2, f)).padic(), pi_apply(pi, mul(g1, g2), f).padic());
    EXPECT_EQ(*norm_sq(pi_apply(pi, g1, f)).exact, *norm_sq(f).exact);
    EXPECT_EQ(*matrix_coeff(pi, f, f, mul(g1, g1)).exact, *inner(pi_apply(pi, g1, pi_apply(pi, g1, f)), f).exact);
  }
}

TEST(Reps, MatrixCoeffExamples) {
  InfDimRep pi(q(1));
  TestFunction f = one2();
  for (Rational a : {Rational(0), Rational(1), Rational(-3)}) {
    for (Rational b : {Rational(0), Rational(2), Rational(5)}) {
      EXPECT_EQ(*matrix_coeff(pi, f, f, PadicElement{{a}, {b}, 0}).exact, CycloNumber(1));
    }
  }
  EXPECT_TRUE(matrix_coeff(pi, f, f, PadicElement{{Rational(1, 2)}, {0}, 0}).exact->is_zero());
  std::mt19937 rng(3);
  auto g = testgen::random_function(rng, 2, 1);
  EXPECT_EQ(*matrix_coeff(pi, g, g, PadicElement::identity(1)).exact, norm_sq(g));
}

TEST(Reps, MatrixCoeffMatchesPointwiseIntegral) {
  std::mt19937 rng(4);
  for (int i = 0; i < 15; ++i) {
    const Rational t = Rational(1 + i % 3, (i % 2) ? 2 : 1);
    InfDimRep pi(q(t));
    auto f1 = testgen::random_function(rng, 2, 1, 3, 1), f2 = testgen::random_function(rng, 2, 1, 3, 1);
    PadicElement g{{testgen::small_padic(rng, 2)}, {testgen::small_padic(rng, 2)}, testgen::small_padic(rng, 2)};
    EXPECT_EQ(*matrix_coeff(pi, f1, f2, g).exact, brute_coeff(t, f1, f2, g));
  }
}

TEST(Reps, CPhaseFactorization) {
  std::mt19937 rng(5);
  InfDimRep pi(q(3));
  auto f1 = testgen::random_function(rng, 2, 1), f2 = testgen::random_function(rng, 2, 1);
  const Rational a = Rational(1, 2), b = Rational(3, 4);
  const double base = std::abs(matrix_coeff(pi, f1, f2, PadicElement{{a}, {b}, 0}).approx);
  for (Rational c : {Rational(0), Rational(1), Rational(1, 2), Rational(7)}) {
    auto m = *matrix_coeff(pi, f1, f2, PadicElement{{a}, {b}, c}).exact;
    auto m0 = *matrix_coeff(pi, f1, f2, PadicElement{{a}, {b}, 0}).exact;
    EXPECT_EQ(m * m.conj(), m0 * m0.conj());
    EXPECT_NEAR(std::abs(m.to_complex()), base, 1e-12);
  }
}

TEST(Reps, SurfaceExamples) {
  TestFunction f = one2();
  auto s1 = std::get<PadicBallChar>(coeff_surface(InfDimRep(q(1)), f, f).data);
  EXPECT_EQ(s1, PadicBallChar::indicator(2, {0, 0}, 0));
  auto s2 = std::get<PadicBallChar>(coeff_surface(InfDimRep(q(2)), f, f).data);
  EXPECT_EQ(s2, tensor(one2(), PadicBallChar::indicator(2, {0}, -1)));
  std::mt19937 rng(6);
  TestFunction g = testgen::random_function(rng, 2, 1);
  auto s = coeff_surface(InfDimRep(q(Rational(1, 4))), g, g);
  EXPECT_EQ(*eval_surface(s, {q(0)}, {q(0)}).exact, *norm_sq(g).exact);
}

TEST(Reps, SurfaceAgreesWithMatrixCoeff) {
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    const Rational t = Rational(1 + i % 3, 1 + 3 * (i % 2));
    InfDimRep pi(q(t));
    TestFunction f1 = testgen::random_function(rng, 2, 1, 3), f2 = testgen::random_function(rng, 2, 1, 3);
    auto s = coeff_surface(pi, f1, f2);
    for (int k = 0; k < 10; ++k) {
      const Rational a = testgen::small_padic(rng, 2), b = testgen::small_padic(rng, 2);
      EXPECT_EQ(*eval_surface(s, {q(a)}, {q(b)}).exact, *matrix_coeff(pi, f1, f2, PadicElement{{a}, {b}, 0}).exact);
    }
  }
}

TEST(Reps, RealSurfaceAgreesWithMatrixCoeff) {
  const double h = 1.0 / 16;
  TestFunction f1 = RealGrid::from_profiles({{AxisProfile::Kind::Triangle, -1, 1}}, h);
  TestFunction f2 = RealGrid::from_profiles({{AxisProfile::Kind::Indicator, 0, 1}}, h);
  InfDimRep pi(LocalScalar(1.5));
  auto s = coeff_surface(pi, f1, f2);
  for (long alpha = -20; alpha <= 20; alpha += 3) {
    for (double b : {-2.0, -0.3, 0.0, 0.7, 3.1}) {
      const double a = alpha * h;
      auto direct = matrix_coeff(pi, f1, f2, RealElement{{a}, {b}, 0.0}).approx;
      EXPECT_NEAR(std::abs(eval_surface(s, {LocalScalar(a)}, {LocalScalar(b)}).approx - direct), 0, 1e-12);
    }
  }
}

TEST(Reps, BraidingExamples) {
  InfDimRep pi(q(1));
  TestFunction phi = PadicBallChar::indicator(2, {0, 0}, 0);
  EXPECT_EQ(braiding_apply(pi, PadicElement::identity(1), phi).padic(), phi.padic());
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto g = random_element(rng, 2, 1);
    auto out = braiding_apply(pi, g, phi);
    const bool in = !padic_valuation(g.b[0], 2) || *padic_valuation(g.b[0], 2) >= 0;
    const bool ain = !padic_valuation(g.a[0], 2) || *padic_valuation(g.a[0], 2) >= 0;
    if (ain) {
      EXPECT_EQ(*inner(out, phi).exact, CycloNumber(in ? 1 : 0));
    }
    TestFunction psi = testgen::random_function(rng, 2, 2, 3);
    EXPECT_EQ(*norm_sq(braiding_apply(pi, g, psi)).exact, *norm_sq(psi).exact);
  }
}

TEST(Reps, BraidingIsTensorOfPi) {
  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    InfDimRep pi(q(Rational(1 + i % 3)));
    auto f = testgen::random_function(rng, 2, 1, 2), h = testgen::random_function(rng, 2, 1, 2);
    auto g = random_element(rng, 2, 1);
    auto lhs = braiding_apply(pi, g, TestFunction(tensor(f, h))).padic();
    auto rhs = tensor(pi_apply(pi, inv(g), f).padic(), pi_apply(pi, g, h).padic());
    EXPECT_EQ(lhs, rhs);
  }
}
