#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hschur/error.hpp"
#include "hschur/field.hpp"
#include "oracle_util.hpp"

using namespace hschur;

namespace {

LocalScalar q2(const Rational& x) { return LocalScalar(FieldDesc::padic(2), x); }
LocalScalar q3(const Rational& x) { return LocalScalar(FieldDesc::padic(3), x); }

}  // namespace

TEST(Field, Valuation) {
  EXPECT_EQ(valuation(q2(8)), 3);
  EXPECT_FALSE(valuation(q2(0)).has_value());
  EXPECT_EQ(valuation(q3(Rational(5, 9))), -2);
  EXPECT_THROW(valuation(LocalScalar(1.5)), Error);
}

TEST(Field, ValuationMatchesFactorization) {
  // Oracle: strip factors of p from numerator and denominator by hand.
  for (long num = -40; num <= 40; ++num) {
    for (long den = 1; den <= 30; ++den) {
      if (num == 0) continue;
      long v = 0, a = std::labs(num), b = den;
      while (a % 3 == 0) a /= 3, ++v;
      while (b % 3 == 0) b /= 3, --v;
      EXPECT_EQ(valuation(q3(Rational(num, den))), v);
    }
  }
}

TEST(Field, Abs) {
  EXPECT_EQ(std::get<double>(abs(LocalScalar(-3.0))), 3.0);
  EXPECT_EQ(std::get<Rational>(abs(q2(8))), Rational(1, 8));
  EXPECT_EQ(std::get<Rational>(abs(q3(Rational(5, 9)))), 9);
}

TEST(Field, AbsMultiplicativeAndUltrametric) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 64);
  for (int i = 0; i < 500; ++i) {
    Rational x(num(rng), den(rng)), y(num(rng), den(rng));
    x.canonicalize();
    y.canonicalize();
    auto ax = std::get<Rational>(abs(q2(x))), ay = std::get<Rational>(abs(q2(y)));
    EXPECT_EQ(std::get<Rational>(abs(q2(x * y))), ax * ay);
    auto as = std::get<Rational>(abs(q2(x + y)));
    EXPECT_LE(as, std::max(ax, ay));
    if (ax != ay) {
      EXPECT_EQ(as, std::max(ax, ay));
    }
  }
}

TEST(Field, Character) {
  EXPECT_EQ(character(q2(7)).value(), std::complex<double>(1, 0));
  EXPECT_EQ(character(q2(Rational(1, 2))).exact_theta(), Rational(1, 2));
  EXPECT_EQ(character(q2(Rational(1, 2))).value(), std::complex<double>(-1, 0));
  auto r = character(LocalScalar(0.25)).value();
  EXPECT_NEAR(r.real(), 0.0, 1e-15);
  EXPECT_NEAR(r.imag(), 1.0, 1e-15);
}

TEST(Field, CharacterHomomorphism) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 81);
  for (int i = 0; i < 300; ++i) {
    Rational x(num(rng), den(rng)), y(num(rng), den(rng));
    x.canonicalize();
    y.canonicalize();
    EXPECT_EQ(character(q3(x + y)), character(q3(x)) * character(q3(y)));
  }
}

TEST(Field, BallMeasure) {
  EXPECT_DOUBLE_EQ(std::get<double>(ball_measure(FieldDesc::real(), 1, 5.0)), 10.0);
  EXPECT_EQ(std::get<Rational>(ball_measure(FieldDesc::padic(2), 2, Rational(1))), 1);
  EXPECT_EQ(std::get<Rational>(ball_measure(FieldDesc::padic(3), 1, Rational(9))), 9);
  EXPECT_EQ(oracle::coset_reps(3, 2, 0).size(), 9u);  // 9 cosets of Z_3 in 3^-2 Z_3
  try {
    ball_measure(FieldDesc::padic(2), 1, Rational(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidRadius);
  }
}

TEST(Field, CharBallIntegralExamples) {
  const auto f = FieldDesc::padic(2);
  EXPECT_EQ(char_ball_integral(f, 0, 0), 1);
  EXPECT_EQ(char_ball_integral(f, Rational(1, 2), 0), 0);
  EXPECT_EQ(char_ball_integral(f, 4, 1), 2);
  EXPECT_THROW(char_ball_integral(FieldDesc::real(), 1, 0), Error);
}

TEST(Field, CharBallIntegralMatchesCosetSum) {
  for (unsigned long p : {2ul, 3ul}) {
    const auto field = FieldDesc::padic(p);
    for (long k = -2; k <= 2; ++k) {
      for (long v = -3; v <= 3; ++v) {
        for (long unit : {1L, 2L, 5L}) {
          if (unit % static_cast<long>(p) == 0) continue;
          const Rational y = oracle::ppow(p, v) * unit;
          // integral over B(p^k) = p^{-k} Z_p, fine enough that chi(yx) is constant
          const long L = std::max(-k, -v);
          auto got = oracle::integrate(p, 1, k, L, [&](const RationalVec& x) {
            return CycloNumber::root_of_unity(p, padic_fractional_part(y * x[0], p));
          });
          EXPECT_EQ(got, CycloNumber(char_ball_integral(field, y, k))) << p << " " << k << " " << v;
        }
      }
    }
  }
}

TEST(Cyclo, ZeroRendersSmall) {
  auto z = CycloNumber::root_of_unity(3, Rational(1, 3)) + CycloNumber::root_of_unity(3, Rational(2, 3)) +
           CycloNumber(1);
  EXPECT_TRUE(z.is_zero());
  EXPECT_LT(std::abs(z.to_complex()), 1e-12);
  auto w = CycloNumber::root_of_unity(2, Rational(1, 4));
  EXPECT_EQ(w * w, CycloNumber(-1));
  EXPECT_EQ(w * w.conj(), CycloNumber(1));
}

TEST(Cyclo, SumOfAllRootsVanishes) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (int k = 1; k <= 3; ++k) {
      long n = 1;
      for (int i = 0; i < k; ++i) n *= static_cast<long>(p);
      CycloNumber s;
      for (long j = 0; j < n; ++j) s += CycloNumber::root_of_unity(p, Rational(j, n));
      EXPECT_TRUE(s.is_zero());
    }
  }
}

TEST(Cyclo, MatchesComplexArithmetic) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> e(0, 26), c(-5, 5);
  for (int i = 0; i < 200; ++i) {
    CycloNumber a, b;
    std::complex<double> fa, fb;
    for (int j = 0; j < 4; ++j) {
      Rational th(e(rng), 27), co(c(rng));
      a += CycloNumber::root_of_unity(3, th) * co;
      fa += co.get_d() * std::polar(1.0, 2 * M_PI * th.get_d());
      Rational th2(e(rng), 9), co2(c(rng), 2);
      b += CycloNumber::root_of_unity(3, th2) * co2;
      fb += co2.get_d() * std::polar(1.0, 2 * M_PI * th2.get_d());
    }
    EXPECT_LT(std::abs((a * b).to_complex() - fa * fb), 1e-9);
    EXPECT_LT(std::abs((a + b).to_complex() - (fa + fb)), 1e-9);
    EXPECT_LT(std::abs(a.conj().to_complex() - std::conj(fa)), 1e-9);
    EXPECT_EQ((a - a), CycloNumber());
  }
}
