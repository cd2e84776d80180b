#include <gtest/gtest.h>

#include <random>

#include "hschur/experiments.hpp"
#include "random_padic.hpp"

using namespace hschur;

namespace {

const FieldDesc Q2 = FieldDesc::padic(2);
LocalScalar q(const Rational& x, const FieldDesc& f = Q2) { return LocalScalar(f, x); }
TestFunction ind(const Rational& c, long scale, unsigned long p = 2) { return PadicBallChar::indicator(p, {c}, scale); }

RadiusSchedule pschedule(long lo, long hi, unsigned long p = 2) {
  std::vector<ExactOrReal> r;
  for (long m = lo; m <= hi; ++m) r.emplace_back(pow_p(p, m));
  return RadiusSchedule(FieldDesc::padic(p), r);
}

RadiusSchedule rschedule(std::vector<double> rs) {
  std::vector<ExactOrReal> r(rs.begin(), rs.end());
  return RadiusSchedule(FieldDesc::real(), r);
}

TestFunction box(double lo, double hi, double h) {
  return RealGrid::from_profiles({AxisProfile{AxisProfile::Kind::Indicator, lo, hi}}, h);
}

CycloNumber exact_at(const ExperimentReport& rep, std::size_t i) { return *rep.records.at(i).value.exact; }

}  // namespace

TEST(Experiments, DiagUnitT) {
  auto f = ind(0, 0);
  auto rep = schur_diag(q(1), f, f, f, f, pschedule(0, 3));
  for (std::size_t i = 0; i < rep.records.size(); ++i) EXPECT_EQ(exact_at(rep, i), CycloNumber(1));
  EXPECT_TRUE(rep.pass) << rep.verdict;
}

TEST(Experiments, DiagDilatedT) {
  auto f = ind(0, 0);
  auto rep = schur_diag(q(2), f, f, f, f, pschedule(0, 3));
  EXPECT_EQ(*rep.target.exact, CycloNumber(2));
  EXPECT_EQ(exact_at(rep, 1), CycloNumber(2));  // r = 2
  EXPECT_EQ(exact_at(rep, 3), CycloNumber(2));
  EXPECT_TRUE(rep.pass) << rep.verdict;
}

TEST(Experiments, DiagOrthogonalTranslates) {
  auto f = ind(0, 0);
  auto rep = schur_diag(q(1), ind(0, 1), f, ind(1, 1), f, pschedule(0, 3));
  EXPECT_EQ(*rep.target.exact, CycloNumber());
  EXPECT_EQ(exact_at(rep, 1), CycloNumber());
  EXPECT_TRUE(rep.pass);
}

TEST(Experiments, DiagMixedHalf) {
  auto f = ind(0, 0);
  auto rep = schur_diag(q(1), f, f, ind(0, 1), f, pschedule(-1, 3));
  EXPECT_EQ(*rep.target.exact, CycloNumber(Rational(1, 2)));
  EXPECT_TRUE(rep.pass) << rep.verdict;
  EXPECT_EQ(exact_at(rep, rep.records.size() - 1), CycloNumber(Rational(1, 2)));
}

TEST(Experiments, FourierWignerIntegral) {
  auto f = ind(0, 0);
  for (auto [t, v] : {std::pair{Rational(1), Rational(1)}, {Rational(2), Rational(2)}, {Rational(1, 2), Rational(1, 2)}}) {
    auto rep = schur_diag(q(t), f, f, f, f, pschedule(2, 4));
    EXPECT_EQ(exact_at(rep, 2), CycloNumber(v)) << to_string(t);
    EXPECT_EQ(brute_force_oracle(q(t), f, f, pow_p(2, 2)).exact, CycloNumber(v)) << to_string(t);
  }
}

TEST(Experiments, CrossTT) {
  auto f = ind(0, 0);
  auto rep = schur_cross_tt(q(1), q(3), f, f, f, f, pschedule(-1, 3));
  EXPECT_TRUE(rep.pass) << rep.verdict;
  EXPECT_EQ(rep.threshold_text, "2");
  for (std::size_t i = 2; i < rep.records.size(); ++i) EXPECT_TRUE(exact_at(rep, i).is_zero());
  EXPECT_FALSE(exact_at(rep, 0).is_zero());
  EXPECT_THROW(schur_cross_tt(q(1), q(1), f, f, f, f, pschedule(0, 1)), Error);
}

TEST(Experiments, CrossPiRho) {
  auto f = ind(0, 0);
  auto rep = schur_cross_pi_rho(q(1), {q(Rational(1, 2))}, {q(0)}, f, f, pschedule(-1, 3));
  EXPECT_TRUE(rep.pass) << rep.verdict;
  for (std::size_t i = 2; i < rep.records.size(); ++i) EXPECT_TRUE(exact_at(rep, i).is_zero());
}

TEST(Experiments, Onedim) {
  auto eq = schur_onedim({q(Rational(1, 4))}, {q(3)}, {q(Rational(1, 4))}, {q(3)}, pschedule(-2, 3));
  for (std::size_t i = 0; i < eq.records.size(); ++i) EXPECT_EQ(exact_at(eq, i), CycloNumber(1));
  EXPECT_TRUE(eq.pass);
  auto ne = schur_onedim({q(Rational(1, 2))}, {q(0)}, {q(0)}, {q(0)}, pschedule(-1, 3));
  EXPECT_EQ(exact_at(ne, 0), CycloNumber(1));  // r = 1/2
  for (std::size_t i = 1; i < ne.records.size(); ++i) EXPECT_TRUE(exact_at(ne, i).is_zero());
  EXPECT_TRUE(ne.pass);
}

TEST(Experiments, BraidingIndicator) {
  TestFunction phi = PadicBallChar::indicator(2, {0, 0}, 0);
  auto rep = braiding_pairing(q(1), phi, phi, pschedule(0, 4));
  for (std::size_t i = 0; i < rep.records.size(); ++i) EXPECT_EQ(exact_at(rep, i), CycloNumber(1));
  EXPECT_TRUE(rep.pass);
}

TEST(Experiments, BraidingAntisymmetricProbe) {
  // f = 1_{Z_2}, g = chi(x / 2) 1_{Z_2}: unit vectors with <f, g> = 0
  PadicBallChar f = PadicBallChar::indicator(2, {0}, 0);
  PadicBallChar g = modulate(f, {Rational(1, 2)});
  ASSERT_TRUE(inner(f, g).is_zero());
  TestFunction phi1 = tensor(f, g), phi2 = tensor(g, f);
  auto rep = braiding_pairing(q(1), phi1, phi2, pschedule(0, 4));
  EXPECT_EQ(*rep.target.exact, CycloNumber(1));
  // at r = 1 the character of g is not yet resolved by the b-ball
  EXPECT_TRUE(exact_at(rep, 0).is_zero());
  for (std::size_t i = 1; i < rep.records.size(); ++i) EXPECT_EQ(exact_at(rep, i), CycloNumber(1));
  EXPECT_EQ(rep.threshold_text, "2");
  EXPECT_TRUE(rep.pass) << rep.verdict;
  auto zero = braiding_pairing(q(1), phi1, TestFunction(PadicBallChar(2, 2)), pschedule(0, 2));
  for (std::size_t i = 0; i < zero.records.size(); ++i) EXPECT_TRUE(exact_at(zero, i).is_zero());
}

TEST(Experiments, BraidingDilatedAndRandom) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto phi1 = testgen::random_function(rng, 2, 2, 3, 1);
    auto phi2 = testgen::random_function(rng, 2, 2, 3, 1);
    const Rational t = trial % 2 ? Rational(2) : Rational(1, 2);
    ExperimentSpec spec;
    spec.id = "b";
    spec.kind = ExperimentKind::BraidingPairing;
    spec.field = Q2;
    spec.t = q(t);
    spec.functions = {phi1, phi2};
    for (long m = -1; m <= 1; ++m) spec.radii.emplace_back(pow_p(2, m));
    auto orc = run_oracle(spec);
    EXPECT_TRUE(orc.pass) << "trial " << trial;
  }
}

TEST(Experiments, OracleMatchesFastPathRandom) {
  std::mt19937 rng(11);
  for (auto kind : {ExperimentKind::SchurDiag, ExperimentKind::SchurCrossTT, ExperimentKind::SchurCrossPiRho}) {
    for (int trial = 0; trial < 3; ++trial) {
      ExperimentSpec spec;
      spec.id = "o";
      spec.kind = kind;
      spec.field = Q2;
      spec.t = q(trial == 1 ? Rational(2) : Rational(1));
      spec.t2 = q(3);
      spec.z1 = {q(Rational(1, 2))};
      spec.x1 = {q(Rational(1, 4))};
      for (int i = 0; i < 4; ++i) spec.functions.emplace_back(testgen::random_function(rng, 2, 1, 3, 1));
      if (kind == ExperimentKind::SchurCrossPiRho) spec.functions.erase(spec.functions.begin() + 2, spec.functions.end());
      for (long m = -1; m <= 1; ++m) spec.radii.emplace_back(pow_p(2, m));
      auto orc = run_oracle(spec);
      EXPECT_TRUE(orc.pass) << to_string(kind) << " trial " << trial;
    }
  }
}

TEST(Experiments, CtempPadic) {
  auto f = ind(0, 0);
  auto rep = ctemp_condition_ii(q(1), f, f, Rational(1), pschedule(0, 3));
  for (std::size_t i = 0; i < rep.records.size(); ++i) EXPECT_TRUE(exact_at(rep, i).is_zero());
  auto rep4 = ctemp_condition_ii(q(1), f, f, Rational(4), pschedule(0, 4));
  EXPECT_FALSE(exact_at(rep4, 0).is_zero());  // r = 1 < k
  EXPECT_TRUE(exact_at(rep4, 2).is_zero());
  EXPECT_TRUE(rep4.pass);
  auto rep0 = ctemp_condition_ii(q(1), f, f, Rational(0), pschedule(0, 2));
  for (std::size_t i = 0; i < rep0.records.size(); ++i) EXPECT_TRUE(exact_at(rep0, i).is_zero());
}

TEST(Experiments, PolarizationIsReal) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    TestFunction f1 = testgen::random_function(rng, 3, 1, 3, 1);
    TestFunction f2 = testgen::random_function(rng, 3, 1, 3, 1);
    std::vector<ExactOrReal> r{pow_p(3, 0), pow_p(3, 1)};
    auto rep = schur_diag(LocalScalar(FieldDesc::padic(3), 1), f1, f2, f1, f2, RadiusSchedule(FieldDesc::padic(3), r));
    for (const auto& rec : rep.records) EXPECT_TRUE(rec.value.exact->is_rational());
  }
  auto f = box(0, 1, 1.0 / 16);
  auto rep = schur_diag(LocalScalar(1.0), f, f, f, f, rschedule({2, 4}));
  for (const auto& rec : rep.records) EXPECT_LT(std::abs(rec.value.approx.imag()), 1e-9 * std::abs(rec.value.approx));
}

TEST(Experiments, RealDiagConverges) {
  auto f = box(0, 1, 1.0 / 16);
  auto rep = schur_diag(LocalScalar(1.0), f, f, f, f, rschedule({2, 4, 6, 8}));
  EXPECT_NEAR(rep.records.back().value.approx.real(), 1.0, 0.1);
  EXPECT_TRUE(rep.pass) << rep.verdict;
}

TEST(Experiments, RealOnedimSinc) {
  auto rep = schur_onedim({LocalScalar(1.0)}, {LocalScalar(0.0)}, {LocalScalar(0.0)}, {LocalScalar(0.0)},
                          rschedule({4.25, 16.25}));
  const double r = 16.25;
  EXPECT_NEAR(rep.records.back().value.approx.real(), std::sin(2 * M_PI * r) / (2 * M_PI * r), 1e-12);
  auto eq = schur_onedim({LocalScalar(0.5)}, {LocalScalar(0.0)}, {LocalScalar(0.5)}, {LocalScalar(0.0)},
                         rschedule({1, 2}));
  for (const auto& rec : eq.records) EXPECT_EQ(rec.value.approx, std::complex<double>(1.0));
}

TEST(Experiments, RealOracleAgrees) {
  auto f = RealGrid::from_profiles({AxisProfile{AxisProfile::Kind::Triangle, -1, 1}}, 1.0 / 16);
  ExperimentSpec spec;
  spec.id = "tri";
  spec.kind = ExperimentKind::SchurDiag;
  spec.field = FieldDesc::real();
  spec.t = LocalScalar(1.0);
  spec.functions = {f, f, f, f};
  spec.radii = {2.0, 4.0};
  auto orc = run_oracle(spec);
  EXPECT_TRUE(orc.pass);
  for (const auto& rec : orc.records) EXPECT_LT(rec.abs_diff, 0.005 * std::abs(rec.oracle.approx));
}

TEST(Experiments, AliasGuard) {
  auto f = box(0, 1, 1.0 / 4);
  EXPECT_THROW(schur_diag(LocalScalar(1.0), f, f, f, f, rschedule({1, 4})), Error);
}

TEST(Experiments, OracleCap) {
  auto f = ind(0, 0);
  ExperimentSpec spec;
  spec.id = "big";
  spec.kind = ExperimentKind::SchurDiag;
  spec.field = Q2;
  spec.t = q(1);
  spec.functions = {f, f, f, f};
  spec.radii = {pow_p(2, 30)};
  try {
    run_oracle(spec);
    FAIL() << "expected the cap to trigger";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleTooLarge);
  }
}

TEST(Experiments, Serialization) {
  auto f = ind(0, 0);
  auto rep = schur_diag(q(1), f, f, f, f, pschedule(0, 1));
  const std::string csv = to_csv_rows(rep);
  EXPECT_NE(csv.find("schur_diag,1,1,0,1,0,0,1,true"), std::string::npos) << csv;
  EXPECT_EQ(csv_header().rfind("experiment_id,r,", 0), 0u);
  EXPECT_NE(to_svg(rep).find("<svg"), std::string::npos);
}

TEST(Experiments, CtempConditionIRatio) {
  // |<pi(g)f1,f2>|^2 against the unit reference: ratio -> |f1|^2 |f2|^2 = 1/2
  auto f = ind(0, 0);
  auto rep = ctemp_condition_i(q(1), ind(0, 1), f, f, f, pschedule(-1, 3));
  EXPECT_DOUBLE_EQ(rep.target, 0.5);
  EXPECT_TRUE(rep.pass) << rep.verdict;
  EXPECT_DOUBLE_EQ(rep.records.back().ratio, 0.5);

  auto b = box(0, 1, 1.0 / 32), half = box(0, 0.5, 1.0 / 32);
  auto real = ctemp_condition_i(LocalScalar(1.0), half, b, b, b, rschedule({4, 8, 12, 16}));
  EXPECT_NEAR(real.target, 0.5, 1e-12);
  EXPECT_TRUE(real.pass) << real.verdict;
  EXPECT_THROW(ctemp_condition_i(q(1), f, f, f, TestFunction(PadicBallChar(2, 1)), pschedule(0, 1)), Error);
}
