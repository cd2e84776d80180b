#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hschur/reps.hpp"

namespace hschur {

enum class ExperimentKind { SchurDiag, SchurCrossTT, SchurCrossPiRho, SchurOnedim, BraidingPairing, CtempConditionII };

const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);
const std::vector<ExperimentKind>& all_experiment_kinds();

/// Increasing radii; on Q_p every radius is p^m and is stored by its exponent.
class RadiusSchedule {
 public:
  RadiusSchedule(FieldDesc field, std::vector<ExactOrReal> radii);
  const FieldDesc& field() const { return field_; }
  const std::vector<ExactOrReal>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  long exponent(std::size_t i) const;
  double value(std::size_t i) const { return to_double(radii_[i]); }

 private:
  FieldDesc field_;
  std::vector<ExactOrReal> radii_;
};

/// Everything an experiment needs. Unused fields are ignored by a given kind.
struct ExperimentSpec {
  std::string id;
  ExperimentKind kind = ExperimentKind::SchurDiag;
  FieldDesc field;
  int n = 1;
  std::optional<LocalScalar> t, t2;
  std::vector<TestFunction> functions;  // f1..f4, (f1, f2), or (phi1, phi2)
  std::vector<LocalScalar> z1, x1, z2, x2;
  std::optional<ExactOrReal> k;  // conjugator bound (ctemp)
  std::vector<ExactOrReal> radii;
  double rel_tol = 0.05;
  std::optional<double> quad_h;  // Real (a, b) quadrature spacing; defaults to the grid h
  std::vector<ExactOrReal> oracle_radii;  // empty: every radius
};

struct RadiusRecord {
  std::string r_text;
  double r = 0;
  ComplexValue value, target;
  double abs_error = 0;
  double normalizer = 0;
  bool exact_flag = false;
  std::string note;
};

struct ExperimentReport {
  std::string id, kind, field;
  std::vector<RadiusRecord> records;
  ComplexValue target;
  std::string target_formula;
  std::string threshold_text;  // p-adic: radius beyond which equality is exact
  double scale = 1;            // product of the input norms (Real tolerances are relative to it)
  bool pass = false;
  std::string verdict;
  double runtime_s = 0;
};

struct OracleRecord {
  std::string r_text;
  double r = 0;
  ComplexValue fast, oracle;
  double abs_diff = 0;
  bool agree = false;
};

struct OracleReport {
  std::string id, kind;
  std::vector<OracleRecord> records;
  double tolerance = 0;  // Real: absolute, = 0.01 * scale
  bool pass = false;
  double runtime_s = 0;
};

/// Thrown (as Error with kind OracleTooLarge) when the oracle's cell count
/// would exceed HSCHUR_CAP_MB (default 512).
std::size_t oracle_cap_cells();

/// Semantic checks that need no computation; throws Error (config-level kinds).
void validate(const ExperimentSpec& spec);
ExperimentReport run_experiment(const ExperimentSpec& spec);
OracleReport run_oracle(const ExperimentSpec& spec);

// Direct entry points; they build a spec and call run_experiment.
ExperimentReport schur_diag(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                            const TestFunction& f3, const TestFunction& f4, const RadiusSchedule& s);
ExperimentReport schur_cross_tt(const LocalScalar& t1, const LocalScalar& t2, const TestFunction& f1,
                                const TestFunction& f2, const TestFunction& f3, const TestFunction& f4,
                                const RadiusSchedule& s);
ExperimentReport schur_cross_pi_rho(const LocalScalar& t, const std::vector<LocalScalar>& z,
                                    const std::vector<LocalScalar>& x, const TestFunction& f1,
                                    const TestFunction& f2, const RadiusSchedule& s);
ExperimentReport schur_onedim(const std::vector<LocalScalar>& z1, const std::vector<LocalScalar>& x1,
                              const std::vector<LocalScalar>& z2, const std::vector<LocalScalar>& x2,
                              const RadiusSchedule& s);
ExperimentReport braiding_pairing(const LocalScalar& t, const TestFunction& phi1, const TestFunction& phi2,
                                  const RadiusSchedule& s);
ExperimentReport ctemp_condition_ii(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                                    const ExactOrReal& k, const RadiusSchedule& s);

/// Condition i through two diagonal runs: the ratio of
///   int_F |<pi_t(g)f1,f2>|^2  to  int_F |<pi_t(g)g1,g2>|^2
/// against |f1|^2 |f2|^2 / (|g1|^2 |g2|^2). P-adic: exact (cross-multiplied) equality
/// at the final radius with both runs passing; Real: final ratio within rel_tol of the target.
struct RatioRecord {
  std::string r_text;
  double r = 0;
  ComplexValue num, den;
  double ratio = 0;  // NaN where den vanishes
};

struct RatioReport {
  std::vector<RatioRecord> records;
  double target = 0;
  bool pass = false;
  std::string verdict;
};

RatioReport ctemp_condition_i(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                              const TestFunction& g1, const TestFunction& g2, const RadiusSchedule& s,
                              double rel_tol = 0.05);

/// int int_{B(r)^2} |M_t(a, b)|^2 da db by direct enumeration (p-adic cosets or
/// half-spacing midpoint quadrature), without the Fourier-Wigner closed forms.
ComplexValue brute_force_oracle(const LocalScalar& t, const TestFunction& f1, const TestFunction& f2,
                                const ExactOrReal& r);

nlohmann::json to_json(const ExperimentReport& r);
nlohmann::json to_json(const OracleReport& r);
/// CSV rows (no header) with %.17g numbers.
std::string to_csv_rows(const ExperimentReport& r);
std::string csv_header();
/// Value and error against r; log-log axes on the Real path.
std::string to_svg(const ExperimentReport& r);

}  // namespace hschur
