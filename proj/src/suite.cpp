#include "hschur/suite.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hschur/error.hpp"
#include "schema_text.hpp"

namespace hschur {

using nlohmann::json;

const json& suite_schema() {
  static const json schema = json::parse(detail::kSuiteSchemaText);
  return schema;
}

// --- schema subset ------------------------------------------------------------

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

class SchemaChecker {
 public:
  explicit SchemaChecker(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& where) {
    if (s.contains("$ref")) {
      const std::string ref = s["$ref"];
      const std::string prefix = "#/definitions/";
      if (ref.rfind(prefix, 0) != 0) throw Error(ErrorKind::ConfigInvalid, "unsupported $ref " + ref);
      check(v, root_.at("definitions").at(ref.substr(prefix.size())), where);
      return;
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t);
      } else {
        ok = has_type(v, s["type"]);
      }
      if (!ok) {
        err(where, "expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) err(where, "value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) err(where, "below minimum");
      if (s.contains("maximum") && x > s["maximum"].get<double>()) err(where, "above maximum");
      if (s.contains("exclusiveMinimum") && !(x > s["exclusiveMinimum"].get<double>())) err(where, "must be positive");
    }
    if (v.is_string() && s.contains("minLength") && v.get<std::string>().size() < s["minLength"].get<std::size_t>()) {
      err(where, "string too short");
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) err(where, "too few items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) err(where, "too many items");
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], where + "/" + std::to_string(i));
      }
    }
    if (v.is_object()) {
      if (s.contains("minProperties") && v.size() < s["minProperties"].get<std::size_t>()) err(where, "empty object");
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) err(where, "missing required property " + r.dump());
        }
      }
      const json props = s.value("properties", json::object());
      const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
      for (const auto& [key, val] : v.items()) {
        if (props.contains(key)) {
          check(val, props[key], where + "/" + key);
        } else if (closed) {
          err(where, "unknown property \"" + key + "\"");
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  void err(const std::string& where, const std::string& msg) { errors.push_back((where.empty() ? "/" : where) + ": " + msg); }
  const json& root_;
};

// --- config values --------------------------------------------------------------

Rational rational_of(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::ConfigInvalid, what + ": p-adic values must be integers or strings like \"1/2\"");
}

LocalScalar scalar_of(const json& j, const FieldDesc& f, const std::string& what) {
  if (f.is_padic()) return LocalScalar(f, rational_of(j, what));
  if (j.is_number()) return LocalScalar(j.get<double>());
  return LocalScalar(rational_of(j, what).get_d());
}

ExactOrReal radius_of(const json& j, const FieldDesc& f, const std::string& what) {
  if (f.is_padic()) return rational_of(j, what);
  return j.is_number() ? j.get<double>() : rational_of(j, what).get_d();
}

std::vector<ExactOrReal> radii_of(const json& j, const FieldDesc& f, const std::string& what) {
  std::vector<ExactOrReal> out;
  for (const auto& x : j) out.push_back(radius_of(x, f, what));
  return out;
}

std::vector<LocalScalar> scalars_of(const json& j, const FieldDesc& f, const std::string& what) {
  std::vector<LocalScalar> out;
  for (const auto& x : j) out.push_back(scalar_of(x, f, what));
  return out;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Portable draws: only the raw engine output is used, never a std distribution.
PadicBallChar random_padic(std::uint64_t seed, unsigned long p, int dim, int max_terms, long max_scale) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return static_cast<long>(rng() % n); };
  auto small = [&]() {
    const long bound = static_cast<long>(p * p * p);
    Rational q(below(2 * bound + 1) - bound);
    for (long i = below(3); i > 0; --i) q /= p;
    return q;
  };
  std::vector<PadicTerm> terms;
  for (long i = 1 + below(max_terms); i > 0; --i) {
    PadicTerm t;
    t.coeff = CycloNumber::root_of_unity(p, Rational(below(p * p), p * p)) * Rational(1 + below(3));
    for (int d = 0; d < dim; ++d) {
      t.center.push_back(small());
      t.scale.push_back(below(2 * max_scale + 1) - max_scale);
      t.freq.push_back(small());
    }
    terms.push_back(std::move(t));
  }
  return PadicBallChar(p, dim, std::move(terms));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
}

struct FunctionContext {
  const FieldDesc& field;
  int default_dim;
  std::filesystem::path base;
  std::uint64_t seed;
};

TestFunction resolve_function(const json& j, const FunctionContext& ctx, std::uint64_t salt) {
  if (j.contains("file")) {
    const auto path = ctx.base / j["file"].get<std::string>();
    FunctionContext inner{ctx.field, ctx.default_dim, path.parent_path(), ctx.seed};
    return resolve_function(read_json_file(path), inner, salt);
  }
  if (j.contains("random")) {
    if (!ctx.field.is_padic()) throw Error(ErrorKind::ConfigInvalid, "random test functions are p-adic only");
    const json& r = j["random"];
    return random_padic(mix(ctx.seed, salt), ctx.field.p, r.value("dim", ctx.default_dim), r.value("terms", 4),
                        r.value("max_scale", 2));
  }
  if (j.contains("tensor")) {
    return tensor(resolve_function(j["tensor"][0], ctx, mix(salt, 1)), resolve_function(j["tensor"][1], ctx, mix(salt, 2)));
  }
  json full = j;
  if (!full.contains("field")) full["field"] = ctx.field.is_padic() ? "padic" : "real";
  if (ctx.field.is_padic() && !full.contains("p")) full["p"] = ctx.field.p;
  try {
    return test_function_from_json(full);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ConfigInvalid, std::string("test function: ") + e.what());
  }
}

}  // namespace

std::vector<std::string> schema_errors(const json& doc, const json& schema) {
  SchemaChecker c(schema);
  c.check(doc, schema, "");
  return c.errors;
}

SuiteConfig parse_suite(const json& doc, const std::filesystem::path& base_dir,
                        std::optional<std::uint64_t> seed_override) {
  const auto errs = schema_errors(doc, suite_schema());
  if (!errs.empty()) {
    std::string msg = "schema violation";
    for (const auto& e : errs) msg += "\n  " + e;
    throw Error(ErrorKind::ConfigInvalid, msg);
  }
  SuiteConfig cfg;
  cfg.name = doc.value("name", std::string("suite"));
  const json& fj = doc["field"];
  if (fj["kind"] == "padic") {
    if (!fj.contains("p")) throw Error(ErrorKind::ConfigInvalid, "p-adic field needs p");
    try {
      cfg.field = FieldDesc::padic(fj["p"].get<unsigned long>());
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigInvalid, e.what());
    }
  } else {
    cfg.field = FieldDesc::real();
  }
  const int n = doc.value("n", 1);
  cfg.seed = seed_override.value_or(doc.value("seed", std::uint64_t{0}));
  if (doc.contains("output")) cfg.out_dir = doc["output"].value("dir", cfg.out_dir.string());
  const double rel_tol = doc.contains("tolerances") ? doc["tolerances"].value("rel_tol", 0.05) : 0.05;

  std::set<std::string> ids;
  const auto& exps = doc["experiments"];
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const json& e = exps[i];
    ExperimentSpec spec;
    spec.kind = experiment_kind_from_string(e["kind"]);
    spec.id = e.value("id", std::string(to_string(spec.kind)) + "_" + std::to_string(i));
    if (!ids.insert(spec.id).second) throw Error(ErrorKind::ConfigInvalid, "duplicate experiment id " + spec.id);
    const std::string what = spec.id;
    spec.field = cfg.field;
    spec.n = n;
    if (e.contains("t")) spec.t = scalar_of(e["t"], cfg.field, what);
    if (e.contains("t2")) spec.t2 = scalar_of(e["t2"], cfg.field, what);
    if (e.contains("z")) spec.z1 = scalars_of(e["z"], cfg.field, what);
    if (e.contains("x")) spec.x1 = scalars_of(e["x"], cfg.field, what);
    if (e.contains("z2")) spec.z2 = scalars_of(e["z2"], cfg.field, what);
    if (e.contains("x2")) spec.x2 = scalars_of(e["x2"], cfg.field, what);
    if (e.contains("k")) spec.k = radius_of(e["k"], cfg.field, what);
    if (e.contains("rel_tol")) {
      spec.rel_tol = e["rel_tol"];
    } else {
      spec.rel_tol = rel_tol;
    }
    if (e.contains("quad_h")) spec.quad_h = e["quad_h"].get<double>();
    if (e.contains("schedule")) {
      spec.radii = radii_of(e["schedule"], cfg.field, what);
    } else if (doc.contains("schedule")) {
      spec.radii = radii_of(doc["schedule"], cfg.field, what);
    } else {
      throw Error(ErrorKind::ConfigInvalid, what + ": no radius schedule");
    }
    if (e.contains("oracle_schedule")) {
      spec.oracle_radii = radii_of(e["oracle_schedule"], cfg.field, what);
    } else if (doc.contains("oracle_schedule")) {
      spec.oracle_radii = radii_of(doc["oracle_schedule"], cfg.field, what);
    }
    const int fdim = spec.kind == ExperimentKind::BraidingPairing ? 2 * n : n;
    FunctionContext ctx{cfg.field, fdim, base_dir, cfg.seed};
    if (e.contains("functions")) {
      for (std::size_t k = 0; k < e["functions"].size(); ++k) {
        spec.functions.push_back(resolve_function(e["functions"][k], ctx, mix(i, k)));
      }
    }
    try {
      validate(spec);
    } catch (const Error& err) {
      switch (err.kind()) {
        case ErrorKind::OracleTooLarge:
          throw;
        default:
          throw Error(ErrorKind::ConfigInvalid, err.what());
      }
    }
    cfg.experiments.push_back(std::move(spec));
  }
  return cfg;
}

SuiteConfig load_suite(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  return parse_suite(read_json_file(path), path.parent_path(), seed_override);
}

namespace {

template <class Report, class Fn>
std::vector<Report> run_jobs(const SuiteConfig& cfg, int jobs, Fn fn) {
  const std::size_t n = cfg.experiments.size();
  std::vector<Report> out(n);
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(cfg.experiments[i]);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

std::vector<ExperimentReport> run_suite(const SuiteConfig& cfg, int jobs) {
  return run_jobs<ExperimentReport>(cfg, jobs, [](const ExperimentSpec& s) { return run_experiment(s); });
}

std::vector<OracleReport> oracle_suite(const SuiteConfig& cfg, int jobs) {
  return run_jobs<OracleReport>(cfg, jobs, [](const ExperimentSpec& s) { return run_oracle(s); });
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_run_outputs(const std::filesystem::path& dir, const SuiteConfig& cfg,
                       const std::vector<ExperimentReport>& reports) {
  std::filesystem::create_directories(dir);
  json arr = json::array();
  std::string csv = csv_header();
  bool pass = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    csv += to_csv_rows(r);
    pass = pass && r.pass;
    write_atomic(dir / (r.id + ".svg"), to_svg(r));
  }
  json doc{{"suite", cfg.name}, {"field", cfg.field.name()}, {"seed", cfg.seed}, {"pass", pass}, {"experiments", arr}};
  write_atomic(dir / "report.json", doc.dump(2) + "\n");
  write_atomic(dir / "report.csv", csv);
}

void write_oracle_outputs(const std::filesystem::path& dir, const SuiteConfig& cfg,
                          const std::vector<OracleReport>& reports) {
  std::filesystem::create_directories(dir);
  json arr = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    pass = pass && r.pass;
  }
  json doc{{"suite", cfg.name}, {"field", cfg.field.name()}, {"seed", cfg.seed}, {"pass", pass}, {"oracles", arr}};
  write_atomic(dir / "oracle.json", doc.dump(2) + "\n");
}

}  // namespace hschur
