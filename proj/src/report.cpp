#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "experiments_internal.hpp"

namespace hschur {

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json value_json(const ComplexValue& v) {
  json j{{"re", v.approx.real()}, {"im", v.approx.imag()}};
  if (v.exact) j["exact"] = v.exact->to_string();
  return j;
}

}  // namespace

json to_json(const ExperimentReport& r) {
  json recs = json::array();
  for (const auto& x : r.records) {
    json j{{"r", x.r_text},
           {"value", value_json(x.value)},
           {"target", value_json(x.target)},
           {"abs_error", x.abs_error},
           {"normalizer", x.normalizer},
           {"exact_flag", x.exact_flag}};
    if (!x.note.empty()) j["note"] = x.note;
    recs.push_back(std::move(j));
  }
  json out{{"experiment_id", r.id},  {"kind", r.kind},   {"field", r.field},
           {"target", value_json(r.target)}, {"target_formula", r.target_formula},
           {"scale", r.scale},       {"pass", r.pass},   {"verdict", r.verdict},
           {"runtime_s", r.runtime_s}, {"records", std::move(recs)}};
  if (!r.threshold_text.empty()) out["threshold"] = r.threshold_text;
  return out;
}

json to_json(const OracleReport& r) {
  json recs = json::array();
  for (const auto& x : r.records) {
    recs.push_back({{"r", x.r_text},
                    {"fast", value_json(x.fast)},
                    {"oracle", value_json(x.oracle)},
                    {"abs_diff", x.abs_diff},
                    {"agree", x.agree}});
  }
  return {{"experiment_id", r.id}, {"kind", r.kind},          {"tolerance", r.tolerance},
          {"pass", r.pass},        {"runtime_s", r.runtime_s}, {"records", std::move(recs)}};
}

std::string csv_header() {
  return "experiment_id,r,value_re,value_im,target_re,target_im,abs_error,normalizer,exact_flag\n";
}

std::string to_csv_rows(const ExperimentReport& r) {
  std::ostringstream os;
  for (const auto& x : r.records) {
    os << r.id << ',' << x.r_text << ',' << num(x.value.approx.real()) << ',' << num(x.value.approx.imag()) << ','
       << num(x.target.approx.real()) << ',' << num(x.target.approx.imag()) << ',' << num(x.abs_error) << ','
       << num(x.normalizer) << ',' << (x.exact_flag ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string to_svg(const ExperimentReport& r) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  const bool loglog = r.field == "R";
  std::vector<double> xs, ys, ts;
  for (const auto& rec : r.records) {
    if (loglog) {
      if (rec.abs_error <= 0) continue;
      xs.push_back(std::log10(rec.r));
      ys.push_back(std::log10(rec.abs_error));
    } else {
      xs.push_back(std::log10(rec.r));
      ys.push_back(std::abs(rec.value.approx));
      ts.push_back(std::abs(rec.target.approx));
    }
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << r.id << " (" << r.kind
     << ", " << r.field << ")</text>\n";
  if (xs.empty()) {
    os << "<text x=\"" << L << "\" y=\"" << H / 2 << "\" font-family=\"sans-serif\">error is zero at every radius</text>\n</svg>\n";
    return os.str();
  }
  double x0 = *std::min_element(xs.begin(), xs.end()), x1 = *std::max_element(xs.begin(), xs.end());
  std::vector<double> all = ys;
  all.insert(all.end(), ts.begin(), ts.end());
  double y0 = *std::min_element(all.begin(), all.end()), y1 = *std::max_element(all.begin(), all.end());
  if (x1 - x0 < 1e-12) { x0 -= 1; x1 += 1; }
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" font-family=\"sans-serif\" font-size=\"12\">log10 r</text>\n";
  os << "<text x=\"8\" y=\"" << T - 8 << "\" font-family=\"sans-serif\" font-size=\"12\">"
     << (loglog ? "log10 |error|" : "|value| (blue), |target| (grey)") << "</text>\n";
  char buf[64];
  for (double v : {y0, y1}) {
    std::snprintf(buf, sizeof buf, "%.3g", v);
    os << "<text x=\"4\" y=\"" << py(v) + 4 << "\" font-family=\"sans-serif\" font-size=\"10\">" << buf << "</text>\n";
  }
  for (double v : {x0, x1}) {
    std::snprintf(buf, sizeof buf, "%.3g", v);
    os << "<text x=\"" << px(v) - 10 << "\" y=\"" << H - B + 14 << "\" font-family=\"sans-serif\" font-size=\"10\">" << buf
       << "</text>\n";
  }
  auto polyline = [&](const std::vector<double>& y, const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < y.size(); ++i) os << px(xs[i]) << ',' << py(y[i]) << ' ';
    os << "\"/>\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
      os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(y[i]) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
  };
  if (!ts.empty()) polyline(ts, "grey");
  polyline(ys, "steelblue");
  os << "</svg>\n";
  return os.str();
}

}  // namespace hschur
