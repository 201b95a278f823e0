#include "impuq/cli/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace impuq::cli {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(text.begin(),
                                                text.begin() + static_cast<std::ptrdiff_t>(
                                                    std::min(e.byte, text.size())),
                                                '\n'));
    throw ParseError(std::string("malformed JSON: ") + e.what(), line);
  }
}

namespace {

// Line of the first occurrence of "key" in the text, 1 if absent.
std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

const json& require_key(const json& obj, const std::string& key, const std::string& text) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError("missing field \"" + key + "\"", line_of_key(text, key));
  }
  return obj.at(key);
}

std::vector<double> number_array(const json& j, const std::string& key, const std::string& text) {
  if (!j.is_array()) throw ParseError("field \"" + key + "\" must be an array", line_of_key(text, key));
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ParseError("field \"" + key + "\" must contain only numbers", line_of_key(text, key));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool to_number(std::string s, double& out) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

// Numeric rows of a CSV with a header; each row must have `columns` fields.
std::vector<std::vector<double>> numeric_rows(const std::string& text, std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      header_seen = true;
      double probe = 0.0;
      if (!fields.empty() && to_number(fields[0], probe)) {
        throw ParseError("CSV must start with a header line", lineno);
      }
      if (fields.size() != columns) {
        throw ParseError("header must name " + std::to_string(columns) + " columns", lineno);
      }
      continue;
    }
    if (fields.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " comma-separated values", lineno);
    }
    std::vector<double> row(columns);
    for (std::size_t c = 0; c < columns; ++c) {
      if (!to_number(fields[c], row[c])) throw ParseError("non-numeric value '" + fields[c] + "'", lineno);
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("CSV file is empty", 1);
  return rows;
}

}  // namespace

ProbabilityIntervals parse_intervals(const std::string& text) {
  const json j = parse_json(text);
  auto lowers = number_array(require_key(j, "lowers", text), "lowers", text);
  auto uppers = number_array(require_key(j, "uppers", text), "uppers", text);
  return ProbabilityIntervals(std::move(lowers), std::move(uppers));
}

json intervals_to_json(const ProbabilityIntervals& pi) {
  return json{{"lowers", rounded(pi.lowers())}, {"uppers", rounded(pi.uppers())}};
}

PredictionBundle parse_bundle(const std::string& text, const Tolerance& tol) {
  const json j = parse_json(text);
  const auto& kind_j = require_key(j, "kind", text);
  if (!kind_j.is_string()) throw ParseError("field \"kind\" must be a string", line_of_key(text, "kind"));
  const std::string kind_s = kind_j.get<std::string>();
  static const std::map<std::string, BundleKind> kinds{{"bnn-samples", BundleKind::bnn_samples},
                                                       {"inn-intervals", BundleKind::inn_intervals},
                                                       {"ensemble", BundleKind::ensemble},
                                                       {"credal", BundleKind::credal}};
  const auto it = kinds.find(kind_s);
  if (it == kinds.end()) throw ParseError("unknown bundle kind '" + kind_s + "'", line_of_key(text, "kind"));
  const auto& inst = require_key(j, "instances", text);
  if (!inst.is_array() || inst.empty()) {
    throw ParseError("field \"instances\" must be a non-empty array", line_of_key(text, "instances"));
  }
  if (it->second == BundleKind::bnn_samples || it->second == BundleKind::ensemble) {
    std::vector<std::vector<DiscreteDistribution>> samples;
    for (const auto& item : inst) {
      const auto& s = require_key(item, "samples", text);
      if (!s.is_array()) throw ParseError("field \"samples\" must be an array", line_of_key(text, "samples"));
      std::vector<DiscreteDistribution> dists;
      for (const auto& row : s) dists.emplace_back(number_array(row, "samples", text), tol);
      samples.push_back(std::move(dists));
    }
    return PredictionBundle::from_samples(it->second, std::move(samples));
  }
  std::vector<ProbabilityIntervals> intervals;
  for (const auto& item : inst) {
    intervals.emplace_back(number_array(require_key(item, "lowers", text), "lowers", text),
                           number_array(require_key(item, "uppers", text), "uppers", text));
  }
  return PredictionBundle::from_intervals(it->second, std::move(intervals));
}

json bundle_to_json(const PredictionBundle& b) {
  json instances = json::array();
  for (std::size_t i = 0; i < b.instances(); ++i) {
    if (b.has_samples()) {
      json samples = json::array();
      for (const auto& s : b.samples()[i]) {
        samples.push_back(rounded(std::vector<double>(s.probs().begin(), s.probs().end())));
      }
      instances.push_back(json{{"samples", samples}});
    } else {
      instances.push_back(intervals_to_json(b.intervals()[i]));
    }
  }
  return json{{"kind", std::string(bundle_kind_name(b.kind()))}, {"instances", instances}};
}

std::pair<std::vector<double>, std::vector<double>> parse_two_columns(const std::string& text) {
  std::vector<double> a, b;
  for (const auto& row : numeric_rows(text, 2)) {
    a.push_back(row[0]);
    b.push_back(row[1]);
  }
  return {std::move(a), std::move(b)};
}

TabulatedCDF parse_cdf_csv(const std::string& text) {
  auto [xs, ps] = parse_two_columns(text);
  return TabulatedCDF(std::move(xs), std::move(ps));
}

Gamble parse_gamble_csv(const std::string& text) {
  auto [ys, vs] = parse_two_columns(text);
  return Gamble::on_grid(std::move(ys), std::move(vs));
}

std::string cdf_to_csv(const TabulatedCDF& f) {
  std::string out = "x,p\n";
  for (std::size_t i = 0; i < f.xs().size(); ++i) out += fmt9(f.xs()[i]) + "," + fmt9(f.ps()[i]) + "\n";
  return out;
}

std::vector<NamedEllipsoid> parse_ellipsoids(const std::string& text, const Tolerance& tol) {
  const json j = parse_json(text);
  const auto& classes = require_key(j, "classes", text);
  if (!classes.is_array()) throw ParseError("field \"classes\" must be an array", line_of_key(text, "classes"));
  std::vector<NamedEllipsoid> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    const auto mean = number_array(require_key(c, "mean", text), "mean", text);
    const auto cov = number_array(require_key(c, "covariance", text), "covariance", text);
    if (mean.size() != 3) throw ParseError("\"mean\" must have 3 entries", line_of_key(text, "mean"));
    if (cov.size() != 9) {
      throw ParseError("\"covariance\" must have 9 entries (row-major 3x3)", line_of_key(text, "covariance"));
    }
    std::string label = std::to_string(i);
    if (c.contains("label") && c["label"].is_string()) label = c["label"].get<std::string>();
    const Eigen::Vector3d mu(mean[0], mean[1], mean[2]);
    Eigen::Matrix3d sigma;
    sigma << cov[0], cov[1], cov[2], cov[3], cov[4], cov[5], cov[6], cov[7], cov[8];
    try {
      out.push_back({label, ClassEllipsoid(mu, sigma, tol)});
    } catch (const DomainError& e) {
      throw ValidationError("class '" + label + "': " + e.what());
    }
  }
  return out;
}

AlphaEstimate parse_alphas(const std::string& text) {
  const json j = parse_json(text);
  const auto& a1 = require_key(j, "alpha1", text);
  const auto& a2 = require_key(j, "alpha2", text);
  if (!a1.is_number() || !a2.is_number()) throw ParseError("alphas must be numbers", line_of_key(text, "alpha1"));
  return AlphaEstimate(a1.get<double>(), a2.get<double>(), AlphaMethod::given);
}

LossTable parse_loss_table(const std::string& text) {
  const auto rows = numeric_rows(text, 3);
  if (rows.empty()) throw ParseError("loss table has no rows", 2);
  std::map<std::pair<double, double>, double> table;
  double base_noise = rows.front()[0];
  for (const auto& r : rows) {
    table[{r[0], r[1]}] = r[2];
    base_noise = std::min(base_noise, r[0]);
  }
  std::set<double> noises, fractions;
  for (const auto& r : rows) {
    if (r[1] == 1.0) noises.insert(r[0]);
    if (r[0] == base_noise) fractions.insert(r[1]);
  }
  LossTable out;
  out.noise_grid.assign(noises.begin(), noises.end());
  out.fraction_grid.assign(fractions.rbegin(), fractions.rend());
  out.callback = [table](double noise, double fraction) {
    const auto it = table.find({noise, fraction});
    if (it == table.end()) {
      throw DomainError("loss table has no row for noise " + fmt9(noise) + ", fraction " +
                        fmt9(fraction));
    }
    return it->second;
  };
  return out;
}

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x == 0.0 ? 0.0 : x);
  return buf;
}

double round9(double x) { return std::strtod(fmt9(x).c_str(), nullptr); }

json rounded(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round9(x));
  return out;
}

}  // namespace impuq::cli
