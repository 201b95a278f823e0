#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "impuq/core.hpp"
#include "impuq/credal.hpp"
#include "impuq/decomposition.hpp"
#include "impuq/randomset.hpp"

namespace impuq::cli {

/// Whole file as text. Throws ParseError if it cannot be read.
std::string read_file(const std::string& path);

/// Parses JSON, turning syntax errors into ParseError with the line number.
nlohmann::json parse_json(const std::string& text);

/// {"lowers": [...], "uppers": [...]}
ProbabilityIntervals parse_intervals(const std::string& text);
nlohmann::json intervals_to_json(const ProbabilityIntervals& pi);

/// {"kind": "bnn-samples" | "ensemble", "instances": [{"samples": [[...], ...]}, ...]}
/// {"kind": "inn-intervals" | "credal", "instances": [{"lowers": [...], "uppers": [...]}, ...]}
PredictionBundle parse_bundle(const std::string& text, const Tolerance& tol = {});
nlohmann::json bundle_to_json(const PredictionBundle& b);

/// Two numeric columns under a header line.
std::pair<std::vector<double>, std::vector<double>> parse_two_columns(const std::string& text);
TabulatedCDF parse_cdf_csv(const std::string& text);
Gamble parse_gamble_csv(const std::string& text);
std::string cdf_to_csv(const TabulatedCDF& f);

struct NamedEllipsoid {
  std::string label;
  ClassEllipsoid ellipsoid;
};

/// {"classes": [{"label": "cat", "mean": [x, y, z], "covariance": [9 reals, row-major]}, ...]}
std::vector<NamedEllipsoid> parse_ellipsoids(const std::string& text, const Tolerance& tol = {});

/// {"alpha1": a, "alpha2": b}
AlphaEstimate parse_alphas(const std::string& text);

/// Rows noise_scale,data_fraction,loss under a header line.
struct LossTable {
  std::vector<double> noise_grid;
  std::vector<double> fraction_grid;
  LossCallback callback;
};
LossTable parse_loss_table(const std::string& text);

/// `x` printed with 9 significant digits.
std::string fmt9(double x);
/// `x` rounded to 9 significant digits, for JSON output.
double round9(double x);
nlohmann::json rounded(const std::vector<double>& v);

}  // namespace impuq::cli
