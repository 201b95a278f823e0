#include "impuq/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace impuq {

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(opt_tol > 0.0)) {
    throw ValidationError("tolerance fields must be strictly positive");
  }
  if (grid_resolution < 2) throw ValidationError("grid resolution must be at least 2");
}

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " contains a non-finite value");
  }
}

// ---------------------------------------------------------------------------
// Gamble

Gamble::Gamble(Domain d, std::vector<double> grid, std::vector<double> values)
    : domain_(d), grid_(std::move(grid)), values_(std::move(values)) {}

Gamble Gamble::labels(std::vector<double> values) {
  if (values.empty()) throw ValidationError("finite-label gamble needs at least one value");
  require_finite(values, "gamble values");
  return Gamble(Domain::finite_labels, {}, std::move(values));
}

Gamble Gamble::on_grid(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() < 2) throw ValidationError("real-grid gamble needs at least two knots");
  if (grid.size() != values.size()) {
    throw ValidationError("gamble grid and values differ in length");
  }
  require_finite(grid, "gamble grid");
  require_finite(values, "gamble values");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ValidationError("gamble grid must be strictly increasing");
  }
  return Gamble(Domain::real_grid, std::move(grid), std::move(values));
}

Gamble Gamble::tabulate(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t points) {
  if (points < 2 || !(hi > lo)) throw ValidationError("tabulation needs hi > lo and >= 2 points");
  std::vector<double> grid(points), values(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    values[i] = f(grid[i]);
  }
  return on_grid(std::move(grid), std::move(values));
}

Gamble Gamble::constant_on(double c, double lo, double hi) {
  return on_grid({lo, hi}, {c, c});
}

double Gamble::grid_min() const {
  if (is_labels()) return 0.0;
  return grid_.front();
}

double Gamble::grid_max() const {
  if (is_labels()) return static_cast<double>(values_.size() - 1);
  return grid_.back();
}

double Gamble::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double Gamble::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double Gamble::at_label(std::size_t k) const {
  if (k >= values_.size()) throw DomainError("label index out of range");
  return values_[k];
}

double Gamble::evaluate(double y) const {
  if (!std::isfinite(y)) throw DomainError("gamble evaluated at a non-finite point");
  if (is_labels()) {
    const double r = std::round(y);
    if (r != y || r < 0.0 || r >= static_cast<double>(values_.size())) {
      throw DomainError("label index out of range");
    }
    return values_[static_cast<std::size_t>(r)];
  }
  if (y < grid_.front() || y > grid_.back()) throw DomainError("abscissa outside gamble grid");
  if (y == grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), y);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
  const double x0 = grid_[i - 1], x1 = grid_[i];
  if (y == x0) return values_[i - 1];
  const double t = (y - x0) / (x1 - x0);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

Gamble Gamble::operator-() const {
  std::vector<double> neg(values_.size());
  std::transform(values_.begin(), values_.end(), neg.begin(), [](double v) { return -v; });
  return Gamble(domain_, grid_, std::move(neg));
}

double evaluate_gamble(const Gamble& g, double y) { return g.evaluate(y); }

// ---------------------------------------------------------------------------
// DiscreteDistribution

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs, const Tolerance& tol)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("distribution needs at least one label");
  require_finite(probs_, "distribution");
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0.0 || p > 1.0) throw ValidationError("probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.abs_tol) {
    throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

double DiscreteDistribution::expectation(const Gamble& g) const {
  if (!g.is_labels() || g.size() != probs_.size()) {
    throw DomainError("gamble does not match the distribution's label set");
  }
  double e = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) e += probs_[k] * g.values()[k];
  return e;
}

// ---------------------------------------------------------------------------
// TabulatedCDF

TabulatedCDF::TabulatedCDF(std::vector<double> xs, std::vector<double> ps)
    : xs_(std::move(xs)), ps_(std::move(ps)) {
  if (xs_.size() != ps_.size() || xs_.size() < 2) {
    throw ValidationError("CDF needs matching abscissae and probabilities, at least two knots");
  }
  require_finite(xs_, "CDF abscissae");
  require_finite(ps_, "CDF probabilities");
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (xs_[i] < xs_[i - 1]) throw ValidationError("CDF abscissae must be non-decreasing");
    if (i >= 2 && xs_[i] == xs_[i - 1] && xs_[i - 1] == xs_[i - 2]) {
      throw ValidationError("CDF abscissa repeated more than twice");
    }
    if (ps_[i] < ps_[i - 1]) throw ValidationError("CDF probabilities must be non-decreasing");
  }
  if (ps_.front() < 0.0) throw ValidationError("CDF probability below 0");
  if (std::abs(ps_.back() - 1.0) > 1e-9) throw ValidationError("CDF must end at probability 1");
  ps_.back() = 1.0;
}

TabulatedCDF TabulatedCDF::uniform(double lo, double hi, std::size_t knots) {
  if (!(hi > lo) || knots < 2) throw ValidationError("uniform CDF needs hi > lo and >= 2 knots");
  std::vector<double> xs(knots), ps(knots);
  for (std::size_t i = 0; i < knots; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(knots - 1);
    xs[i] = i + 1 == knots ? hi : lo + t * (hi - lo);
    ps[i] = t;
  }
  return TabulatedCDF(std::move(xs), std::move(ps));
}

double TabulatedCDF::eval(double s) const {
  if (s < xs_.front()) return 0.0;
  if (s >= xs_.back()) return 1.0;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  const double x0 = xs_[i - 1], x1 = xs_[i];
  const double t = (s - x0) / (x1 - x0);
  return ps_[i - 1] + t * (ps_[i] - ps_[i - 1]);
}

double TabulatedCDF::left_limit(double s) const {
  if (s <= xs_.front()) return 0.0;
  if (s > xs_.back()) return 1.0;
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  const double x0 = xs_[i - 1], x1 = xs_[i];
  const double t = (s - x0) / (x1 - x0);
  return ps_[i - 1] + t * (ps_[i] - ps_[i - 1]);
}

double TabulatedCDF::pseudo_inverse(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability level must lie in [0, 1]");
  if (p == 0.0) return support_min();
  if (p <= ps_.front()) return xs_.front();
  const auto it = std::lower_bound(ps_.begin(), ps_.end(), p);
  if (it == ps_.end()) return xs_.back();
  const std::size_t i = static_cast<std::size_t>(it - ps_.begin());
  const double x0 = xs_[i - 1], x1 = xs_[i];
  if (x0 == x1) return x1;
  const double t = (p - ps_[i - 1]) / (ps_[i] - ps_[i - 1]);
  return std::min(x1, x0 + t * (x1 - x0));
}

double TabulatedCDF::support_min() const {
  if (ps_.front() > 0.0) return xs_.front();
  std::size_t last_zero = 0;
  while (last_zero + 1 < ps_.size() && ps_[last_zero + 1] == 0.0) ++last_zero;
  return xs_[last_zero];
}

double TabulatedCDF::support_max() const {
  for (std::size_t i = 0; i < ps_.size(); ++i) {
    if (ps_[i] >= 1.0) return xs_[i];
  }
  return xs_.back();
}

double TabulatedCDF::expectation(const Gamble& g) const {
  if (g.is_labels()) throw DomainError("CDF expectation needs a real-grid gamble");
  if (support_min() < g.grid_min() || support_max() > g.grid_max()) {
    throw DomainError("CDF support leaves the gamble grid");
  }
  const auto grid = g.grid();
  double e = 0.0;
  if (ps_.front() > 0.0) e += ps_.front() * g.evaluate(xs_.front());
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    const double dp = ps_[i] - ps_[i - 1];
    if (dp <= 0.0) continue;
    const double x0 = xs_[i - 1], x1 = xs_[i];
    if (x0 == x1) {
      e += dp * g.evaluate(x1);
      continue;
    }
    // Trapezoid over the gamble knots inside (x0, x1); exact for linear pieces.
    const double density = dp / (x1 - x0);
    double a = x0, ga = g.evaluate(x0), area = 0.0;
    auto k = std::upper_bound(grid.begin(), grid.end(), x0);
    for (; k != grid.end() && *k < x1; ++k) {
      const double gb = g.evaluate(*k);
      area += 0.5 * (*k - a) * (ga + gb);
      a = *k;
      ga = gb;
    }
    area += 0.5 * (x1 - a) * (ga + g.evaluate(x1));
    e += density * area;
  }
  return e;
}

double cdf_eval(const TabulatedCDF& f, double s) { return f.eval(s); }
double cdf_pseudo_inverse(const TabulatedCDF& f, double p) { return f.pseudo_inverse(p); }

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

}  // namespace impuq
