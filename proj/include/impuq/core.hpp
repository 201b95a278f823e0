#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "impuq/errors.hpp"

namespace impuq {

/// Numeric tolerance policy shared by every module.
struct Tolerance {
  double abs_tol = 1e-9;
  double opt_tol = 1e-8;
  std::size_t grid_resolution = 4096;

  /// Throws ValidationError unless every field is strictly positive.
  void validate() const;
};

/// Real-valued payoff, tabulated either on a finite label set or on a real
/// grid. Real-grid gambles are piecewise-linear between knots.
class Gamble {
 public:
  enum class Domain { finite_labels, real_grid };

  static Gamble labels(std::vector<double> values);
  static Gamble on_grid(std::vector<double> grid, std::vector<double> values);
  /// Samples `f` at `points` equally spaced knots on [lo, hi].
  static Gamble tabulate(const std::function<double(double)>& f, double lo, double hi,
                         std::size_t points);
  static Gamble constant_on(double c, double lo, double hi);

  Domain domain() const noexcept { return domain_; }
  bool is_labels() const noexcept { return domain_ == Domain::finite_labels; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double grid_min() const;
  double grid_max() const;
  double min_value() const;
  double max_value() const;

  /// Value at abscissa `y` (real grid, linear interpolation) or at label
  /// index `y` (finite labels). Throws DomainError when out of range.
  double evaluate(double y) const;
  double at_label(std::size_t k) const;

  Gamble operator-() const;

 private:
  Gamble(Domain d, std::vector<double> grid, std::vector<double> values);

  Domain domain_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Probability mass function over C labels.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs, const Tolerance& tol = {});

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }

  double expectation(const Gamble& g) const;

 private:
  std::vector<double> probs_;
};

/// Piecewise-linear CDF through (xs[i], ps[i]). A repeated abscissa encodes a
/// jump; evaluation is right-continuous at it. Zero left of xs[0] and one at
/// and beyond xs[last].
class TabulatedCDF {
 public:
  TabulatedCDF(std::vector<double> xs, std::vector<double> ps);

  /// Uniform distribution on [lo, hi] tabulated on `knots` points.
  static TabulatedCDF uniform(double lo, double hi, std::size_t knots = 2);

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ps() const noexcept { return ps_; }

  double eval(double s) const;
  double left_limit(double s) const;
  /// Smallest s with eval(s) >= p; the support infimum for p = 0.
  double pseudo_inverse(double p) const;

  /// Smallest and largest abscissa of the support (where the CDF moves).
  double support_min() const;
  double support_max() const;

  /// Expectation of a real-grid gamble. Exact for piecewise-linear gambles
  /// under a piecewise-constant density. Throws DomainError if the support
  /// leaves the gamble grid.
  double expectation(const Gamble& g) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ps_;
};

double cdf_eval(const TabulatedCDF& f, double s);
double cdf_pseudo_inverse(const TabulatedCDF& f, double p);
double evaluate_gamble(const Gamble& g, double y);

/// Shannon entropy in nats, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);

/// Rejects NaN and infinities with a ValidationError naming `what`.
void require_finite(std::span<const double> xs, const char* what);

}  // namespace impuq
