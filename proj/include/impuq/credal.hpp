#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "impuq/core.hpp"
#include "impuq/uncertainty.hpp"

namespace impuq {

/// Per-class probability bounds [lowers[k], uppers[k]] with
/// 0 <= lowers[k] <= uppers[k] <= 1.
class ProbabilityIntervals {
 public:
  ProbabilityIntervals(std::vector<double> lowers, std::vector<double> uppers);

  /// Precise intervals lowers = uppers = p.
  static ProbabilityIntervals precise(const std::vector<double>& p);
  /// [0, 1] on every class.
  static ProbabilityIntervals vacuous(std::size_t classes);

  const std::vector<double>& lowers() const noexcept { return lowers_; }
  const std::vector<double>& uppers() const noexcept { return uppers_; }
  std::size_t size() const noexcept { return lowers_.size(); }

 private:
  std::vector<double> lowers_;
  std::vector<double> uppers_;
};

/// True iff sum(lowers) <= 1 <= sum(uppers), up to `tol.abs_tol`.
bool check_nonempty(const ProbabilityIntervals& pi, const Tolerance& tol = {});

/// Tightens every bound to the value some member of the credal set attains.
/// Throws InfeasibleError if the credal set is empty.
ProbabilityIntervals normalize_reachable(const ProbabilityIntervals& pi,
                                         const Tolerance& tol = {});

/// Extreme points of the credal set of reachable intervals, deduplicated and
/// sorted lexicographically. Throws SizeError for more than 16 classes.
std::vector<DiscreteDistribution> enumerate_vertices(const ProbabilityIntervals& pi,
                                                     const Tolerance& tol = {});

inline constexpr std::size_t kMaxVertexClasses = 16;

struct EntropyBounds {
  double upper;  ///< maximum entropy over the credal set
  double lower;  ///< minimum entropy over the credal set
  std::vector<double> argmax;
  std::vector<double> argmin;
};

/// Polytope of distributions cut from the simplex by probability intervals.
/// Construction normalizes to reachable bounds and caches the vertices.
class CredalSet {
 public:
  explicit CredalSet(const ProbabilityIntervals& pi, const Tolerance& tol = {});

  const ProbabilityIntervals& intervals() const noexcept { return intervals_; }
  const std::vector<DiscreteDistribution>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const Tolerance& tolerance() const noexcept { return tol_; }

  bool contains(std::span<const double> p) const;
  bool is_singleton() const;

 private:
  Tolerance tol_;
  ProbabilityIntervals intervals_;
  std::vector<DiscreteDistribution> vertices_;
};

/// Minimum of sum_k p_k g_k over the credal set by greedy bound assignment.
/// Ties in payoff go to the lower label index first.
double lower_expectation(const CredalSet& cs, const Gamble& g);
double upper_expectation(const CredalSet& cs, const Gamble& g);

/// The maximising distribution: p_k = clamp(level, lowers[k], uppers[k]) with
/// the common level solved exactly from sum p = 1.
std::vector<double> max_entropy_distribution(const ProbabilityIntervals& reachable);

EntropyBounds entropy_bounds(const CredalSet& cs);

/// TU = upper entropy, AU = lower entropy, EU = TU - AU.
Decomposition credal_decomposition(const CredalSet& cs);

}  // namespace impuq
