#include "impuq/credal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace impuq {

ProbabilityIntervals::ProbabilityIntervals(std::vector<double> lowers, std::vector<double> uppers)
    : lowers_(std::move(lowers)), uppers_(std::move(uppers)) {
  if (lowers_.empty() || lowers_.size() != uppers_.size()) {
    throw ValidationError("probability intervals need matching, non-empty lowers and uppers");
  }
  require_finite(lowers_, "lowers");
  require_finite(uppers_, "uppers");
  for (std::size_t k = 0; k < lowers_.size(); ++k) {
    if (!(0.0 <= lowers_[k] && lowers_[k] <= uppers_[k] && uppers_[k] <= 1.0)) {
      throw ValidationError("class " + std::to_string(k) +
                            " violates 0 <= lower <= upper <= 1");
    }
  }
}

ProbabilityIntervals ProbabilityIntervals::precise(const std::vector<double>& p) {
  return ProbabilityIntervals(p, p);
}

ProbabilityIntervals ProbabilityIntervals::vacuous(std::size_t classes) {
  return ProbabilityIntervals(std::vector<double>(classes, 0.0), std::vector<double>(classes, 1.0));
}

bool check_nonempty(const ProbabilityIntervals& pi, const Tolerance& tol) {
  const double lo = std::accumulate(pi.lowers().begin(), pi.lowers().end(), 0.0);
  const double hi = std::accumulate(pi.uppers().begin(), pi.uppers().end(), 0.0);
  return lo <= 1.0 + tol.abs_tol && 1.0 <= hi + tol.abs_tol;
}

ProbabilityIntervals normalize_reachable(const ProbabilityIntervals& pi, const Tolerance& tol) {
  if (!check_nonempty(pi, tol)) {
    throw InfeasibleError("credal set is empty: requires sum(lowers) <= 1 <= sum(uppers)");
  }
  const auto& l = pi.lowers();
  const auto& u = pi.uppers();
  const double sum_l = std::accumulate(l.begin(), l.end(), 0.0);
  const double sum_u = std::accumulate(u.begin(), u.end(), 0.0);
  std::vector<double> lo(l.size()), hi(u.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    lo[k] = std::clamp(std::max(l[k], 1.0 - (sum_u - u[k])), 0.0, 1.0);
    hi[k] = std::clamp(std::min(u[k], 1.0 - (sum_l - l[k])), 0.0, 1.0);
    // Rounding in the sums can cross bounds of a degenerate class.
    if (lo[k] > hi[k]) lo[k] = hi[k] = 0.5 * (lo[k] + hi[k]);
  }
  return ProbabilityIntervals(std::move(lo), std::move(hi));
}

std::vector<DiscreteDistribution> enumerate_vertices(const ProbabilityIntervals& pi,
                                                     const Tolerance& tol) {
  const std::size_t c = pi.size();
  if (c > kMaxVertexClasses) {
    throw SizeError("vertex enumeration supports at most " +
                    std::to_string(kMaxVertexClasses) + " classes, got " + std::to_string(c));
  }
  const auto& l = pi.lowers();
  const auto& u = pi.uppers();

  // Every vertex has at most one coordinate strictly inside its bounds: pin
  // all others to a bound and solve the remaining one from the simplex.
  std::vector<std::vector<double>> found;
  std::vector<double> p(c);
  for (std::size_t free = 0; free < c; ++free) {
    const std::uint64_t masks = std::uint64_t{1} << (c - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      double rest = 1.0;
      std::size_t bit = 0;
      for (std::size_t k = 0; k < c; ++k) {
        if (k == free) continue;
        p[k] = (mask >> bit++) & 1U ? u[k] : l[k];
        rest -= p[k];
      }
      if (rest < l[free] - tol.abs_tol || rest > u[free] + tol.abs_tol) continue;
      p[free] = std::clamp(rest, l[free], u[free]);
      if (std::abs(p[free] - l[free]) <= tol.abs_tol) p[free] = l[free];
      if (std::abs(p[free] - u[free]) <= tol.abs_tol) p[free] = u[free];
      found.push_back(p);
    }
  }
  // Bound coordinates are snapped exactly, so repeated vertices compare equal
  // or differ by rounding in the single interior coordinate.
  std::sort(found.begin(), found.end());
  const auto near = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t k = 0; k < c; ++k) {
      if (std::abs(a[k] - b[k]) > tol.abs_tol) return false;
    }
    return true;
  };
  std::vector<DiscreteDistribution> out;
  std::vector<std::vector<double>> kept;
  for (auto& v : found) {
    if (!kept.empty() && near(v, kept.back())) continue;
    kept.push_back(std::move(v));
  }
  out.reserve(kept.size());
  for (auto& v : kept) out.emplace_back(std::move(v), tol);
  return out;
}

CredalSet::CredalSet(const ProbabilityIntervals& pi, const Tolerance& tol)
    : tol_(tol), intervals_(normalize_reachable(pi, tol)), vertices_(enumerate_vertices(intervals_, tol)) {
  if (vertices_.empty()) throw InfeasibleError("credal set has no vertices");
}

bool CredalSet::contains(std::span<const double> p) const {
  if (p.size() != size()) return false;
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < intervals_.lowers()[k] - tol_.abs_tol) return false;
    if (p[k] > intervals_.uppers()[k] + tol_.abs_tol) return false;
    sum += p[k];
  }
  return std::abs(sum - 1.0) <= tol_.abs_tol * static_cast<double>(p.size());
}

bool CredalSet::is_singleton() const {
  for (std::size_t k = 0; k < size(); ++k) {
    if (intervals_.uppers()[k] - intervals_.lowers()[k] > tol_.abs_tol) return false;
  }
  return true;
}

double lower_expectation(const CredalSet& cs, const Gamble& g) {
  if (!g.is_labels() || g.size() != cs.size()) {
    throw DomainError("gamble must be a finite-label gamble over " + std::to_string(cs.size()) +
                      " classes");
  }
  const auto& l = cs.intervals().lowers();
  const auto& u = cs.intervals().uppers();
  const auto values = g.values();
  std::vector<std::size_t> order(cs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Start from the lower bounds and pour the free mass onto the cheapest labels.
  double remaining = 1.0 - std::accumulate(l.begin(), l.end(), 0.0);
  double e = 0.0;
  for (std::size_t k : order) {
    const double add = std::clamp(std::min(u[k] - l[k], remaining), 0.0, 1.0);
    remaining -= add;
    e += (l[k] + add) * values[k];
  }
  return e;
}

double upper_expectation(const CredalSet& cs, const Gamble& g) {
  return -lower_expectation(cs, -g);
}

std::vector<double> max_entropy_distribution(const ProbabilityIntervals& reachable) {
  const auto& l = reachable.lowers();
  const auto& u = reachable.uppers();
  std::vector<double> breaks;
  breaks.reserve(2 * l.size());
  breaks.insert(breaks.end(), l.begin(), l.end());
  breaks.insert(breaks.end(), u.begin(), u.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto mass_at = [&](double level) {
    double s = 0.0;
    for (std::size_t k = 0; k < l.size(); ++k) s += std::clamp(level, l[k], u[k]);
    return s;
  };
  // The total mass is piecewise linear and non-decreasing in the level.
  double level = breaks.back();
  double prev_level = breaks.front();
  double prev_mass = mass_at(prev_level);
  if (prev_mass >= 1.0) {
    level = prev_level;
  } else {
    for (std::size_t j = 1; j < breaks.size(); ++j) {
      const double m = mass_at(breaks[j]);
      if (m >= 1.0) {
        level = prev_level + (1.0 - prev_mass) * (breaks[j] - prev_level) / (m - prev_mass);
        break;
      }
      prev_level = breaks[j];
      prev_mass = m;
    }
  }
  std::vector<double> p(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) p[k] = std::clamp(level, l[k], u[k]);
  return p;
}

EntropyBounds entropy_bounds(const CredalSet& cs) {
  EntropyBounds b;
  b.argmax = max_entropy_distribution(cs.intervals());
  b.upper = shannon_entropy(b.argmax);
  // Entropy is concave, so its minimum sits on a vertex.
  b.lower = std::numeric_limits<double>::infinity();
  for (const auto& v : cs.vertices()) {
    const double h = shannon_entropy(v.probs());
    if (h < b.lower) {
      b.lower = h;
      b.argmin.assign(v.probs().begin(), v.probs().end());
    }
  }
  if (b.lower > b.upper) b.lower = b.upper;
  return b;
}

Decomposition credal_decomposition(const CredalSet& cs) {
  const auto b = entropy_bounds(cs);
  return Decomposition::credal_entropy(b.upper, b.lower, cs.tolerance());
}

}  // namespace impuq
