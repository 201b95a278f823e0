#include "impuq/randomset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace impuq {

// ---------------------------------------------------------------------------
// Mass assignments

MassAssignment::MassAssignment(std::size_t universe, std::vector<LabelMask> focal_sets,
                               std::vector<double> masses, const Tolerance& tol)
    : universe_(universe), focal_sets_(std::move(focal_sets)), masses_(std::move(masses)) {
  if (universe_ == 0 || universe_ > kMaxMaskLabels) {
    throw ValidationError("label universe must have between 1 and 64 labels");
  }
  if (focal_sets_.size() != masses_.size() || focal_sets_.empty()) {
    throw ValidationError("mass assignment needs one mass per focal set");
  }
  require_finite(masses_, "masses");
  const LabelMask full = full_set();
  double total = 0.0;
  for (std::size_t i = 0; i < focal_sets_.size(); ++i) {
    if (focal_sets_[i] == 0) throw ValidationError("focal sets must be non-empty");
    if ((focal_sets_[i] & ~full) != 0) throw ValidationError("focal set outside the label universe");
    if (masses_[i] < 0.0) throw ValidationError("masses must be non-negative");
    total += masses_[i];
  }
  auto sorted = focal_sets_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate focal set");
  }
  if (std::abs(total - 1.0) > tol.abs_tol) {
    throw ValidationError("masses sum to " + std::to_string(total) + ", not 1");
  }
}

LabelMask MassAssignment::full_set() const noexcept {
  return universe_ == kMaxMaskLabels ? ~LabelMask{0} : (LabelMask{1} << universe_) - 1;
}

namespace {

void require_subset(const MassAssignment& m, LabelMask a) {
  if (a == 0) throw DomainError("event must be a non-empty label set");
  if ((a & ~m.full_set()) != 0) throw DomainError("event outside the label universe");
}

}  // namespace

double belief(const MassAssignment& m, LabelMask a) {
  require_subset(m, a);
  double b = 0.0;
  for (std::size_t i = 0; i < m.focal_sets().size(); ++i) {
    if ((m.focal_sets()[i] & ~a) == 0) b += m.masses()[i];
  }
  return b;
}

double plausibility(const MassAssignment& m, LabelMask a) {
  require_subset(m, a);
  double p = 0.0;
  for (std::size_t i = 0; i < m.focal_sets().size(); ++i) {
    if ((m.focal_sets()[i] & a) != 0) p += m.masses()[i];
  }
  return p;
}

ProbabilityIntervals to_probability_intervals(const MassAssignment& m) {
  std::vector<double> lo(m.universe()), hi(m.universe());
  for (std::size_t k = 0; k < m.universe(); ++k) {
    const LabelMask single = LabelMask{1} << k;
    lo[k] = std::clamp(belief(m, single), 0.0, 1.0);
    hi[k] = std::clamp(plausibility(m, single), lo[k], 1.0);
  }
  return ProbabilityIntervals(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// Ellipsoids

ClassEllipsoid::ClassEllipsoid(const Eigen::Vector3d& mean, const Eigen::Matrix3d& covariance,
                               const Tolerance& tol)
    : mean_(mean), covariance_(covariance) {
  if (!mean_.allFinite() || !covariance_.allFinite()) {
    throw DomainError("ellipsoid has non-finite mean or covariance");
  }
  const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > tol.abs_tol * scale) {
    throw DomainError("covariance is not symmetric");
  }
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(covariance_);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw DomainError("covariance is not positive definite");
  }
  precision_ = covariance_.inverse();
  half_width_ = (kChiSquare3Dof95 * covariance_.diagonal()).cwiseSqrt();
}

ClassEllipsoid ClassEllipsoid::ball(const Eigen::Vector3d& center, double radius) {
  return ClassEllipsoid(center,
                        Eigen::Matrix3d::Identity() * (radius * radius / kChiSquare3Dof95));
}

bool ClassEllipsoid::contains(const Eigen::Vector3d& x) const {
  const Eigen::Vector3d d = x - mean_;
  return d.dot(precision_ * d) <= kChiSquare3Dof95;
}

double ClassEllipsoid::volume() const {
  const double r = std::sqrt(kChiSquare3Dof95);
  return 4.0 / 3.0 * std::numbers::pi * r * r * r * std::sqrt(covariance_.determinant());
}

OverlapEstimate subset_overlap(std::span<const ClassEllipsoid> members, std::size_t samples,
                               std::uint64_t seed) {
  if (members.empty()) throw DomainError("overlap needs at least one ellipsoid");
  if (samples < kMinOverlapSamples) {
    throw DomainError("overlap needs at least " + std::to_string(kMinOverlapSamples) + " samples");
  }
  Eigen::Vector3d common_lo = members[0].box_min(), common_hi = members[0].box_max();
  Eigen::Vector3d lo = common_lo, hi = common_hi;
  for (const auto& e : members) {
    common_lo = common_lo.cwiseMax(e.box_min());
    common_hi = common_hi.cwiseMin(e.box_max());
    lo = lo.cwiseMin(e.box_min());
    hi = hi.cwiseMax(e.box_max());
  }
  if ((common_lo.array() > common_hi.array()).any()) return {0.0, 0.0, 0};

  std::mt19937_64 gen(seed);
  const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const Eigen::Vector3d span = hi - lo;
  std::size_t in_all = 0, in_any = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::Vector3d x(lo.x() + unit() * span.x(), lo.y() + unit() * span.y(),
                            lo.z() + unit() * span.z());
    std::size_t hits = 0;
    for (const auto& e : members) hits += e.contains(x) ? 1 : 0;
    if (hits > 0) ++in_any;
    if (hits == members.size()) ++in_all;
  }
  if (in_any == 0) return {0.0, 0.0, samples};
  const double p = static_cast<double>(in_all) / static_cast<double>(in_any);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(in_any)), samples};
}

OverlapEstimate ellipsoid_overlap(const ClassEllipsoid& e1, const ClassEllipsoid& e2,
                                  std::size_t samples, std::uint64_t seed) {
  const ClassEllipsoid pair[] = {e1, e2};
  return subset_overlap(pair, samples, seed);
}

// ---------------------------------------------------------------------------
// Focal-set selection

std::uint64_t subset_seed(std::uint64_t seed, std::span<const std::size_t> labels) {
  // splitmix64 finalizer folded over the labels.
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (std::size_t k : labels) h = mix(h ^ (static_cast<std::uint64_t>(k) + 1));
  return h;
}

bool focal_rank_before(const FocalSet& a, const FocalSet& b) {
  if (a.overlap.iou != b.overlap.iou) return a.overlap.iou > b.overlap.iou;
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
  return a.labels < b.labels;
}

namespace {

using Labels = std::vector<std::size_t>;

void keep_top(std::vector<FocalSet>& ranked, std::size_t budget) {
  std::sort(ranked.begin(), ranked.end(), focal_rank_before);
  if (ranked.size() > budget) ranked.resize(budget);
}

bool same_labels(const std::vector<FocalSet>& a, const std::vector<FocalSet>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const FocalSet& x, const FocalSet& y) { return x.labels == y.labels; });
}

// Cardinality-c sets all of whose (c-1)-subsets are in `alive` (sorted).
std::vector<Labels> join_candidates(const std::vector<Labels>& alive) {
  const std::set<Labels> lookup(alive.begin(), alive.end());
  std::vector<Labels> out;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    for (std::size_t j = i + 1; j < alive.size(); ++j) {
      const Labels& a = alive[i];
      const Labels& b = alive[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
      Labels cand = a;
      cand.push_back(b.back());
      bool ok = true;
      for (std::size_t drop = 0; drop + 2 < cand.size() && ok; ++drop) {
        Labels sub;
        for (std::size_t t = 0; t < cand.size(); ++t) {
          if (t != drop) sub.push_back(cand[t]);
        }
        ok = lookup.count(sub) > 0;
      }
      if (ok) out.push_back(std::move(cand));
    }
  }
  return out;
}

// Next c-combination of {0..n-1} in lexicographic order; false after the last.
bool next_combination(Labels& comb, std::size_t n) {
  const std::size_t c = comb.size();
  for (std::size_t i = c; i-- > 0;) {
    if (comb[i] < n - c + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < c; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<FocalSet> select_focal_budget(std::span<const ClassEllipsoid> classes,
                                          const FocalSelectionOptions& opts) {
  const std::size_t n = classes.size();
  if (opts.budget == 0) throw DomainError("focal budget K must be at least 1");
  if (n < 2) throw DomainError("focal selection needs at least two classes");
  const std::size_t cap = opts.max_cardinality == 0 ? n : std::min(n, opts.max_cardinality);
  if (cap < 2) throw DomainError("maximum cardinality must be at least 2");

  const auto evaluate = [&](const Labels& labels) {
    std::vector<ClassEllipsoid> members;
    members.reserve(labels.size());
    for (std::size_t k : labels) members.push_back(classes[k]);
    return FocalSet{labels, subset_overlap(members, opts.samples, subset_seed(opts.seed, labels))};
  };

  std::vector<FocalSet> level;
  level.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) level.push_back(evaluate({i, j}));
  }
  std::vector<FocalSet> ranked = level;
  keep_top(ranked, opts.budget);

  for (std::size_t c = 3; c <= cap; ++c) {
    const bool full = ranked.size() == opts.budget;
    const double threshold = full ? ranked.back().overlap.iou : 0.0;
    std::vector<Labels> alive;
    for (const auto& s : level) {
      if (s.overlap.iou > threshold) alive.push_back(s.labels);
    }
    std::sort(alive.begin(), alive.end());
    const auto candidates = join_candidates(alive);
    if (candidates.empty()) break;

    std::vector<FocalSet> next;
    next.reserve(candidates.size());
    for (const auto& cand : candidates) next.push_back(evaluate(cand));
    std::vector<FocalSet> merged = ranked;
    merged.insert(merged.end(), next.begin(), next.end());
    keep_top(merged, opts.budget);
    const bool unchanged = same_labels(merged, ranked);
    ranked = std::move(merged);
    if (unchanged) break;
    level = std::move(next);
  }

  if (ranked.size() < opts.budget) {
    std::set<Labels> present;
    for (const auto& s : ranked) present.insert(s.labels);
    for (std::size_t c = 2; c <= cap && ranked.size() < opts.budget; ++c) {
      Labels comb(c);
      for (std::size_t i = 0; i < c; ++i) comb[i] = i;
      do {
        if (!present.count(comb)) ranked.push_back(FocalSet{comb, {}});
      } while (ranked.size() < opts.budget && next_combination(comb, n));
    }
    std::sort(ranked.begin(), ranked.end(), focal_rank_before);
  }
  return ranked;
}

}  // namespace impuq
