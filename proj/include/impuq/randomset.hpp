#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "impuq/core.hpp"
#include "impuq/credal.hpp"

namespace impuq {

/// Subset of a label universe of at most 64 labels; bit k set means label k.
using LabelMask = std::uint64_t;

inline constexpr std::size_t kMaxMaskLabels = 64;

/// Basic mass assignment over non-empty focal sets.
class MassAssignment {
 public:
  MassAssignment(std::size_t universe, std::vector<LabelMask> focal_sets, std::vector<double> masses,
                 const Tolerance& tol = {});

  std::size_t universe() const noexcept { return universe_; }
  LabelMask full_set() const noexcept;
  const std::vector<LabelMask>& focal_sets() const noexcept { return focal_sets_; }
  const std::vector<double>& masses() const noexcept { return masses_; }

 private:
  std::size_t universe_;
  std::vector<LabelMask> focal_sets_;
  std::vector<double> masses_;
};

/// Total mass of focal sets contained in `a`.
double belief(const MassAssignment& m, LabelMask a);
/// Total mass of focal sets meeting `a`.
double plausibility(const MassAssignment& m, LabelMask a);
/// Singleton belief / plausibility as per-class bounds.
ProbabilityIntervals to_probability_intervals(const MassAssignment& m);

/// 95% chi-square quantile with 3 degrees of freedom.
inline constexpr double kChiSquare3Dof95 = 7.814727903251178;

/// Region {x : (x - mean)' cov^-1 (x - mean) <= chi2_3(0.95)} of a 3-D Gaussian
/// class cluster.
class ClassEllipsoid {
 public:
  /// Throws DomainError unless `covariance` is symmetric positive definite.
  ClassEllipsoid(const Eigen::Vector3d& mean, const Eigen::Matrix3d& covariance,
                 const Tolerance& tol = {});

  /// Ellipsoid whose 95% region is the ball of `radius` around `center`.
  static ClassEllipsoid ball(const Eigen::Vector3d& center, double radius);

  const Eigen::Vector3d& mean() const noexcept { return mean_; }
  const Eigen::Matrix3d& covariance() const noexcept { return covariance_; }
  double coverage() const noexcept { return 0.95; }

  bool contains(const Eigen::Vector3d& x) const;
  /// Axis-aligned bounding box.
  Eigen::Vector3d box_min() const { return mean_ - half_width_; }
  Eigen::Vector3d box_max() const { return mean_ + half_width_; }
  double volume() const;

 private:
  Eigen::Vector3d mean_;
  Eigen::Matrix3d covariance_;
  Eigen::Matrix3d precision_;
  Eigen::Vector3d half_width_;
};

struct OverlapEstimate {
  double iou = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinOverlapSamples = 10000;

/// Monte-Carlo intersection-over-union of the ellipsoids in `members`:
/// uniform points in the bounding box of their union, IoU = hits in all /
/// hits in any. Boxes without a common point give exactly 0.
OverlapEstimate subset_overlap(std::span<const ClassEllipsoid> members, std::size_t samples,
                               std::uint64_t seed);
OverlapEstimate ellipsoid_overlap(const ClassEllipsoid& e1, const ClassEllipsoid& e2,
                                  std::size_t samples, std::uint64_t seed);

struct FocalSet {
  std::vector<std::size_t> labels;  ///< sorted, at least two
  OverlapEstimate overlap;
};

struct FocalSelectionOptions {
  std::size_t budget = 1;                    ///< K
  std::size_t samples = kMinOverlapSamples;  ///< MC points per subset
  std::uint64_t seed = 42;
  std::size_t max_cardinality = 0;           ///< 0: no cap beyond the early stop
};

/// Rank order: higher IoU first, then smaller sets, then lexicographic labels.
bool focal_rank_before(const FocalSet& a, const FocalSet& b);

/// The `budget` non-singleton label sets with highest overlap, searched by
/// increasing cardinality from 2 and stopped once a cardinality leaves the
/// ranking unchanged.
///
/// A set's IoU cannot exceed that of any of its subsets, so a set of
/// cardinality c is only estimated when each of its (c-1)-subsets beats the
/// current K-th score; the others keep score 0. If fewer than `budget` sets
/// score, zero-score sets fill the list in rank order.
std::vector<FocalSet> select_focal_budget(std::span<const ClassEllipsoid> classes,
                                          const FocalSelectionOptions& opts);

/// Per-subset seed, independent of evaluation order.
std::uint64_t subset_seed(std::uint64_t seed, std::span<const std::size_t> labels);

}  // namespace impuq
