#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "impuq/core.hpp"
#include "impuq/interval.hpp"

namespace impuq {

/// Set of distribution functions F with lower_cdf <= F <= upper_cdf.
class PBox {
 public:
  /// Throws ValidationError naming the first abscissa where the bounds cross.
  PBox(TabulatedCDF lower_cdf, TabulatedCDF upper_cdf, const Tolerance& tol = {});

  const TabulatedCDF& lower_cdf() const noexcept { return lower_; }
  const TabulatedCDF& upper_cdf() const noexcept { return upper_; }

  double support_min() const;
  double support_max() const;

 private:
  TabulatedCDF lower_;
  TabulatedCDF upper_;
};

/// Lower probability of [min, s], i.e. lower_cdf(s).
double event_lower_probability(const PBox& pb, double s);
/// Upper probability of [min, s], i.e. upper_cdf(s).
double event_upper_probability(const PBox& pb, double s);
/// Lower probability of (r, max], i.e. 1 - upper_cdf(r).
double tail_lower_probability(const PBox& pb, double r);

/// Lower probability of [min, x1] u (x2, x3] u ... u (x_2n, x_2n+1]:
///   F_(x1) + sum_k max(0, F_(x_2k+1) - F^(x_2k)).
/// Cuts must be strictly increasing and odd in number.
double event_union_lower(const PBox& pb, std::span<const double> cuts);

/// Quantile cells [Q((i-1)/n), Q(i/n)], i = 1..n, of both bounds.
struct PBoxDiscretization {
  std::size_t n = 0;
  std::vector<IntervalModel> upper_cdf_cells;  ///< cells of the pointwise-higher CDF
  std::vector<IntervalModel> lower_cdf_cells;  ///< cells of the pointwise-lower CDF
};

PBoxDiscretization discretize(const PBox& pb, std::size_t n);

/// Which quantile cells feed which bound.
enum class CellPairing {
  /// Both sums run over the cells [F_hi^-1((i-1)/n), F_lo^-1(i/n)]. For an
  /// increasing gamble this is the inf over the higher CDF's cells and the sup
  /// over the lower CDF's cells. Coherent for every gamble.
  coherent,
  /// inf-sum over cells of the lower CDF, sup-sum over the higher CDF, as the
  /// formula is often written. Can give lower > upper; kept for reproduction.
  literal,
};

inline constexpr std::size_t kDefaultPBoxPartitions = 1000;

/// (1/n) sum_i inf over the i-th cell of `g`.
double lower_expectation(const PBox& pb, const Gamble& g, std::size_t n = kDefaultPBoxPartitions,
                         CellPairing pairing = CellPairing::coherent);
/// (1/n) sum_i sup over the i-th cell of `g`.
double upper_expectation(const PBox& pb, const Gamble& g, std::size_t n = kDefaultPBoxPartitions,
                         CellPairing pairing = CellPairing::coherent);

struct ConvergenceRow {
  std::size_t n;
  double lower;
  double upper;
};

/// Bounds for each partition count in `ns`, which must be strictly increasing.
std::vector<ConvergenceRow> convergence_report(const PBox& pb, const Gamble& g,
                                               std::span<const std::size_t> ns,
                                               CellPairing pairing = CellPairing::coherent);

}  // namespace impuq
