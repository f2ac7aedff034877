#pragma once

/**
 * Time-series container, derived rate sequences and window statistics.
 *
 * Index convention used across the library: observations of a series X of
 * length n are x_1..x_n (1-based, as in the accompanying docs and tests);
 * std::vector storage puts x_i at position i-1.  Rate sequences derived from
 * a length-n series have length n-1 and are likewise addressed 1-based.
 */

#include <cstddef>
#include <vector>

#include "ratecast/errors.hpp"

namespace ratecast {

/**
 * A univariate series with a seasonal frequency.  frequency = 1 means
 * non-seasonal; frequency = f > 1 means observations cycle through f seasons
 * (e.g. 12 for monthly data with a yearly pattern).
 *
 * Construction validates that the series is non-empty and every value is
 * finite; it does NOT require positivity (rate derivation checks the
 * denominators it actually needs).
 */
struct TimeSeries {
  std::vector<double> values;
  std::size_t frequency = 1;

  TimeSeries() = default;
  TimeSeries(std::vector<double> v, std::size_t freq = 1);

  std::size_t size() const { return values.size(); }
  /// 1-based access with bounds checking.
  double at(std::size_t i) const;
};

/// Which of the two rate definitions a rate sequence carries.
enum class RateKind { Interest, Discount };

/// A derived rate sequence; rho_1..rho_{n-1} for a length-n source series.
struct RateSeries {
  std::vector<double> rates;
  RateKind kind = RateKind::Interest;

  std::size_t size() const { return rates.size(); }
  double at(std::size_t i) const;
};

/**
 * Growth rates r_i = (y_{i+1} - y_i) / y_i, i = 1..n-1.
 * Throws LengthError if n < 2 and ZeroDenominator if some y_i (i < n) is 0.
 */
RateSeries rate_of_interest(const TimeSeries& y);

/**
 * Discount rates d_i = (y_{i+1} - y_i) / y_{i+1}, i = 1..n-1.
 * Throws LengthError if n < 2 and ZeroDenominator if some y_{i+1} is 0.
 */
RateSeries rate_of_discount(const TimeSeries& y);

/// Mean of the window rho_{i-lambda+1}..rho_i.  Throws WindowError if the
/// window does not fit (lambda < 1, i < lambda or i > size).
double mean_rate(const RateSeries& rho, std::size_t i, std::size_t lambda);

/// Median of the same window (midpoint of the two central order statistics
/// for even lambda).
double median_rate(const RateSeries& rho, std::size_t i, std::size_t lambda);

/// First `count` observations as a new series (frequency preserved).
/// Throws BoundsError if count is 0 or exceeds the length.
TimeSeries truncate(const TimeSeries& x, std::size_t count);

/**
 * Elementwise power y^alpha with the conventions 0^0 = 1, alpha = 1 an exact
 * copy and alpha = 0 the all-ones series.  alpha must lie in [0,1]
 * (DomainError otherwise); for fractional alpha every value must be
 * positive (DomainError).
 */
TimeSeries power_series(const TimeSeries& y, double alpha);

}  // namespace ratecast
