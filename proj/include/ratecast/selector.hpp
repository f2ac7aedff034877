#pragma once

/**
 * Window selection and the 24 base forecasting functions.
 *
 * For a series x_1..x_n the selector scores each window length
 * lambda = 1..lambda_max by the criterion sum at target i = n over the nu
 * most recent targets, picks the minimizing lambda (ties -> smallest), and
 * forecasts x_{n+1} by applying the family's rate form to the winning
 * window's statistic taken at the LAST rate index n-1.
 *
 * Three shapes combine the four families:
 *   Sharp    = better of the two growth families (mean wins ties),
 *   Flat     = better of the two discount families (mean wins ties),
 *   Natural  = better of all four (growth side wins ties).
 */

#include <cstddef>
#include <string>
#include <utility>

#include "ratecast/estimators.hpp"
#include "ratecast/series.hpp"

namespace ratecast {

/// Forecast shape: growth-form, discount-form, or best-of-both.
enum class Shape { Sharp, Flat, Natural };

/// Human-readable identifiers used in reports ("sharp", "flat", "natural").
std::string to_string(Shape shape);
std::string to_string(EstimateFamily family);

/**
 * Minimum criterion sum over lambda = 1..lambda_max at i = n, and the
 * minimizing lambda (ties -> smallest).
 *
 * Preconditions: lambda_max >= 1, nu >= 1, lambda_max + nu < n.
 */
std::pair<double, std::size_t> least_sum(EstimateFamily family,
                                         const TimeSeries& x,
                                         const RateSeries& rho, int kappa,
                                         std::size_t lambda_max,
                                         std::size_t nu);

/// A fully resolved forecast with its selection diagnostics.
struct ForecastDecision {
  double value = 0.0;             ///< forecast of x_{n+1}
  EstimateFamily family_used = EstimateFamily::SharpMean;
  int kappa = 0;
  std::size_t lambda_star = 0;    ///< selected window length
  double least_sum = 0.0;         ///< criterion sum achieved by lambda_star
  std::size_t lambda_max = 0;     ///< search bound used
  std::size_t nu = 0;             ///< lookback used
};

/**
 * Forecast of x_{n+1} by a single family at its selected window length.
 * rho must be a growth-rate sequence for sharp families and a discount-rate
 * sequence for flat families (ShapeError otherwise).
 */
ForecastDecision forecast_family(EstimateFamily family, const TimeSeries& x,
                                 const RateSeries& rho, int kappa,
                                 std::size_t lambda_max, std::size_t nu);

/// Better of the two growth families; mean wins ties.
ForecastDecision forecast_sharp(const TimeSeries& x, const RateSeries& r,
                                int kappa, std::size_t lambda_max,
                                std::size_t nu);

/// Better of the two discount families; mean wins ties.
ForecastDecision forecast_flat(const TimeSeries& x, const RateSeries& d,
                               int kappa, std::size_t lambda_max,
                               std::size_t nu);

/// Best of all four families; the growth side wins ties.
ForecastDecision forecast_natural(const TimeSeries& x, const RateSeries& r,
                                  const RateSeries& d, int kappa,
                                  std::size_t lambda_max, std::size_t nu);

/**
 * Dispatch on shape: derives the needed rate sequence(s) from y and calls
 * the matching forecaster.  x and y must have equal length (ShapeError).
 */
ForecastDecision forecast_shape(Shape shape, const TimeSeries& x,
                                const TimeSeries& y, int kappa,
                                std::size_t lambda_max, std::size_t nu);

}  // namespace ratecast
