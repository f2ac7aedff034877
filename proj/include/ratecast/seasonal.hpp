#pragma once

/**
 * Seasonal decomposition, the season-coupled power map, and the stochastic
 * exponent search.
 *
 * A series with frequency f and n = m*f observations splits into f
 * sub-series ("seasons"): sub-series s is (x_s, x_{f+s}, ..., x_{(m-1)f+s}).
 * Seasonal forecasting runs the balanced forecaster independently per
 * sub-series, but derives each sub-series' rates from the season-coupled
 * power map of the companion series, which mixes all f seasons of Y through
 * a tuple of exponents alpha = (alpha_1..alpha_f):
 *
 *   map(Y, alpha) sub-series s = sum over u = 1..f of
 *       (sub-series sigma(s,u) of Y)^alpha_u,   elementwise,
 *   with the cyclic pairing sigma(s,u) = ((s + u - 2) mod f) + 1.
 *
 * With f = 1 the map is Y^alpha_1 and everything reduces to the
 * non-seasonal model.
 */

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ratecast/models.hpp"

namespace ratecast {

/// Exponent tuple, one entry per season; each in [0,1].
struct SeasonalAlpha {
  std::vector<double> values;

  /// The all-ones tuple of length f.
  static SeasonalAlpha ones(std::size_t f);
};

/**
 * Sub-series of x for season s (1-based, s <= x.frequency).  Requires the
 * length to be a whole number of periods (ShapeError); the result has
 * frequency 1.
 */
TimeSeries subseries(const TimeSeries& x, std::size_t season);

/**
 * The season-coupled power map described above.  y.frequency must equal
 * alpha's length and divide y's length (ShapeError); fractional exponents
 * require positive values (DomainError).  The result keeps y's frequency.
 */
TimeSeries seasonal_power_map(const TimeSeries& y, const SeasonalAlpha& alpha);

/**
 * One period of seasonal balanced forecasts: entry s-1 forecasts the next
 * element of sub-series s (i.e. observation x_{m*f+s}).  x and y must have
 * equal length and frequency, covering m >= 4 full periods.
 */
std::vector<ForecastDecision> seasonal_balanced_forecast(
    Shape shape, int kappa, const TimeSeries& x, const TimeSeries& y,
    const SeasonalAlpha& alpha);

/// One evaluated observation of a seasonal walk-forward backtest.
struct SeasonalStep {
  std::size_t period = 0;   ///< 1-based target period
  std::size_t season = 0;   ///< 1-based season within the period
  std::size_t index = 0;    ///< 1-based index into the full series
  double actual = 0.0;
  double forecast = 0.0;
  double residual = 0.0;
};

/// Result of a seasonal walk-forward backtest.
struct SeasonalBacktestReport {
  std::vector<SeasonalStep> steps;
  std::vector<std::size_t> skipped_periods;  ///< target periods not forecast
  /// (target period, error sum over its f observations), evaluated periods only.
  std::vector<std::pair<std::size_t, double>> period_sae;
  std::vector<std::pair<std::size_t, double>> period_sse;
  double sae = 0.0;  ///< equals the sum of period_sae entries
  double sse = 0.0;
  /// Exponent tuple used for each evaluated target period.
  std::vector<std::pair<std::size_t, SeasonalAlpha>> alphas_used;
  std::uint64_t seed = 0;   ///< 0 and draws = 0 for the fixed-tuple backtest
  std::size_t draws = 0;
};

/// Error sum of one target period; BoundsError if that period was not evaluated.
double per_period_sae(const SeasonalBacktestReport& report, std::size_t period);

/**
 * Stochastic exponent tuple for the next period.  Given prefixes covering m
 * full periods (m >= 2), draws `draws` candidate tuples uniformly from
 * [0,1]^f and scores each by the absolute-error sum it would have produced
 * forecasting period m (the last one in the prefix) from the first m-1
 * periods.  The unique minimizer wins; any tie at the minimum -- including
 * "period m is not forecastable" (m-1 < 4) and "every candidate hit a zero
 * denominator" -- falls back to the all-ones tuple.  Candidates whose
 * evaluation hits a zero denominator score +infinity rather than throwing.
 *
 * Draws come from a dedicated stream derived from (seed, shape, kappa,
 * target period), so results do not depend on thread count and candidate k
 * is the same for every draws' >= k+1.
 */
SeasonalAlpha stochastic_alpha(Shape shape, int kappa,
                               const TimeSeries& x_prefix,
                               const TimeSeries& y_prefix, std::size_t draws,
                               std::uint64_t seed);

/**
 * Walk-forward seasonal backtest with per-period stochastic exponents:
 * every prefix of m >= 4 full periods forecasts all f observations of
 * period m+1 under stochastic_alpha's tuple for that period.  Needs at
 * least 5 full periods (InsufficientData); target periods 3 and 4 are
 * recorded as skipped.  draws >= 1 (DomainError otherwise).
 */
SeasonalBacktestReport seasonal_stochastic_backtest(Shape shape, int kappa,
                                                    const TimeSeries& x,
                                                    const TimeSeries& y,
                                                    std::size_t draws,
                                                    std::uint64_t seed);

/**
 * The same walk-forward evaluation with one constant exponent tuple.  With
 * alpha = ones(f) this is the unpowered seasonal balanced backtest, whose
 * f = 1 case coincides with backtest_balanced.
 */
SeasonalBacktestReport seasonal_fixed_backtest(Shape shape, int kappa,
                                               const TimeSeries& x,
                                               const TimeSeries& y,
                                               const SeasonalAlpha& alpha);

}  // namespace ratecast
