#pragma once

/**
 * Derived forecasting models built on the 24 base forecasters, and the
 * walk-forward backtests that evaluate them.
 *
 * "Balanced" fixes the two free parameters from the series length alone:
 * lambda_max = ceil((n-1)/2) and nu = floor((n-1)/2), the largest split
 * satisfying lambda_max + nu < n.
 *
 * Walk-forward convention: a backtest over x_1..x_n forecasts x_{i+1} from
 * the prefix x_1..x_i.  Prefixes shorter than 4 cannot be forecast (the
 * balanced parameters need n >= 4) and are recorded as skipped targets, so a
 * full-history backtest evaluates targets x_5..x_n.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratecast/selector.hpp"

namespace ratecast {

/// How the companion series Y is powered before rates are derived.
enum class PowerMode { None, FixedAlpha, MeanOptimized, LatestOptimized };

std::string to_string(PowerMode mode);

/// A fully specified model for backtesting/reporting.
struct ModelSpec {
  Shape shape = Shape::Natural;
  int kappa = 8;
  PowerMode power_mode = PowerMode::None;
  double alpha = 1.0;                  ///< used when power_mode == FixedAlpha
  std::optional<std::size_t> window;   ///< trailing window delta; empty = full history

  /// Throws DomainError/BoundsError on kappa outside 1..8, alpha outside
  /// [0,1], or window < 4.
  void validate() const;
};

/// One evaluated step of a walk-forward backtest.
struct StepRecord {
  std::size_t index = 0;      ///< 1-based index of the target observation
  double actual = 0.0;
  double forecast = 0.0;
  double residual = 0.0;      ///< forecast - actual
  EstimateFamily family_used = EstimateFamily::SharpMean;
  std::size_t lambda_star = 0;
  double alpha_used = 1.0;    ///< exponent applied to Y (1 when unpowered)
};

/// Result of a walk-forward backtest.
struct BacktestReport {
  std::vector<StepRecord> steps;
  std::vector<std::size_t> skipped;  ///< target indices that could not be forecast
  double sae = 0.0;                  ///< sum of |residual| over steps
  double sse = 0.0;                  ///< sum of residual^2 over steps
};

/**
 * Balanced forecast of x_{n+1}.  x and y must have equal length n >= 4
 * (LengthError/ShapeError otherwise).
 */
ForecastDecision balanced_forecast(Shape shape, const TimeSeries& x,
                                   const TimeSeries& y, int kappa);

/**
 * Full-history walk-forward backtest of the balanced forecaster.
 * Requires n >= 5 (at least one evaluable target; InsufficientData).
 */
BacktestReport backtest_balanced(Shape shape, const TimeSeries& x,
                                 const TimeSeries& y, int kappa);

/**
 * Balanced forecast driven by rates of y^alpha (elementwise; x untouched).
 * alpha = 1 is exactly balanced_forecast; alpha = 0 degrades all rates to
 * zero, so the forecast equals x_n.
 */
ForecastDecision alpha_power_forecast(Shape shape, const TimeSeries& x,
                                      const TimeSeries& y, int kappa,
                                      double alpha);

/// Candidate exponents for the alpha search; must be nonempty, each in [0,1].
struct AlphaGrid {
  std::vector<double> values;
  /// The default coarse grid {0, 0.1, ..., 1}.
  static AlphaGrid coarse();
};

/**
 * One entry of the trailing-error exponent trace.  For a prefix x_1..x_i
 * (i = x_prefix length) the entry is the grid alpha minimizing the running
 * sum of absolute one-step errors of the alpha-powered balanced forecaster
 * over all feasible targets j <= i (the first feasible target is j = 5).
 * Ties -- including the empty sum when i < 5 -- go to the LARGEST alpha.
 *
 * With refine = true a deterministic ternary-search refinement is run in the
 * +/- one-grid-step bracket around the winning grid point.
 */
double optimal_alpha_step(Shape shape, int kappa, const TimeSeries& x_prefix,
                          const TimeSeries& y_prefix, const AlphaGrid& grid,
                          bool refine = false);

/// Exponent trace alpha_3..alpha_n; entry k (0-based) is alpha_{3+k}.
struct AlphaTrace {
  std::vector<double> alphas;
  std::size_t first_target = 3;
};

struct AlphaBacktestResult {
  BacktestReport report;
  AlphaTrace trace;
};

/**
 * Walk-forward backtest of the alpha-optimized balanced forecaster.  At the
 * step forecasting x_{i+1} the available trace entries are alpha_3..alpha_i;
 * MeanOptimized powers y by their running mean, LatestOptimized by alpha_i.
 * mode must be one of those two (DomainError otherwise).
 */
AlphaBacktestResult backtest_alpha_optimized(Shape shape, const TimeSeries& x,
                                             const TimeSeries& y, int kappa,
                                             PowerMode mode,
                                             const AlphaGrid& grid = AlphaGrid::coarse(),
                                             bool refine = false);

/**
 * Balanced forecast from only the trailing `delta` observations of x and y.
 * Requires delta >= 4 and n >= delta.  delta = n is exactly
 * balanced_forecast.
 */
ForecastDecision delta_forecast(Shape shape, const TimeSeries& x,
                                const TimeSeries& y, int kappa,
                                std::size_t delta);

/**
 * Walk-forward backtest of the trailing-window forecaster over the last
 * `eval_steps` targets (eval_steps = 0 means every possible target, i.e.
 * n - delta of them).  Target x_t is forecast from x_{t-delta}..x_{t-1}.
 * Requires n >= delta + max(eval_steps, 1).
 */
BacktestReport backtest_delta(Shape shape, const TimeSeries& x,
                              const TimeSeries& y, int kappa,
                              std::size_t delta, std::size_t eval_steps = 0);

/**
 * Per-step winner tally between competing forecast sequences.  Each
 * contender supplies one forecast per actual (ShapeError otherwise;
 * EmptyBatch if there are no contenders or no steps).  At every step the
 * smallest absolute error wins; exact ties credit every tied contender.
 */
std::map<std::string, std::size_t> win_counts(
    const std::vector<std::pair<std::string, std::vector<double>>>& contenders,
    const std::vector<double>& actuals);

}  // namespace ratecast
