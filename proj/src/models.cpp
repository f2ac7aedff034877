#include "ratecast/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ratecast {

std::string to_string(PowerMode mode) {
  switch (mode) {
    case PowerMode::None:
      return "none";
    case PowerMode::FixedAlpha:
      return "fixed";
    case PowerMode::MeanOptimized:
      return "mean-opt";
    default:
      return "latest-opt";
  }
}

void ModelSpec::validate() const {
  if (kappa < 1 || kappa > 8) {
    throw BoundsError("criterion " + std::to_string(kappa) + " outside 1..8");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("exponent " + std::to_string(alpha) + " outside [0, 1]");
  }
  if (window && *window < 4) {
    throw DomainError("trailing window must cover at least 4 observations");
  }
}

namespace {

struct BalancedParams {
  std::size_t lambda_max;
  std::size_t nu;
};

// Split the n-1 rate positions into the window search range (ceiling half)
// and the scored targets (floor half).
BalancedParams balanced_params(std::size_t n) {
  return {n / 2, (n - 1) / 2};
}

StepRecord make_step(std::size_t index, double actual,
                     const ForecastDecision& decision, double alpha_used) {
  StepRecord step;
  step.index = index;
  step.actual = actual;
  step.forecast = decision.value;
  step.residual = decision.value - actual;
  step.family_used = decision.family_used;
  step.lambda_star = decision.lambda_star;
  step.alpha_used = alpha_used;
  return step;
}

void add_step(BacktestReport& report, StepRecord step) {
  report.sae += std::fabs(step.residual);
  report.sse += step.residual * step.residual;
  report.steps.push_back(std::move(step));
}

void validate_grid(const AlphaGrid& grid) {
  if (grid.values.empty()) {
    throw DomainError("exponent grid is empty");
  }
  for (double alpha : grid.values) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw DomainError("exponent grid value " + std::to_string(alpha) +
                        " outside [0, 1]");
    }
  }
}

// Absolute error the alpha-powered forecaster accumulates over every
// feasible one-step target of the prefix (j = 5..n), added in ascending j
// order so incremental callers can reproduce it term by term.
double running_abs_error(Shape shape, int kappa, const TimeSeries& x,
                         const TimeSeries& y, double alpha) {
  double err = 0.0;
  for (std::size_t j = 5; j <= x.size(); ++j) {
    const ForecastDecision fc = alpha_power_forecast(
        shape, truncate(x, j - 1), truncate(y, j - 1), kappa, alpha);
    err += std::fabs(fc.value - x.at(j));
  }
  return err;
}

// Grid scan: smallest error wins, ties go to the largest exponent.
double pick_alpha(const AlphaGrid& grid, const std::vector<double>& errors) {
  double best_err = std::numeric_limits<double>::infinity();
  double best_alpha = -1.0;
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    if (errors[g] < best_err ||
        (errors[g] == best_err && grid.values[g] > best_alpha)) {
      best_err = errors[g];
      best_alpha = grid.values[g];
    }
  }
  return best_alpha;
}

// Deterministic ternary descent inside the one-step grid bracket around the
// chosen point; keeps the grid point unless the refined exponent is strictly
// better.
double refine_alpha(Shape shape, int kappa, const TimeSeries& x,
                    const TimeSeries& y, const AlphaGrid& grid,
                    double winner) {
  std::vector<double> sorted = grid.values;
  std::sort(sorted.begin(), sorted.end());
  double lo = winner;
  double hi = winner;
  for (double alpha : sorted) {
    if (alpha < winner) {
      lo = alpha;
    }
    if (alpha > winner) {
      hi = alpha;
      break;
    }
  }
  if (lo == winner && hi == winner) {
    return winner;
  }
  const auto err_at = [&](double alpha) {
    return running_abs_error(shape, kappa, x, y, alpha);
  };
  double a = lo;
  double b = hi;
  for (int iter = 0; iter < 48; ++iter) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (err_at(m1) <= err_at(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  const double mid = 0.5 * (a + b);
  return err_at(mid) < err_at(winner) ? mid : winner;
}

}  // namespace

ForecastDecision balanced_forecast(Shape shape, const TimeSeries& x,
                                   const TimeSeries& y, int kappa) {
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  if (x.size() < 4) {
    throw LengthError("balanced forecast needs at least 4 observations");
  }
  const BalancedParams p = balanced_params(x.size());
  return forecast_shape(shape, x, y, kappa, p.lambda_max, p.nu);
}

BacktestReport backtest_balanced(Shape shape, const TimeSeries& x,
                                 const TimeSeries& y, int kappa) {
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  if (x.size() < 5) {
    throw InsufficientData(
        "walk-forward backtest needs at least 5 observations");
  }
  BacktestReport report;
  report.skipped = {3, 4};
  for (std::size_t i = 4; i < x.size(); ++i) {
    const ForecastDecision fc =
        balanced_forecast(shape, truncate(x, i), truncate(y, i), kappa);
    add_step(report, make_step(i + 1, x.at(i + 1), fc, 1.0));
  }
  return report;
}

ForecastDecision alpha_power_forecast(Shape shape, const TimeSeries& x,
                                      const TimeSeries& y, int kappa,
                                      double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("exponent " + std::to_string(alpha) + " outside [0, 1]");
  }
  if (alpha == 1.0) {
    return balanced_forecast(shape, x, y, kappa);
  }
  return balanced_forecast(shape, x, power_series(y, alpha), kappa);
}

AlphaGrid AlphaGrid::coarse() {
  return AlphaGrid{{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}};
}

double optimal_alpha_step(Shape shape, int kappa, const TimeSeries& x_prefix,
                          const TimeSeries& y_prefix, const AlphaGrid& grid,
                          bool refine) {
  validate_grid(grid);
  if (x_prefix.size() != y_prefix.size()) {
    throw ShapeError("series of " + std::to_string(x_prefix.size()) +
                     " and rate source of " + std::to_string(y_prefix.size()) +
                     " observations differ in length");
  }
  std::vector<double> errors(grid.values.size(), 0.0);
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    errors[g] =
        running_abs_error(shape, kappa, x_prefix, y_prefix, grid.values[g]);
  }
  const double winner = pick_alpha(grid, errors);
  if (!refine) {
    return winner;
  }
  return refine_alpha(shape, kappa, x_prefix, y_prefix, grid, winner);
}

AlphaBacktestResult backtest_alpha_optimized(Shape shape, const TimeSeries& x,
                                             const TimeSeries& y, int kappa,
                                             PowerMode mode,
                                             const AlphaGrid& grid,
                                             bool refine) {
  if (mode != PowerMode::MeanOptimized && mode != PowerMode::LatestOptimized) {
    throw DomainError(
        "exponent-optimized backtest needs mean-opt or latest-opt powering");
  }
  validate_grid(grid);
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  if (x.size() < 5) {
    throw InsufficientData(
        "walk-forward backtest needs at least 5 observations");
  }

  const std::size_t n = x.size();
  AlphaBacktestResult result;
  result.report.skipped = {3, 4};
  result.trace.alphas.reserve(n - 2);

  // Running per-exponent error sums over the prefix; extending the prefix
  // from i-1 to i observations adds the single new target j = i to every
  // exponent, reproducing the standalone grid search bit for bit.
  std::vector<double> running(grid.values.size(), 0.0);
  double alpha_sum = 0.0;
  for (std::size_t i = 3; i <= n; ++i) {
    if (i >= 5) {
      for (std::size_t g = 0; g < grid.values.size(); ++g) {
        const ForecastDecision fc =
            alpha_power_forecast(shape, truncate(x, i - 1), truncate(y, i - 1),
                                 kappa, grid.values[g]);
        running[g] += std::fabs(fc.value - x.at(i));
      }
    }
    double entry = pick_alpha(grid, running);
    if (refine) {
      entry = refine_alpha(shape, kappa, truncate(x, i), truncate(y, i), grid,
                           entry);
    }
    result.trace.alphas.push_back(entry);
    alpha_sum += entry;

    if (i >= 4 && i < n) {
      const double alpha_used = mode == PowerMode::LatestOptimized
                                    ? entry
                                    : alpha_sum / static_cast<double>(i - 2);
      const ForecastDecision fc = alpha_power_forecast(
          shape, truncate(x, i), truncate(y, i), kappa, alpha_used);
      add_step(result.report, make_step(i + 1, x.at(i + 1), fc, alpha_used));
    }
  }
  return result;
}

ForecastDecision delta_forecast(Shape shape, const TimeSeries& x,
                                const TimeSeries& y, int kappa,
                                std::size_t delta) {
  if (delta < 4) {
    throw DomainError("trailing window must cover at least 4 observations");
  }
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  if (x.size() < delta) {
    throw LengthError("series of " + std::to_string(x.size()) +
                      " observations is shorter than a trailing window of " +
                      std::to_string(delta));
  }
  const auto tail = [delta](const TimeSeries& s) {
    return TimeSeries(std::vector<double>(s.values.end() -
                                              static_cast<std::ptrdiff_t>(delta),
                                          s.values.end()),
                      1);
  };
  return balanced_forecast(shape, tail(x), tail(y), kappa);
}

BacktestReport backtest_delta(Shape shape, const TimeSeries& x,
                              const TimeSeries& y, int kappa,
                              std::size_t delta, std::size_t eval_steps) {
  if (delta < 4) {
    throw DomainError("trailing window must cover at least 4 observations");
  }
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  const std::size_t n = x.size();
  if (n < delta + 1) {
    throw InsufficientData("no walk-forward target fits after a trailing "
                           "window of " +
                           std::to_string(delta));
  }
  const std::size_t possible = n - delta;
  const std::size_t count = eval_steps == 0 ? possible : eval_steps;
  if (count > possible) {
    throw InsufficientData("requested " + std::to_string(count) +
                           " evaluation steps but only " +
                           std::to_string(possible) + " targets fit");
  }
  BacktestReport report;  // every evaluated target is explicit: nothing skipped
  for (std::size_t t = n - count + 1; t <= n; ++t) {
    const ForecastDecision fc = delta_forecast(
        shape, truncate(x, t - 1), truncate(y, t - 1), kappa, delta);
    add_step(report, make_step(t, x.at(t), fc, 1.0));
  }
  return report;
}

std::map<std::string, std::size_t> win_counts(
    const std::vector<std::pair<std::string, std::vector<double>>>& contenders,
    const std::vector<double>& actuals) {
  if (contenders.empty() || actuals.empty()) {
    throw EmptyBatch("winner tally needs contenders and evaluated steps");
  }
  for (const auto& [name, forecasts] : contenders) {
    if (forecasts.size() != actuals.size()) {
      throw ShapeError("contender '" + name + "' supplies " +
                       std::to_string(forecasts.size()) + " forecasts for " +
                       std::to_string(actuals.size()) + " steps");
    }
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& [name, forecasts] : contenders) {
    (void)forecasts;
    counts[name] = 0;
  }
  for (std::size_t k = 0; k < actuals.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [name, forecasts] : contenders) {
      (void)name;
      best = std::min(best, std::fabs(forecasts[k] - actuals[k]));
    }
    for (const auto& [name, forecasts] : contenders) {
      if (std::fabs(forecasts[k] - actuals[k]) == best) {
        ++counts[name];
      }
    }
  }
  return counts;
}

}  // namespace ratecast
