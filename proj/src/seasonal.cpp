#include "ratecast/seasonal.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ratecast/parallel.hpp"

namespace ratecast {

namespace {

// splitmix64: increment by the golden-ratio constant, then mix.
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d4d49fdb4aae2full;
  return z ^ (z >> 31);
}

struct DrawStream {
  std::uint64_t state;

  double next_uniform() {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d4d49fdb4aae2full;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

// Candidate draws are keyed on (seed, shape, criterion, target period) so
// every tuple is a pure function of those four values, independent of thread
// count, call order, and the data itself.
std::uint64_t stream_key(std::uint64_t seed, Shape shape, int kappa,
                         std::size_t target_period) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(shape));
  h = mix64(h ^ static_cast<std::uint64_t>(kappa));
  h = mix64(h ^ static_cast<std::uint64_t>(target_period));
  return h;
}

void check_same_shape(const TimeSeries& x, const TimeSeries& y) {
  if (x.size() != y.size() || x.frequency != y.frequency) {
    throw ShapeError("series and rate source must share length and frequency "
                     "(got " +
                     std::to_string(x.size()) + "/" +
                     std::to_string(x.frequency) + " vs " +
                     std::to_string(y.size()) + "/" +
                     std::to_string(y.frequency) + ")");
  }
}

std::size_t whole_periods(const TimeSeries& x) {
  if (x.size() % x.frequency != 0) {
    throw ShapeError("series length " + std::to_string(x.size()) +
                     " is not a whole number of " +
                     std::to_string(x.frequency) + "-season periods");
  }
  return x.size() / x.frequency;
}

TimeSeries prefix_periods(const TimeSeries& x, std::size_t periods) {
  return TimeSeries(
      std::vector<double>(x.values.begin(),
                          x.values.begin() + static_cast<std::ptrdiff_t>(
                                                 periods * x.frequency)),
      x.frequency);
}

// Absolute error a tuple would have produced forecasting period m of the
// prefix from the first m-1 periods; +infinity when any step of that
// evaluation fails.
double candidate_score(Shape shape, int kappa, const TimeSeries& x_history,
                       const TimeSeries& y_history, const TimeSeries& x_prefix,
                       const SeasonalAlpha& tuple, std::size_t m) {
  try {
    const std::vector<ForecastDecision> decisions =
        seasonal_balanced_forecast(shape, kappa, x_history, y_history, tuple);
    const std::size_t f = x_history.frequency;
    double sae = 0.0;
    for (std::size_t s = 1; s <= f; ++s) {
      sae += std::fabs(decisions[s - 1].value - x_prefix.at((m - 1) * f + s));
    }
    return sae;
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

SeasonalBacktestReport run_walk_forward(
    Shape shape, int kappa, const TimeSeries& x, const TimeSeries& y,
    std::uint64_t seed, std::size_t draws,
    const std::function<SeasonalAlpha(const TimeSeries&, const TimeSeries&)>&
        choose_tuple) {
  check_same_shape(x, y);
  const std::size_t periods = whole_periods(x);
  if (periods < 5) {
    throw InsufficientData(
        "seasonal walk-forward backtest needs at least 5 full periods");
  }
  const std::size_t f = x.frequency;
  SeasonalBacktestReport report;
  report.seed = seed;
  report.draws = draws;
  report.skipped_periods = {3, 4};
  for (std::size_t target = 5; target <= periods; ++target) {
    const TimeSeries x_prefix = prefix_periods(x, target - 1);
    const TimeSeries y_prefix = prefix_periods(y, target - 1);
    const SeasonalAlpha tuple = choose_tuple(x_prefix, y_prefix);
    const std::vector<ForecastDecision> decisions =
        seasonal_balanced_forecast(shape, kappa, x_prefix, y_prefix, tuple);
    double period_sae = 0.0;
    double period_sse = 0.0;
    for (std::size_t s = 1; s <= f; ++s) {
      SeasonalStep step;
      step.period = target;
      step.season = s;
      step.index = (target - 1) * f + s;
      step.actual = x.at(step.index);
      step.forecast = decisions[s - 1].value;
      step.residual = step.forecast - step.actual;
      period_sae += std::fabs(step.residual);
      period_sse += step.residual * step.residual;
      report.steps.push_back(step);
    }
    report.period_sae.emplace_back(target, period_sae);
    report.period_sse.emplace_back(target, period_sse);
    report.sae += period_sae;
    report.sse += period_sse;
    report.alphas_used.emplace_back(target, tuple);
  }
  return report;
}

}  // namespace

SeasonalAlpha SeasonalAlpha::ones(std::size_t f) {
  return SeasonalAlpha{std::vector<double>(f, 1.0)};
}

TimeSeries subseries(const TimeSeries& x, std::size_t season) {
  const std::size_t f = x.frequency;
  const std::size_t periods = whole_periods(x);
  if (season < 1 || season > f) {
    throw BoundsError("season " + std::to_string(season) + " outside 1.." +
                      std::to_string(f));
  }
  std::vector<double> values;
  values.reserve(periods);
  for (std::size_t k = season; k <= x.size(); k += f) {
    values.push_back(x.values[k - 1]);
  }
  return TimeSeries(std::move(values), 1);
}

TimeSeries seasonal_power_map(const TimeSeries& y, const SeasonalAlpha& alpha) {
  const std::size_t f = y.frequency;
  if (alpha.values.size() != f) {
    throw ShapeError("exponent tuple of length " +
                     std::to_string(alpha.values.size()) +
                     " does not match frequency " + std::to_string(f));
  }
  const std::size_t periods = whole_periods(y);
  for (double a : alpha.values) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw DomainError("exponent " + std::to_string(a) + " outside [0, 1]");
    }
  }
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t s = 1; s <= f; ++s) {
    for (std::size_t t = 0; t < periods; ++t) {
      double acc = 0.0;
      for (std::size_t u = 1; u <= f; ++u) {
        const std::size_t sigma = ((s + u - 2) % f) + 1;
        const double base = y.values[t * f + sigma - 1];
        const double a = alpha.values[u - 1];
        if (a == 1.0) {
          acc += base;
        } else if (a == 0.0) {
          acc += 1.0;
        } else if (base <= 0.0) {
          throw DomainError(
              "fractional exponent needs positive values; observation " +
              std::to_string(t * f + sigma) + " is not positive");
        } else {
          acc += std::pow(base, a);
        }
      }
      out[t * f + s - 1] = acc;
    }
  }
  return TimeSeries(std::move(out), f);
}

std::vector<ForecastDecision> seasonal_balanced_forecast(
    Shape shape, int kappa, const TimeSeries& x, const TimeSeries& y,
    const SeasonalAlpha& alpha) {
  check_same_shape(x, y);
  const std::size_t periods = whole_periods(x);
  if (periods < 4) {
    throw LengthError(
        "seasonal balanced forecast needs at least 4 full periods");
  }
  const TimeSeries mapped = seasonal_power_map(y, alpha);
  std::vector<ForecastDecision> decisions;
  decisions.reserve(x.frequency);
  for (std::size_t s = 1; s <= x.frequency; ++s) {
    decisions.push_back(
        balanced_forecast(shape, subseries(x, s), subseries(mapped, s), kappa));
  }
  return decisions;
}

double per_period_sae(const SeasonalBacktestReport& report,
                      std::size_t period) {
  for (const auto& [p, value] : report.period_sae) {
    if (p == period) {
      return value;
    }
  }
  throw BoundsError("period " + std::to_string(period) + " was not evaluated");
}

SeasonalAlpha stochastic_alpha(Shape shape, int kappa,
                               const TimeSeries& x_prefix,
                               const TimeSeries& y_prefix, std::size_t draws,
                               std::uint64_t seed) {
  if (draws < 1) {
    throw DomainError("stochastic exponent search needs at least one draw");
  }
  check_same_shape(x_prefix, y_prefix);
  const std::size_t f = x_prefix.frequency;
  const std::size_t m = whole_periods(x_prefix);
  if (m < 2) {
    throw LengthError(
        "stochastic exponent search needs at least two full periods");
  }
  if (m - 1 < 4) {
    // Period m cannot be forecast from m-1 periods: every candidate ties.
    return SeasonalAlpha::ones(f);
  }

  const TimeSeries x_history = prefix_periods(x_prefix, m - 1);
  const TimeSeries y_history = prefix_periods(y_prefix, m - 1);

  DrawStream stream{stream_key(seed, shape, kappa, m + 1)};
  std::vector<SeasonalAlpha> candidates(draws);
  for (std::size_t k = 0; k < draws; ++k) {
    candidates[k].values.resize(f);
    for (std::size_t u = 0; u < f; ++u) {
      candidates[k].values[u] = stream.next_uniform();
    }
  }

  std::vector<double> scores(draws, 0.0);
  parallel_for(draws, [&](std::size_t k) {
    scores[k] = candidate_score(shape, kappa, x_history, y_history, x_prefix,
                                candidates[k], m);
  });

  // Unique finite minimum wins; any tie falls back to the all-ones tuple.
  double best_score = std::numeric_limits<double>::infinity();
  std::size_t best_k = draws;
  std::size_t ties = 0;
  for (std::size_t k = 0; k < draws; ++k) {
    if (scores[k] < best_score) {
      best_score = scores[k];
      best_k = k;
      ties = 1;
    } else if (scores[k] == best_score) {
      ++ties;
    }
  }
  if (best_k == draws || ties != 1) {
    return SeasonalAlpha::ones(f);
  }
  return candidates[best_k];
}

SeasonalBacktestReport seasonal_stochastic_backtest(Shape shape, int kappa,
                                                    const TimeSeries& x,
                                                    const TimeSeries& y,
                                                    std::size_t draws,
                                                    std::uint64_t seed) {
  if (draws < 1) {
    throw DomainError("stochastic exponent search needs at least one draw");
  }
  return run_walk_forward(
      shape, kappa, x, y, seed, draws,
      [&](const TimeSeries& x_prefix, const TimeSeries& y_prefix) {
        return stochastic_alpha(shape, kappa, x_prefix, y_prefix, draws, seed);
      });
}

SeasonalBacktestReport seasonal_fixed_backtest(Shape shape, int kappa,
                                               const TimeSeries& x,
                                               const TimeSeries& y,
                                               const SeasonalAlpha& alpha) {
  return run_walk_forward(shape, kappa, x, y, 0, 0,
                          [&](const TimeSeries&, const TimeSeries&) {
                            return alpha;
                          });
}

}  // namespace ratecast
