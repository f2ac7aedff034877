#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "ratecast/models.hpp"
#include "support/bruteforce.hpp"
#include "support/fixtures.hpp"
#include "support/random_series.hpp"

using namespace ratecast;

namespace {
/// The ten-point worked-example series (built lazily: no static-init order
/// dependence on library code).
const TimeSeries& worked_series() {
  static const TimeSeries x(std::vector<double>(fixtures::kClose10.begin(),
                                                fixtures::kClose10.end()));
  return x;
}
constexpr double kTol5 = 6e-6;

bool bitwise_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}
}  // namespace

TEST_CASE("model spec validation") {
  ModelSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.kappa = 0;
  CHECK_THROWS_AS(spec.validate(), BoundsError);
  spec.kappa = 9;
  CHECK_THROWS_AS(spec.validate(), BoundsError);
  spec.kappa = 3;
  spec.alpha = 1.5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.alpha = 0.5;
  spec.window = 3;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.window = 4;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("balanced forecast fixes the parameters from the length") {
  // n = 10 -> λ_max = 5, ν = 4: exactly the worked example's configuration.
  for (int kappa = 1; kappa <= 8; ++kappa) {
    CAPTURE(kappa);
    const auto sharp = balanced_forecast(Shape::Sharp, worked_series(), worked_series(), kappa);
    CHECK(sharp.lambda_max == 5);
    CHECK(sharp.nu == 4);
    CHECK(std::fabs(sharp.value - fixtures::kSharpForecasts[kappa - 1]) < kTol5);
    CHECK(std::fabs(balanced_forecast(Shape::Flat, worked_series(), worked_series(), kappa).value -
                    fixtures::kFlatForecasts[kappa - 1]) < kTol5);
    CHECK(std::fabs(balanced_forecast(Shape::Natural, worked_series(), worked_series(), kappa).value -
                    fixtures::kNaturalForecasts[kappa - 1]) < kTol5);
  }

  // Odd length: n = 9 -> λ_max = 4, ν = 4.
  const TimeSeries x9 = truncate(worked_series(), 9);
  const auto fc9 = balanced_forecast(Shape::Sharp, x9, x9, 1);
  CHECK(fc9.lambda_max == 4);
  CHECK(fc9.nu == 4);

  // Smallest allowed input: n = 4 -> λ_max = 2, ν = 1.
  const TimeSeries x4 = truncate(worked_series(), 4);
  const auto fc4 = balanced_forecast(Shape::Natural, x4, x4, 8);
  CHECK(fc4.lambda_max == 2);
  CHECK(fc4.nu == 1);

  CHECK_THROWS_AS(balanced_forecast(Shape::Sharp, truncate(worked_series(), 3), truncate(worked_series(), 3), 1),
                  LengthError);
  const TimeSeries y9(testgen::positive_series(5, 9));
  CHECK_THROWS_AS(balanced_forecast(Shape::Sharp, worked_series(), y9, 1), ShapeError);
}

TEST_CASE("balanced forecast matches brute force on random series") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(rng() % 30);
    const std::vector<double> xv = testgen::positive_series(rng(), n);
    const std::vector<double> yv = testgen::positive_series(rng(), n);
    const int kappa = 1 + static_cast<int>(rng() % 8);
    CAPTURE(trial);
    for (int shape = 0; shape < 3; ++shape) {
      const double got = balanced_forecast(static_cast<Shape>(shape),
                                           TimeSeries(xv), TimeSeries(yv), kappa)
                             .value;
      CHECK(got == doctest::Approx(bruteforce::balanced(shape, xv, yv, kappa))
                       .epsilon(1e-12));
    }
  }
}

TEST_CASE("walk-forward backtest evaluates targets 5..n and skips 3,4") {
  const auto report = backtest_balanced(Shape::Sharp, worked_series(), worked_series(), 7);
  CHECK(report.skipped == std::vector<std::size_t>{3, 4});
  REQUIRE(report.steps.size() == 6);
  double sae = 0.0, sse = 0.0;
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    const auto& step = report.steps[k];
    CHECK(step.index == 5 + k);
    CHECK(step.actual == worked_series().at(step.index));
    CHECK(step.residual == doctest::Approx(step.forecast - step.actual).epsilon(1e-15));
    CHECK(step.alpha_used == 1.0);
    // Each step equals a fresh forecast from the matching prefix.
    const TimeSeries prefix = truncate(worked_series(), step.index - 1);
    const auto direct = balanced_forecast(Shape::Sharp, prefix, prefix, 7);
    CHECK(bitwise_equal(step.forecast, direct.value));
    CHECK(step.lambda_star == direct.lambda_star);
    CHECK(step.family_used == direct.family_used);
    sae += std::fabs(step.residual);
    sse += step.residual * step.residual;
  }
  CHECK(report.sae == doctest::Approx(sae).epsilon(1e-15));
  CHECK(report.sse == doctest::Approx(sse).epsilon(1e-15));

  const auto [made, sae_bf] = bruteforce::backtest_sae(0, worked_series().values, worked_series().values, 7);
  CHECK(made == report.steps.size());
  CHECK(report.sae == doctest::Approx(sae_bf).epsilon(1e-12));
}

TEST_CASE("backtest needs at least one evaluable target") {
  const TimeSeries x5 = truncate(worked_series(), 5);
  const auto report = backtest_balanced(Shape::Flat, x5, x5, 2);
  CHECK(report.steps.size() == 1);
  CHECK(report.steps[0].index == 5);
  const TimeSeries x4 = truncate(worked_series(), 4);
  CHECK_THROWS_AS(backtest_balanced(Shape::Flat, x4, x4, 2), InsufficientData);
}

TEST_CASE("backtests are deterministic") {
  const auto a = backtest_balanced(Shape::Natural, worked_series(), worked_series(), 5);
  const auto b = backtest_balanced(Shape::Natural, worked_series(), worked_series(), 5);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k)
    CHECK(bitwise_equal(a.steps[k].forecast, b.steps[k].forecast));
  CHECK(bitwise_equal(a.sae, b.sae));
}

TEST_CASE("alpha powering transforms the companion series only") {
  const TimeSeries y(testgen::positive_series(31, 10));

  SUBCASE("alpha = 1 is bitwise the balanced forecast") {
    for (int shape = 0; shape < 3; ++shape) {
      const auto powered =
          alpha_power_forecast(static_cast<Shape>(shape), worked_series(), y, 4, 1.0);
      const auto plain = balanced_forecast(static_cast<Shape>(shape), worked_series(), y, 4);
      CHECK(bitwise_equal(powered.value, plain.value));
      CHECK(powered.lambda_star == plain.lambda_star);
    }
  }
  SUBCASE("alpha = 0 collapses every rate to zero") {
    for (int shape = 0; shape < 3; ++shape) {
      const auto fc = alpha_power_forecast(static_cast<Shape>(shape), worked_series(), y, 6, 0.0);
      CHECK(fc.value == worked_series().at(worked_series().size()));
    }
  }
  SUBCASE("fractional alpha equals balanced on the powered series") {
    const auto fc = alpha_power_forecast(Shape::Natural, worked_series(), y, 8, 0.37);
    const auto manual = balanced_forecast(Shape::Natural, worked_series(), power_series(y, 0.37), 8);
    CHECK(bitwise_equal(fc.value, manual.value));
    CHECK(fc.family_used == manual.family_used);
  }
  SUBCASE("brute-force agreement") {
    const std::vector<double> ypow = bruteforce::power_series(y.values, 0.6);
    const double want = bruteforce::balanced(2, worked_series().values, ypow, 3);
    CHECK(alpha_power_forecast(Shape::Natural, worked_series(), y, 3, 0.6).value ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("the coarse grid spans 0..1 in steps of 0.1") {
  const AlphaGrid grid = AlphaGrid::coarse();
  REQUIRE(grid.values.size() == 11);
  CHECK(grid.values.front() == 0.0);
  CHECK(grid.values.back() == 1.0);
  CHECK(grid.values[5] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("exponent search minimizes the running absolute error") {
  const TimeSeries x(testgen::positive_series(91, 8));
  const TimeSeries y(testgen::positive_series(92, 8));
  const AlphaGrid grid = AlphaGrid::coarse();

  SUBCASE("too-short prefixes tie and fall back to the largest alpha") {
    CHECK(optimal_alpha_step(Shape::Sharp, 2, truncate(x, 3), truncate(y, 3), grid) == 1.0);
    CHECK(optimal_alpha_step(Shape::Sharp, 2, truncate(x, 4), truncate(y, 4), grid) == 1.0);
  }
  SUBCASE("the winner beats every other grid point, by brute force") {
    for (std::size_t len : {5UL, 7UL, 8UL}) {
      const TimeSeries xp = truncate(x, len);
      const TimeSeries yp = truncate(y, len);
      const double chosen = optimal_alpha_step(Shape::Flat, 8, xp, yp, grid);
      // Recompute every grid point's running error with the naive loops.
      double best = std::numeric_limits<double>::infinity();
      double best_alpha = 0.0;
      for (double a : grid.values) {
        double err = 0.0;
        for (std::size_t j = 5; j <= len; ++j) {
          const std::vector<double> xj(xp.values.begin(), xp.values.begin() + j - 1);
          const std::vector<double> yj(yp.values.begin(), yp.values.begin() + j - 1);
          err += std::fabs(bruteforce::balanced(1, xj, bruteforce::power_series(yj, a), 8) -
                           xp.values[j - 1]);
        }
        if (err < best || (err == best && a > best_alpha)) {
          best = err;
          best_alpha = a;
        }
      }
      CAPTURE(len);
      CHECK(chosen == best_alpha);
    }
  }
  SUBCASE("constant series tie every alpha and pick 1") {
    const TimeSeries c(std::vector<double>(7, 42.0));
    CHECK(optimal_alpha_step(Shape::Sharp, 7, c, c, grid) == 1.0);
  }
  SUBCASE("grid validation") {
    CHECK_THROWS_AS(optimal_alpha_step(Shape::Sharp, 1, x, y, AlphaGrid{{}}), DomainError);
    CHECK_THROWS_AS(optimal_alpha_step(Shape::Sharp, 1, x, y, AlphaGrid{{0.5, 1.2}}),
                    DomainError);
  }
  SUBCASE("refinement stays within the bracket and never does worse") {
    const double coarse_pick = optimal_alpha_step(Shape::Flat, 8, x, y, grid, false);
    const double refined = optimal_alpha_step(Shape::Flat, 8, x, y, grid, true);
    CHECK(refined >= std::max(0.0, coarse_pick - 0.1001));
    CHECK(refined <= std::min(1.0, coarse_pick + 0.1001));
  }
}

TEST_CASE("alpha-optimized backtest keeps a causal trace") {
  const TimeSeries x(testgen::positive_series(301, 14));
  const TimeSeries y(testgen::positive_series(302, 14));
  const AlphaGrid grid = AlphaGrid::coarse();

  for (PowerMode mode : {PowerMode::LatestOptimized, PowerMode::MeanOptimized}) {
    CAPTURE(to_string(mode));
    const auto result = backtest_alpha_optimized(Shape::Natural, x, y, 8, mode, grid);
    const auto& trace = result.trace.alphas;

    // Trace covers alpha_3..alpha_n and opens with the 1-valued conventions.
    CHECK(result.trace.first_target == 3);
    REQUIRE(trace.size() == x.size() - 2);
    CHECK(trace[0] == 1.0);  // alpha_3: defined as 1
    CHECK(trace[1] == 1.0);  // alpha_4: empty running sum, tie -> largest

    // Every entry equals the standalone search on the matching prefix.
    for (std::size_t i = 3; i <= x.size(); ++i)
      CHECK(trace[i - 3] == optimal_alpha_step(Shape::Natural, 8, truncate(x, i),
                                               truncate(y, i), grid));

    // Steps use the trace causally: forecasting x_{i+1} sees alpha_3..alpha_i.
    CHECK(result.report.skipped == std::vector<std::size_t>{3, 4});
    REQUIRE(result.report.steps.size() == x.size() - 4);
    for (const auto& step : result.report.steps) {
      const std::size_t i = step.index - 1;  // prefix length
      double expect_alpha;
      if (mode == PowerMode::LatestOptimized) {
        expect_alpha = trace[i - 3];
      } else {
        double s = 0.0;
        for (std::size_t k = 3; k <= i; ++k) s += trace[k - 3];
        expect_alpha = s / static_cast<double>(i - 2);
      }
      CHECK(step.alpha_used == doctest::Approx(expect_alpha).epsilon(1e-15));
      const double manual =
          alpha_power_forecast(Shape::Natural, truncate(x, i), truncate(y, i), 8,
                               step.alpha_used)
              .value;
      CHECK(bitwise_equal(step.forecast, manual));
    }
  }

  CHECK_THROWS_AS(backtest_alpha_optimized(Shape::Sharp, x, y, 8, PowerMode::None, grid),
                  DomainError);
  CHECK_THROWS_AS(
      backtest_alpha_optimized(Shape::Sharp, x, y, 8, PowerMode::FixedAlpha, grid),
      DomainError);
}

TEST_CASE("trailing-window forecast uses only the last delta observations") {
  const TimeSeries x(testgen::positive_series(41, 20));
  const TimeSeries y(testgen::positive_series(42, 20));

  SUBCASE("delta = n is exactly the balanced forecast") {
    const auto a = delta_forecast(Shape::Natural, x, y, 5, x.size());
    const auto b = balanced_forecast(Shape::Natural, x, y, 5);
    CHECK(bitwise_equal(a.value, b.value));
    CHECK(a.lambda_star == b.lambda_star);
  }
  SUBCASE("early history is invisible") {
    TimeSeries x2 = x;
    TimeSeries y2 = y;
    for (std::size_t k = 0; k < 12; ++k) {
      x2.values[k] *= 7.5;
      y2.values[k] *= 0.2;
    }
    CHECK(bitwise_equal(delta_forecast(Shape::Sharp, x, y, 3, 8).value,
                        delta_forecast(Shape::Sharp, x2, y2, 3, 8).value));
  }
  SUBCASE("bounds") {
    CHECK_THROWS_AS(delta_forecast(Shape::Sharp, x, y, 3, 3), DomainError);
    CHECK_THROWS_AS(delta_forecast(Shape::Sharp, truncate(x, 6), truncate(y, 6), 3, 7),
                    LengthError);
  }
}

TEST_CASE("trailing-window backtest walks the last eval_steps targets") {
  const TimeSeries x(testgen::positive_series(51, 30));
  const TimeSeries y(testgen::positive_series(52, 30));
  const std::size_t delta = 8;

  const auto report = backtest_delta(Shape::Flat, x, y, 4, delta, 5);
  REQUIRE(report.steps.size() == 5);
  CHECK(report.skipped.empty());
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& step = report.steps[k];
    CHECK(step.index == 26 + k);
    // Each target is forecast from the delta observations before it.
    const auto direct = delta_forecast(Shape::Flat, truncate(x, step.index - 1),
                                       truncate(y, step.index - 1), 4, delta);
    CHECK(bitwise_equal(step.forecast, direct.value));
  }

  // eval_steps = 0 evaluates every possible target: n - delta of them.
  const auto full = backtest_delta(Shape::Flat, x, y, 4, delta, 0);
  CHECK(full.steps.size() == x.size() - delta);
  CHECK(full.steps.front().index == delta + 1);
  CHECK(full.steps.back().index == x.size());

  CHECK_THROWS_AS(backtest_delta(Shape::Flat, x, y, 4, delta, 23), InsufficientData);
  CHECK_NOTHROW(backtest_delta(Shape::Flat, x, y, 4, delta, 22));
}

TEST_CASE("win counts credit every tied contender") {
  const std::vector<double> actuals = {10.0, 20.0, 30.0, 40.0, 50.0};
  const std::vector<std::pair<std::string, std::vector<double>>> contenders = {
      {"A", {10.5, 21.0, 30.5, 42.0, 51.0}},
      {"B", {11.0, 20.5, 29.5, 43.0, 52.0}},
      {"C", {12.0, 22.0, 27.0, 41.0, 50.0}},
  };
  // Per-step winners: A, B, tie(A,B), C, C -> A:2 B:2 C:2.
  const auto counts = win_counts(contenders, actuals);
  REQUIRE(counts.size() == 3);
  CHECK(counts.at("A") == 2);
  CHECK(counts.at("B") == 2);
  CHECK(counts.at("C") == 2);

  CHECK_THROWS_AS(win_counts({}, actuals), EmptyBatch);
  CHECK_THROWS_AS(win_counts(contenders, {}), EmptyBatch);
  CHECK_THROWS_AS(win_counts({{"A", {1.0, 2.0}}}, actuals), ShapeError);
}
