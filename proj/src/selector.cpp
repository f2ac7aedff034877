#include "ratecast/selector.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace ratecast {

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::Sharp:
      return "sharp";
    case Shape::Flat:
      return "flat";
    default:
      return "natural";
  }
}

std::string to_string(EstimateFamily family) {
  switch (family) {
    case EstimateFamily::SharpMean:
      return "sharp-mean";
    case EstimateFamily::SharpMedian:
      return "sharp-median";
    case EstimateFamily::FlatMean:
      return "flat-mean";
    default:
      return "flat-median";
  }
}

std::pair<double, std::size_t> least_sum(EstimateFamily family,
                                         const TimeSeries& x,
                                         const RateSeries& rho, int kappa,
                                         std::size_t lambda_max,
                                         std::size_t nu) {
  const std::size_t n = x.size();
  if (lambda_max < 1 || nu < 1 || lambda_max + nu >= n) {
    throw WindowError("window search needs lambda_max >= 1, nu >= 1 and "
                      "lambda_max + nu < " +
                      std::to_string(n));
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_lambda = 0;
  for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
    const double sum = criterion_sum(family, x, rho, kappa, n, lambda, nu);
    if (sum < best) {
      best = sum;
      best_lambda = lambda;
    }
  }
  return {best, best_lambda};
}

namespace {

void check_kind(const RateSeries& rho, bool want_interest,
                const std::string& what) {
  const bool have_interest = rho.kind == RateKind::Interest;
  if (have_interest != want_interest) {
    throw ShapeError(what + " needs " +
                     (want_interest ? "growth" : "discount") + " rates");
  }
}

ForecastDecision decide(EstimateFamily family, const TimeSeries& x,
                        const RateSeries& rho, int kappa,
                        std::size_t lambda_max, std::size_t nu) {
  const auto [sum, lambda_star] = least_sum(family, x, rho, kappa, lambda_max, nu);
  ForecastDecision decision;
  decision.value = estimate(family, x, rho, x.size() + 1, lambda_star);
  decision.family_used = family;
  decision.kappa = kappa;
  decision.lambda_star = lambda_star;
  decision.least_sum = sum;
  decision.lambda_max = lambda_max;
  decision.nu = nu;
  return decision;
}

}  // namespace

ForecastDecision forecast_family(EstimateFamily family, const TimeSeries& x,
                                 const RateSeries& rho, int kappa,
                                 std::size_t lambda_max, std::size_t nu) {
  check_kind(rho, is_sharp(family), "family " + to_string(family));
  return decide(family, x, rho, kappa, lambda_max, nu);
}

ForecastDecision forecast_sharp(const TimeSeries& x, const RateSeries& r,
                                int kappa, std::size_t lambda_max,
                                std::size_t nu) {
  check_kind(r, true, "growth-side forecast");
  const double mean_sum =
      least_sum(EstimateFamily::SharpMean, x, r, kappa, lambda_max, nu).first;
  const double median_sum =
      least_sum(EstimateFamily::SharpMedian, x, r, kappa, lambda_max, nu).first;
  const EstimateFamily pick = mean_sum <= median_sum
                                  ? EstimateFamily::SharpMean
                                  : EstimateFamily::SharpMedian;
  return decide(pick, x, r, kappa, lambda_max, nu);
}

ForecastDecision forecast_flat(const TimeSeries& x, const RateSeries& d,
                               int kappa, std::size_t lambda_max,
                               std::size_t nu) {
  check_kind(d, false, "discount-side forecast");
  const double mean_sum =
      least_sum(EstimateFamily::FlatMean, x, d, kappa, lambda_max, nu).first;
  const double median_sum =
      least_sum(EstimateFamily::FlatMedian, x, d, kappa, lambda_max, nu).first;
  const EstimateFamily pick = mean_sum <= median_sum
                                  ? EstimateFamily::FlatMean
                                  : EstimateFamily::FlatMedian;
  return decide(pick, x, d, kappa, lambda_max, nu);
}

ForecastDecision forecast_natural(const TimeSeries& x, const RateSeries& r,
                                  const RateSeries& d, int kappa,
                                  std::size_t lambda_max, std::size_t nu) {
  check_kind(r, true, "growth-side candidate");
  check_kind(d, false, "discount-side candidate");
  const double sharp_best = std::min(
      least_sum(EstimateFamily::SharpMean, x, r, kappa, lambda_max, nu).first,
      least_sum(EstimateFamily::SharpMedian, x, r, kappa, lambda_max, nu)
          .first);
  const double flat_best = std::min(
      least_sum(EstimateFamily::FlatMean, x, d, kappa, lambda_max, nu).first,
      least_sum(EstimateFamily::FlatMedian, x, d, kappa, lambda_max, nu)
          .first);
  if (sharp_best <= flat_best) {
    return forecast_sharp(x, r, kappa, lambda_max, nu);
  }
  return forecast_flat(x, d, kappa, lambda_max, nu);
}

ForecastDecision forecast_shape(Shape shape, const TimeSeries& x,
                                const TimeSeries& y, int kappa,
                                std::size_t lambda_max, std::size_t nu) {
  if (x.size() != y.size()) {
    throw ShapeError("series of " + std::to_string(x.size()) +
                     " and rate source of " + std::to_string(y.size()) +
                     " observations differ in length");
  }
  switch (shape) {
    case Shape::Sharp:
      return forecast_sharp(x, rate_of_interest(y), kappa, lambda_max, nu);
    case Shape::Flat:
      return forecast_flat(x, rate_of_discount(y), kappa, lambda_max, nu);
    default:
      return forecast_natural(x, rate_of_interest(y), rate_of_discount(y),
                              kappa, lambda_max, nu);
  }
}

}  // namespace ratecast
