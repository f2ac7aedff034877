#include "ratecast/estimators.hpp"

#include <cmath>
#include <string>

namespace ratecast {

bool is_sharp(EstimateFamily family) {
  return family == EstimateFamily::SharpMean ||
         family == EstimateFamily::SharpMedian;
}

bool uses_mean(EstimateFamily family) {
  return family == EstimateFamily::SharpMean ||
         family == EstimateFamily::FlatMean;
}

double estimate(EstimateFamily family, const TimeSeries& x,
                const RateSeries& rho, std::size_t i, std::size_t lambda) {
  const std::size_t n = x.size();
  if (i < 3 || i > n + 1) {
    throw WindowError("estimate target " + std::to_string(i) + " outside 3.." +
                      std::to_string(n + 1));
  }
  if (lambda < 1 || lambda + 2 > i) {
    throw WindowError("window length " + std::to_string(lambda) +
                      " infeasible for target " + std::to_string(i) +
                      " (allowed 1.." + std::to_string(i - 2) + ")");
  }
  const double stat = uses_mean(family) ? mean_rate(rho, i - 2, lambda)
                                        : median_rate(rho, i - 2, lambda);
  const double prev = x.at(i - 1);
  if (is_sharp(family)) {
    return prev * (1.0 + stat);
  }
  if (1.0 - stat == 0.0) {
    throw DivisionByZero(
        "discount estimate undefined: window statistic equals 1 at target " +
        std::to_string(i));
  }
  return prev / (1.0 - stat);
}

double criterion_term(int kappa, double estimated, double actual) {
  if (kappa < 1 || kappa > 8) {
    throw BoundsError("criterion " + std::to_string(kappa) + " outside 1..8");
  }
  if (kappa <= 3 && estimated == 0.0) {
    throw DivisionByZero("criterion " + std::to_string(kappa) +
                         " divides by a zero estimate");
  }
  if (kappa >= 4 && kappa <= 6 && actual == 0.0) {
    throw DivisionByZero("criterion " + std::to_string(kappa) +
                         " divides by a zero actual");
  }
  const double diff = estimated - actual;
  switch (kappa) {
    case 1:
      return (diff / estimated) * (diff / estimated);
    case 2:
      return std::fabs(diff / estimated);
    case 3:
      return diff * diff / std::fabs(estimated);
    case 4:
      return (diff / actual) * (diff / actual);
    case 5:
      return std::fabs(diff / actual);
    case 6:
      return diff * diff / std::fabs(actual);
    case 7:
      return diff * diff;
    default:
      return std::fabs(diff);
  }
}

double criterion_sum(EstimateFamily family, const TimeSeries& x,
                     const RateSeries& rho, int kappa, std::size_t i,
                     std::size_t lambda, std::size_t nu) {
  if (kappa < 1 || kappa > 8) {
    throw BoundsError("criterion " + std::to_string(kappa) + " outside 1..8");
  }
  if (lambda < 1 || nu < 1 || i > x.size() || lambda + nu + 1 > i) {
    throw WindowError("criterion sum at target " + std::to_string(i) +
                      " needs lambda >= 1, nu >= 1 and lambda + nu <= " +
                      std::to_string(i) + " - 1 within a series of " +
                      std::to_string(x.size()));
  }
  double sum = 0.0;
  for (std::size_t j = i - nu + 1; j <= i; ++j) {
    sum += criterion_term(kappa, estimate(family, x, rho, j, lambda), x.at(j));
  }
  return sum;
}

}  // namespace ratecast
