#include "ratecast/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ratecast {

TimeSeries::TimeSeries(std::vector<double> v, std::size_t freq)
    : values(std::move(v)), frequency(freq) {
  if (values.empty()) {
    throw LengthError("time series must hold at least one observation");
  }
  if (frequency < 1) {
    throw DomainError("frequency must be at least 1");
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw DomainError("non-finite observation at index " +
                        std::to_string(k + 1));
    }
  }
}

double TimeSeries::at(std::size_t i) const {
  if (i < 1 || i > values.size()) {
    throw BoundsError("observation index " + std::to_string(i) +
                      " outside 1.." + std::to_string(values.size()));
  }
  return values[i - 1];
}

double RateSeries::at(std::size_t i) const {
  if (i < 1 || i > rates.size()) {
    throw BoundsError("rate index " + std::to_string(i) + " outside 1.." +
                      std::to_string(rates.size()));
  }
  return rates[i - 1];
}

RateSeries rate_of_interest(const TimeSeries& y) {
  if (y.size() < 2) {
    throw LengthError("rate derivation needs at least two observations");
  }
  RateSeries r;
  r.kind = RateKind::Interest;
  r.rates.reserve(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double denom = y.values[i - 1];
    if (denom == 0.0) {
      throw ZeroDenominator(
          "growth rate undefined: observation " + std::to_string(i) +
              " is zero",
          i);
    }
    r.rates.push_back((y.values[i] - y.values[i - 1]) / denom);
  }
  return r;
}

RateSeries rate_of_discount(const TimeSeries& y) {
  if (y.size() < 2) {
    throw LengthError("rate derivation needs at least two observations");
  }
  RateSeries d;
  d.kind = RateKind::Discount;
  d.rates.reserve(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double denom = y.values[i];
    if (denom == 0.0) {
      throw ZeroDenominator(
          "discount rate undefined: observation " + std::to_string(i + 1) +
              " is zero",
          i + 1);
    }
    d.rates.push_back((y.values[i] - y.values[i - 1]) / denom);
  }
  return d;
}

namespace {

void check_window(const RateSeries& rho, std::size_t i, std::size_t lambda) {
  if (lambda < 1 || i < lambda || i > rho.size()) {
    throw WindowError("rate window of length " + std::to_string(lambda) +
                      " ending at " + std::to_string(i) +
                      " does not fit 1.." + std::to_string(rho.size()));
  }
}

}  // namespace

double mean_rate(const RateSeries& rho, std::size_t i, std::size_t lambda) {
  check_window(rho, i, lambda);
  double sum = 0.0;
  for (std::size_t k = i - lambda; k < i; ++k) {
    sum += rho.rates[k];
  }
  return sum / static_cast<double>(lambda);
}

double median_rate(const RateSeries& rho, std::size_t i, std::size_t lambda) {
  check_window(rho, i, lambda);
  std::vector<double> window(rho.rates.begin() +
                                 static_cast<std::ptrdiff_t>(i - lambda),
                             rho.rates.begin() + static_cast<std::ptrdiff_t>(i));
  std::sort(window.begin(), window.end());
  if (lambda % 2 == 1) {
    return window[lambda / 2];
  }
  return 0.5 * (window[lambda / 2 - 1] + window[lambda / 2]);
}

TimeSeries truncate(const TimeSeries& x, std::size_t count) {
  if (count < 1 || count > x.size()) {
    throw BoundsError("prefix length " + std::to_string(count) +
                      " outside 1.." + std::to_string(x.size()));
  }
  return TimeSeries(
      std::vector<double>(x.values.begin(),
                          x.values.begin() + static_cast<std::ptrdiff_t>(count)),
      x.frequency);
}

TimeSeries power_series(const TimeSeries& y, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("exponent " + std::to_string(alpha) +
                      " outside [0, 1]");
  }
  TimeSeries out = y;
  if (alpha == 1.0) {
    return out;
  }
  if (alpha == 0.0) {
    std::fill(out.values.begin(), out.values.end(), 1.0);
    return out;
  }
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    if (out.values[k] <= 0.0) {
      throw DomainError(
          "fractional exponent needs positive values; observation " +
          std::to_string(k + 1) + " is not positive");
    }
    out.values[k] = std::pow(out.values[k], alpha);
  }
  return out;
}

}  // namespace ratecast
