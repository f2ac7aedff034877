#include "ratecast/stockscore.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ratecast {

std::string to_string(PriceField field) {
  switch (field) {
    case PriceField::Close:
      return "close";
    case PriceField::Open:
      return "open";
    default:
      return "midpoint";
  }
}

double midpoint(const OhlcBar& bar) { return (bar.low + bar.high) / 2.0; }

TimeSeries price_series(const OhlcSeries& stock, PriceField field) {
  std::vector<double> values;
  values.reserve(stock.size());
  for (const OhlcBar& bar : stock.bars) {
    switch (field) {
      case PriceField::Close:
        values.push_back(bar.close);
        break;
      case PriceField::Open:
        values.push_back(bar.open);
        break;
      default:
        values.push_back(midpoint(bar));
        break;
    }
  }
  return TimeSeries(std::move(values), 1);
}

int score_model(const OhlcSeries& stock, Shape shape, int kappa,
                Pairing pairing, std::size_t delta, std::size_t eval_steps) {
  if (delta < 4) {
    throw DomainError("trailing window must cover at least 4 days");
  }
  if (eval_steps < 1) {
    throw DomainError("hit scoring needs at least one evaluation day");
  }
  const std::size_t n = stock.size();
  if (n < delta + eval_steps) {
    throw InsufficientData(
        "history of " + std::to_string(n) + " days cannot fit a " +
        std::to_string(delta) + "-day window plus " +
        std::to_string(eval_steps) + " evaluation days");
  }
  const TimeSeries x = price_series(stock, pairing.x);
  const TimeSeries y = price_series(stock, pairing.y);
  int hits = 0;
  for (std::size_t t = n - eval_steps + 1; t <= n; ++t) {
    const double forecast =
        delta_forecast(shape, truncate(x, t - 1), truncate(y, t - 1), kappa,
                       delta)
            .value;
    const OhlcBar& bar = stock.bars[t - 1];
    if (bar.low <= forecast && forecast <= bar.high) {
      ++hits;
    }
  }
  return hits;
}

ScoreMatrix score_matrix(const OhlcSeries& stock, std::size_t delta,
                         std::size_t eval_steps) {
  static constexpr std::array<Pairing, 3> kPairings = {kPairingCC, kPairingCO,
                                                       kPairingCM};
  static constexpr std::array<Shape, 3> kShapes = {Shape::Sharp, Shape::Flat,
                                                   Shape::Natural};
  ScoreMatrix matrix;
  matrix.ticker = stock.ticker;
  for (std::size_t shape = 0; shape < kShapes.size(); ++shape) {
    for (std::size_t pairing = 0; pairing < kPairings.size(); ++pairing) {
      for (int kappa = 1; kappa <= 8; ++kappa) {
        matrix.scores[shape][pairing][static_cast<std::size_t>(kappa - 1)] =
            score_model(stock, kShapes[shape], kappa, kPairings[pairing],
                        delta, eval_steps);
      }
    }
  }
  return matrix;
}

MaxScores max_scores(const ScoreMatrix& matrix) {
  MaxScores best;
  for (std::size_t k = 0; k < 8; ++k) {
    int top = matrix.scores[0][0][k];
    for (const auto& by_pairing : matrix.scores) {
      for (const auto& by_kappa : by_pairing) {
        top = std::max(top, by_kappa[k]);
      }
    }
    best.per_kappa[k] = top;
    best.overall = std::max(best.overall, top);
  }
  return best;
}

std::array<int, 8> criterion_wins(const std::vector<ScoreMatrix>& batch,
                                  Shape shape, std::size_t pairing_index) {
  if (batch.empty()) {
    throw EmptyBatch("criterion tally needs at least one score matrix");
  }
  if (pairing_index >= 3) {
    throw BoundsError("pairing index " + std::to_string(pairing_index) +
                      " outside 0..2");
  }
  std::array<int, 8> wins{};
  for (const ScoreMatrix& matrix : batch) {
    const auto& row =
        matrix.scores[static_cast<std::size_t>(shape)][pairing_index];
    const int best = *std::max_element(row.begin(), row.end());
    for (std::size_t k = 0; k < 8; ++k) {
      if (row[k] == best) {
        ++wins[k];
      }
    }
  }
  return wins;
}

SummaryStats summarize(std::vector<double> values) {
  if (values.empty()) {
    throw EmptyBatch("summary of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const auto quantile = [&](double p) {
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) {
      return values[n - 1];
    }
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  };
  SummaryStats stats;
  stats.min = values.front();
  stats.max = values.back();
  stats.q1 = quantile(0.25);
  stats.median = quantile(0.5);
  stats.q3 = quantile(0.75);
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  stats.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double squares = 0.0;
    for (double v : values) {
      squares += (v - stats.mean) * (v - stats.mean);
    }
    stats.sd = std::sqrt(squares / static_cast<double>(n - 1));
  }
  return stats;
}

}  // namespace ratecast
