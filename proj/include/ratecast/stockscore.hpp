#pragma once

/**
 * Daily-bar price handling and interval hit scoring.
 *
 * A forecaster is scored on a stock by walk-forward forecasting the target
 * day's price from a trailing window and counting a hit whenever the
 * forecast lands inside that day's [low, high] range (inclusive).  Scores
 * are tallied per (shape, price pairing, criterion) over a fixed evaluation
 * window, giving each stock a 3 x 3 x 8 score matrix.
 */

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ratecast/models.hpp"

namespace ratecast {

/// One daily bar.
struct OhlcBar {
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
};

/// A stock's daily history; dates are ISO strings sorted ascending.
struct OhlcSeries {
  std::string ticker;
  std::vector<std::string> dates;
  std::vector<OhlcBar> bars;

  std::size_t size() const { return bars.size(); }
};

/// Which price a series is built from; Midpoint is (low + high) / 2.
enum class PriceField { Close, Open, Midpoint };

std::string to_string(PriceField field);

/// (forecast target, rate source) price fields.
struct Pairing {
  PriceField x = PriceField::Close;
  PriceField y = PriceField::Close;
};

/// The three close-targeted pairings used by the score matrix.
inline constexpr Pairing kPairingCC{PriceField::Close, PriceField::Close};
inline constexpr Pairing kPairingCO{PriceField::Close, PriceField::Open};
inline constexpr Pairing kPairingCM{PriceField::Close, PriceField::Midpoint};

double midpoint(const OhlcBar& bar);

/// Extract one price field as a TimeSeries (frequency 1).
TimeSeries price_series(const OhlcSeries& stock, PriceField field);

/**
 * Hit count of the trailing-window forecaster on one stock: for each of the
 * last `eval_steps` days, forecast that day's pairing.x price from the
 * preceding `delta` days (rates from pairing.y) and count forecasts inside
 * the target day's [low, high], inclusive.  Any pairing of price fields is
 * accepted.  Requires size >= delta + eval_steps (InsufficientData).
 */
int score_model(const OhlcSeries& stock, Shape shape, int kappa,
                Pairing pairing, std::size_t delta = 92,
                std::size_t eval_steps = 100);

/// Hit counts for all 3 shapes x 3 close-targeted pairings x 8 criteria.
struct ScoreMatrix {
  std::string ticker;
  /// scores[shape][pairing][kappa-1]; pairing order CC, CO, CM.
  std::array<std::array<std::array<int, 8>, 3>, 3> scores{};
};

ScoreMatrix score_matrix(const OhlcSeries& stock, std::size_t delta = 92,
                         std::size_t eval_steps = 100);

/// Best hit counts across the 9 models of a matrix.
struct MaxScores {
  std::array<int, 8> per_kappa{};  ///< max over models, per criterion
  int overall = 0;                 ///< max over criteria of per_kappa
};

MaxScores max_scores(const ScoreMatrix& matrix);

/**
 * Per-criterion winner tally for one model across a batch of stocks: for
 * each stock, every criterion whose score equals that stock's best score
 * under this (shape, pairing) gets one credit.  pairing_index follows the
 * matrix order (0 = CC, 1 = CO, 2 = CM).  EmptyBatch if batch is empty.
 */
std::array<int, 8> criterion_wins(const std::vector<ScoreMatrix>& batch,
                                  Shape shape, std::size_t pairing_index);

/// Distribution summary of a sample: R type-7 quartiles, mean and sample sd.
struct SummaryStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double sd = 0.0;  ///< sample standard deviation (n-1 denominator; 0 for n=1)
};

/// EmptyBatch on an empty sample.
SummaryStats summarize(std::vector<double> values);

}  // namespace ratecast
