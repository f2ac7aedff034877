#pragma once

/**
 * Shared golden fixtures for the test suite.
 *
 * The core fixture is an 11-day sample of daily closing prices for a single
 * stock.  The first ten observations form the input series; the eleventh is
 * the realized next value.  All expected tables below (one-step estimates,
 * criterion error sums, selected window lengths and final forecasts) were
 * computed by hand for this sample and are frozen here to five decimal
 * places (error sums to eight).  Tests compare against these frozen values;
 * they must never be regenerated from the library under test.
 */

#include <array>
#include <cstddef>

namespace fixtures {

// ---------------------------------------------------------------------------
// Worked example: 11 consecutive daily closing prices.
// ---------------------------------------------------------------------------

/// First ten observations (the forecasting input).
inline constexpr std::array<double, 10> kClose10 = {
    19.17, 18.92, 18.87, 18.98, 18.60, 18.82, 16.36, 16.17, 15.72, 16.01};

/// The realized eleventh observation (used for ex-post comparisons only).
inline constexpr double kClose11 = 15.64;

// ---------------------------------------------------------------------------
// One-step estimates of x_i for i = 10, 9, 8, 7 and window length λ = 1..5.
// Row order: i = 10, 9, 8, 7 (kEstimateRowTargets).  Values to 5 decimals.
// ---------------------------------------------------------------------------

inline constexpr std::array<std::size_t, 4> kEstimateRowTargets = {10, 9, 8, 7};

using EstimateTable = std::array<std::array<double, 5>, 4>;

/// Growth-rate estimates, mean window statistic:  x_{i-1} * (1 + mean rate).
inline constexpr EstimateTable kSharpMeanEstimates = {{
    {15.28252, 15.40998, 14.82839, 15.09777, 15.15927},
    {15.98221, 15.01930, 15.46662, 15.56153, 15.70207},
    {14.22155, 15.38753, 15.60250, 15.81572, 15.91593},
    {19.04260, 18.74290, 18.80517, 18.79644, 18.75207},
}};

/// Growth-rate estimates, median window statistic.
inline constexpr EstimateTable kSharpMedianEstimates = {{
    {15.28252, 15.40998, 15.28252, 15.40998, 15.40527},
    {15.98221, 15.01930, 15.98221, 15.91423, 15.98221},
    {14.22155, 15.38753, 16.03246, 16.24391, 16.31677},
    {19.04260, 18.74290, 18.92971, 18.84999, 18.77026},
}};

/// Discount-rate estimates, mean window statistic:  x_{i-1} / (1 - mean rate).
inline constexpr EstimateTable kFlatMeanEstimates = {{
    {15.28252, 15.40892, 14.78026, 15.04647, 15.11689},
    {15.98221, 14.95756, 15.39791, 15.50760, 15.65325},
    {14.22155, 15.29918, 15.53604, 15.75610, 15.86513},
    {19.04260, 18.73811, 18.80154, 18.79371, 18.74947},
}};

/// Discount-rate estimates, median window statistic.
inline constexpr EstimateTable kFlatMedianEstimates = {{
    {15.28252, 15.40892, 15.28252, 15.40892, 15.40527},
    {15.98221, 14.95756, 15.98221, 15.91394, 15.98221},
    {14.22155, 15.29918, 16.03246, 16.24116, 16.31677},
    {19.04260, 18.73811, 18.92971, 18.84965, 18.77026},
}};

// ---------------------------------------------------------------------------
// Criterion error sums at target i = 10, lookback ν = 4, window λ = 1..5,
// for every criterion κ = 1..8.  Row index = κ - 1.  Values to 8 decimals.
// ---------------------------------------------------------------------------

using CriterionSumTable = std::array<std::array<double, 5>, 8>;

inline constexpr CriterionSumTable kSharpMeanSums = {{
    {0.04115135, 0.02244212, 0.02484805, 0.02105823, 0.01967779},
    {0.34188850, 0.26357807, 0.26246703, 0.22262790, 0.20078705},
    {0.68378978, 0.39879634, 0.43688700, 0.38048595, 0.35695762},
    {0.04374984, 0.02694821, 0.02927703, 0.02600744, 0.02445041},
    {0.34658969, 0.27609648, 0.27447910, 0.23789604, 0.21620445},
    {0.71208790, 0.43866460, 0.47666540, 0.42418913, 0.39897276},
    {11.59078051, 7.14149881, 7.76132502, 6.91904497, 6.51060090},
    {5.62073402, 4.46609961, 4.44766242, 3.86142213, 3.51479163},
}};

inline constexpr CriterionSumTable kSharpMedianSums = {{
    {0.04115135, 0.02244212, 0.02103677, 0.01913483, 0.01837979},
    {0.34188850, 0.26357807, 0.20833721, 0.18778721, 0.19306440},
    {0.68378978, 0.39879634, 0.38894910, 0.35498453, 0.33885933},
    {0.04374984, 0.02694821, 0.02708708, 0.02474289, 0.02349248},
    {0.34658969, 0.27609648, 0.22769753, 0.20660431, 0.21085497},
    {0.71208790, 0.43866460, 0.44223021, 0.40420042, 0.38364383},
    {11.59078051, 7.14149881, 7.22029532, 6.60324808, 6.26536616},
    {5.62073402, 4.46609961, 3.69693673, 3.35815310, 3.42396750},
}};

// Three cells of this table (kappa=4 lambda=4, kappa=7 lambda=3,
// kappa=8 lambda=3) were recomputed by two independent implementations,
// which agree with each other and with the rest of the table's row trends;
// the hand table originally carried the growth-side values there by mistake.
inline constexpr CriterionSumTable kFlatMeanSums = {{
    {0.04115135, 0.02346669, 0.02588849, 0.02174764, 0.02011944},
    {0.34188850, 0.27381425, 0.27478417, 0.23349849, 0.21000321},
    {0.68378978, 0.41369099, 0.45197944, 0.39063998, 0.36342793},
    {0.04374984, 0.02779207, 0.03012902, 0.02658929, 0.02481771},
    {0.34658969, 0.28526036, 0.28574487, 0.24805096, 0.22494066},
    {0.71208790, 0.45212834, 0.49028507, 0.43349172, 0.40484953},
    {11.59078051, 7.35634421, 7.97905751, 7.06777918, 6.60462705},
    {5.62073402, 4.61244611, 4.62734011, 4.02353907, 3.65420470},
}};

inline constexpr CriterionSumTable kFlatMedianSums = {{
    {0.04115135, 0.02346669, 0.02103677, 0.01913432, 0.01837979},
    {0.34188850, 0.27381425, 0.20833721, 0.18765602, 0.19306440},
    {0.68378978, 0.41369099, 0.38894910, 0.35495355, 0.33885933},
    {0.04374984, 0.02779207, 0.02708708, 0.02473957, 0.02349248},
    {0.34658969, 0.28526036, 0.22769753, 0.20646085, 0.21085497},
    {0.71208790, 0.45212834, 0.44223021, 0.40414501, 0.38364383},
    {11.59078051, 7.35634421, 7.22029532, 6.60232323, 6.26536616},
    {5.62073402, 4.61244611, 3.69693673, 3.35582711, 3.42396750},
}};

// ---------------------------------------------------------------------------
// Expected selections and final forecasts of x_11 (λ_max = 5, ν = 4).
// ---------------------------------------------------------------------------

/// Mean-statistic families pick λ* = 5 for every κ.
inline constexpr double kSharpMeanForecast = 15.56211;
inline constexpr double kFlatMeanForecast = 15.51074;

/// Median-statistic families pick λ* = 5 for κ in {1,3,4,6,7} and λ* = 4 for
/// κ in {2,5,8}; kappa index -> expected λ*.
inline constexpr std::array<std::size_t, 8> kMedianLambdaStar = {5, 4, 5, 5,
                                                                 4, 5, 5, 4};

inline constexpr std::array<double, 8> kSharpMedianForecasts = {
    15.82406, 15.69426, 15.82406, 15.82406,
    15.69426, 15.82406, 15.82406, 15.69426};

inline constexpr std::array<double, 8> kFlatMedianForecasts = {
    15.82406, 15.69319, 15.82406, 15.82406,
    15.69319, 15.82406, 15.82406, 15.69319};

/// For every κ the median families beat the mean families, so the combined
/// growth-side and discount-side forecasts equal the median values; and the
/// discount-side least sums win the four-way comparison, so the best-of-both
/// forecasts equal the discount-side ones.
inline constexpr const std::array<double, 8>& kSharpForecasts = kSharpMedianForecasts;
inline constexpr const std::array<double, 8>& kFlatForecasts = kFlatMedianForecasts;
inline constexpr const std::array<double, 8>& kNaturalForecasts = kFlatMedianForecasts;

/// Spot checks for the least-sum selector: {value, λ*}.
inline constexpr double kSharpMeanK1LeastSum = 0.01967779;
inline constexpr std::size_t kSharpMeanK1LambdaStar = 5;
inline constexpr double kSharpMedianK2LeastSum = 0.18778721;
inline constexpr std::size_t kSharpMedianK2LambdaStar = 4;

// ---------------------------------------------------------------------------
// Monthly airline passenger counts, Jan 1949 - Dec 1960 (Box & Jenkins).
// A classic public benchmark series: 144 monthly totals, trend plus a
// multiplicative yearly seasonal pattern.  frequency = 12, 12 full periods.
// ---------------------------------------------------------------------------

inline constexpr std::array<double, 144> kAirlinePassengers = {
    112, 118, 132, 129, 121, 135, 148, 148, 136, 119, 104, 118,
    115, 126, 141, 135, 125, 149, 170, 170, 158, 133, 114, 140,
    145, 150, 178, 163, 172, 178, 199, 199, 184, 162, 146, 166,
    171, 180, 193, 181, 183, 218, 230, 242, 209, 191, 172, 194,
    196, 196, 236, 235, 229, 243, 264, 272, 237, 211, 180, 201,
    204, 188, 235, 227, 234, 264, 302, 293, 259, 229, 203, 229,
    242, 233, 267, 269, 270, 315, 364, 347, 312, 274, 237, 278,
    284, 277, 317, 313, 318, 374, 413, 405, 355, 306, 271, 306,
    315, 301, 356, 348, 355, 422, 465, 467, 404, 347, 305, 336,
    340, 318, 362, 348, 363, 435, 491, 505, 404, 359, 310, 337,
    360, 342, 406, 396, 420, 472, 548, 559, 463, 407, 362, 405,
    417, 391, 419, 461, 472, 535, 622, 606, 508, 461, 390, 432};

/// Published benchmark on the airline series: sum of absolute one-step
/// errors over the final ten years (120 forecasts) for a tuned
/// Holt-Winters model (2083) and a seasonal ARIMA model (2228).
inline constexpr double kAirlineHoltWintersSae = 2083.0;
inline constexpr double kAirlineArimaSae = 2228.0;

}  // namespace fixtures
