#pragma once

/**
 * One-step estimators and the eight pointwise error criteria.
 *
 * The estimators come in four families, indexed by two independent choices:
 *   - rate form:  growth ("sharp"-side) multiplies by (1 + rate);
 *                 discount ("flat"-side) divides by (1 - rate);
 *   - window statistic: mean or median of the rate window.
 *
 * estimate(family, X, rho, i, lambda) estimates x_i from x_{i-1} and the
 * lambda-window of rates ENDING AT INDEX i-2, i.e. rho_{i-1-lambda}..rho_{i-2}.
 * That makes the estimate strictly causal: it never looks at rho_{i-1}, which
 * would require knowing x_i itself.  Feasibility is lambda <= i-2.
 */

#include <cstddef>

#include "ratecast/series.hpp"

namespace ratecast {

/// The four estimator families.
enum class EstimateFamily { SharpMean, SharpMedian, FlatMean, FlatMedian };

/// True for the two growth-form families.
bool is_sharp(EstimateFamily family);
/// True for the two mean-statistic families.
bool uses_mean(EstimateFamily family);

/**
 * One-step estimate of x_i (see file comment for the window alignment).
 *
 * Preconditions: 3 <= i <= n+1 (i = n+1 estimates the yet-unseen next value)
 * and 1 <= lambda <= i-2; WindowError otherwise.  The discount families
 * throw DivisionByZero if the window statistic equals 1.
 */
double estimate(EstimateFamily family, const TimeSeries& x,
                const RateSeries& rho, std::size_t i, std::size_t lambda);

/**
 * Pointwise error f_kappa(e, x) between an estimate e and the actual x for
 * criterion kappa = 1..8:
 *
 *   1: ((e-x)/e)^2     2: |(e-x)/e|     3: (e-x)^2/|e|    (estimate-relative)
 *   4: ((e-x)/x)^2     5: |(e-x)/x|     6: (e-x)^2/|x|    (actual-relative)
 *   7: (e-x)^2         8: |e-x|                           (absolute)
 *
 * Throws BoundsError for kappa outside 1..8 and DivisionByZero when the
 * denominator used by the criterion is exactly zero.
 */
double criterion_term(int kappa, double e, double x);

/**
 * Sum of criterion terms over the nu most recent targets at fixed window
 * length: sum over j = i-nu+1..i of f_kappa(estimate of x_j, x_j).
 *
 * Preconditions: 1 <= lambda, 1 <= nu, i <= n and lambda + nu <= i - 1 (so
 * every summand is feasible); WindowError otherwise.
 */
double criterion_sum(EstimateFamily family, const TimeSeries& x,
                     const RateSeries& rho, int kappa, std::size_t i,
                     std::size_t lambda, std::size_t nu);

}  // namespace ratecast
