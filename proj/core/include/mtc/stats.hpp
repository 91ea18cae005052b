// Copyright 2026 The mtcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTC_STATS_HPP_
#define MTC_STATS_HPP_

#include <cstddef>
#include <span>

// Small estimators shared by the Monte Carlo drivers and the calibration fit.
namespace mtc::stats {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Two-sided confidence interval for the mean of an exponential distribution
// observed for `total_time` with `events` arrivals (chi-square pivot).
// Requires events >= 1.
Interval exponential_mean_ci(double total_time, std::size_t events,
                             double level = 0.95);

// Exact (Garwood) two-sided interval for a Poisson count.
Interval poisson_count_ci(std::size_t count, double level = 0.99);

double binomial_sigma(double p, std::size_t n);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;
};

// Ordinary least squares y = intercept + slope*x. Requires >= 2 distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct LogisticFit {
  double intercept = 0.0;  // logit = intercept + slope*x
  double slope = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Binomial maximum-likelihood logistic regression on grouped data
// (successes[k] out of trials[k] at x[k]) by Newton-Raphson.
LogisticFit fit_logistic(std::span<const double> x,
                         std::span<const double> successes,
                         std::span<const double> trials);

}  // namespace mtc::stats

#endif  // MTC_STATS_HPP_
