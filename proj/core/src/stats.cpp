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

#include "mtc/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mtc::stats {

Interval exponential_mean_ci(double total_time, std::size_t events,
                             double level) {
  if (events == 0) throw std::invalid_argument("exponential_mean_ci: no events");
  const double tail = 0.5 * (1.0 - level);
  boost::math::chi_squared dist(2.0 * static_cast<double>(events));
  return {2.0 * total_time / boost::math::quantile(dist, 1.0 - tail),
          2.0 * total_time / boost::math::quantile(dist, tail)};
}

Interval poisson_count_ci(std::size_t count, double level) {
  const double tail = 0.5 * (1.0 - level);
  const double k = static_cast<double>(count);
  Interval out;
  if (count > 0) {
    boost::math::chi_squared lo(2.0 * k);
    out.low = 0.5 * boost::math::quantile(lo, tail);
  }
  boost::math::chi_squared hi(2.0 * k + 2.0);
  out.high = 0.5 * boost::math::quantile(hi, 1.0 - tail);
  return out;
}

double binomial_sigma(double p, std::size_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("fit_line: x values coincide");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  fit.rms_residual = std::sqrt(ss_res / n);
  return fit;
}

LogisticFit fit_logistic(std::span<const double> x,
                         std::span<const double> successes,
                         std::span<const double> trials) {
  const std::size_t n = x.size();
  if (successes.size() != n || trials.size() != n || n < 2) {
    throw std::invalid_argument("fit_logistic: need >= 2 grouped points");
  }
  // Work on a standardized abscissa; currents are ~1e-5 A.
  double center = 0, scale = 0;
  for (double v : x) center += v;
  center /= static_cast<double>(n);
  for (double v : x) scale = std::max(scale, std::abs(v - center));
  if (!(scale > 0)) throw std::invalid_argument("fit_logistic: x values coincide");

  double a = 0, b = 0;  // logit = a + b*u, u = (x - center)/scale
  LogisticFit out;
  for (int it = 1; it <= 100; ++it) {
    double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (x[i] - center) / scale;
      const double eta = a + b * u;
      const double p = 1.0 / (1.0 + std::exp(-eta));
      const double w = trials[i] * p * (1.0 - p);
      const double r = successes[i] - trials[i] * p;
      g0 += r;
      g1 += r * u;
      h00 += w;
      h01 += w * u;
      h11 += w * u * u;
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0) || !std::isfinite(det)) break;
    const double da = (h11 * g0 - h01 * g1) / det;
    const double db = (h00 * g1 - h01 * g0) / det;
    a += da;
    b += db;
    out.iterations = it;
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs(b) > 1e3) break;
    if (std::abs(da) < 1e-12 && std::abs(db) < 1e-12) {
      out.converged = true;
      break;
    }
  }
  out.slope = b / scale;
  out.intercept = a - b * center / scale;
  return out;
}

}  // namespace mtc::stats
