#include "sslcc/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "sslcc/errors.hpp"

namespace sslcc {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double level) {
  if (a.size() != b.size()) throw UsageError("paired t-test needs equal-length samples");
  if (a.size() < 2) throw UsageError("paired t-test needs at least two pairs");
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
  const double m = mean(diff);
  double ss = 0.0;
  for (double d : diff) ss += (d - m) * (d - m);
  const double var = ss / static_cast<double>(n - 1);

  // Accuracy differences carry rounding noise.
  constexpr double kTiny = 1e-12;
  TTestResult out;
  if (std::sqrt(var) <= kTiny) {
    if (std::abs(m) <= kTiny) {
      out.note = "identical samples";
      return out;
    }
    out.t = m > 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
    out.p = 0.0;
    out.significant = true;
    out.note = "zero-variance constant difference";
    return out;
  }
  out.t = m / std::sqrt(var / static_cast<double>(n));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t)));
  out.significant = out.p < level;
  return out;
}

}  // namespace sslcc
