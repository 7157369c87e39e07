#pragma once

#include <functional>
#include <span>
#include <string>

namespace sslcc {

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  bool significant = false;
  std::string note;
};

/// Two-sided paired t-test on a - b with n - 1 degrees of freedom.
/// All-zero differences give p = 1; a constant non-zero difference has zero
/// variance and is reported significant with t = +-inf and a note.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double level = 0.05);

/// Significance-test hook for the report; defaults to paired_t_test.
using SignificanceTest =
    std::function<TTestResult(std::span<const double>, std::span<const double>, double)>;

double mean(std::span<const double> values);

}  // namespace sslcc
