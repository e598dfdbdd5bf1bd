#ifndef BERGMAN_MATH_UTIL_HPP
#define BERGMAN_MATH_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace bergman {

/// log Gamma for positive arguments.
inline double log_gamma(double x) { return std::lgamma(x); }

/// Euler Beta function B(a,b), a,b > 0.
inline double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Stirling numbers of the second kind S(k,j), j = 0..k.
std::vector<double> stirling_second_row(int k);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Ordinary least squares y = a + b x. Requires xs.size() == ys.size() >= 2.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Compensated (Kahan) sum.
double kahan_sum(std::span<const double> values);

}  // namespace bergman

#endif
