#include "bergman/math_util.hpp"

#include <stdexcept>

namespace bergman {

std::vector<double> stirling_second_row(int k) {
  if (k < 0) throw std::invalid_argument("stirling_second_row: k < 0");
  std::vector<double> row{1.0};  // S(0,0) = 1
  for (int m = 1; m <= k; ++m) {
    std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = 1; j <= m; ++j) {
      const double below = (j <= m - 1) ? row[static_cast<std::size_t>(j)] : 0.0;
      next[static_cast<std::size_t>(j)] = j * below + row[static_cast<std::size_t>(j - 1)];
    }
    row = std::move(next);
  }
  return row;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("linear_fit: need two equal-length samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LinearFit fit;
  if (sxx == 0.0) return fit;  // degenerate abscissae: report zero slope
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (xs.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

double kahan_sum(std::span<const double> values) {
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace bergman
