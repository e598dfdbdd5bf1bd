// Helpers shared by the unit tests.
#ifndef TEST_SUPPORT_HPP
#define TEST_SUPPORT_HPP

#include <random>

#include "bergman/geometry.hpp"

namespace testsup {

/// Rejection-sampled point with |z| <= rmax (uniform w.r.t. Lebesgue measure).
inline bergman::Point ball_point(int n, std::mt19937_64& rng, double rmax = 0.99) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    bergman::Point z(n);
    for (int i = 0; i < n; ++i) z[i] = bergman::Complex(u(rng), u(rng));
    if (bergman::norm_sq(z) < 1.0) return rmax * z;
  }
}

inline bergman::Point sphere_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    bergman::Point z(n);
    for (int i = 0; i < n; ++i) z[i] = bergman::Complex(g(rng), g(rng));
    const double m = std::sqrt(bergman::norm_sq(z));
    if (m > 1e-6) return z / m;
  }
}

}  // namespace testsup

#endif
