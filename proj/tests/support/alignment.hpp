#pragma once

// Helpers for comparing optimizer outputs against the equally-spaced
// configuration on a circle, up to rotation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "repel/manifolds.hpp"

namespace alignment {

/// Largest deviation of any point from the best-fitting rotated lattice
/// {delta + k l/n}. Returns +inf when points collapse (two points on one
/// site), so a small value really means "equally spaced".
inline double equally_spaced_deviation(const repel::Configuration& config, double period) {
  const int n = config.size();
  const double spacing = period / n;
  std::complex<double> z = 0.0;
  for (const repel::Vec& p : config.points)
    z += std::polar(1.0, 2.0 * 3.14159265358979323846 * n * p[0] / period);
  const double delta = std::arg(z) * period / (2.0 * 3.14159265358979323846 * n);

  double worst = 0.0;
  for (const repel::Vec& p : config.points) {
    double r = std::fmod(p[0] - delta + 0.5 * spacing, spacing);
    if (r < 0.0) r += spacing;
    worst = std::max(worst, std::fabs(r - 0.5 * spacing));
  }
  // collapsed configurations can align site-wise; demand distinct sites
  std::vector<double> sorted;
  for (const repel::Vec& p : config.points) sorted.push_back(p[0]);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    const double gap = (i + 1 < n) ? sorted[i + 1] - sorted[i]
                                   : sorted[0] + period - sorted[n - 1];
    if (gap < 0.5 * spacing) return std::numeric_limits<double>::infinity();
  }
  return worst;
}

}  // namespace alignment
