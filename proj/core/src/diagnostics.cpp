#include "repel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "repel/summation.hpp"

namespace repel {

namespace {

constexpr double kPassSlack = 1e-12;

}  // namespace

WeylReport weyl_report(const Configuration& config, const SpectralBasis& basis) {
  check_configuration(Manifold{basis.torus}, config, "weyl_report");
  const double n = static_cast<double>(config.size());
  const double volume = basis.torus.volume();

  WeylReport report;
  report.energy = energy_spectral(config, basis).value;
  report.mean_threshold = n / volume * basis.sum_weights;
  report.certified_below_mean = report.energy <= report.mean_threshold;
  report.weight_sum_with_tail = basis.sum_weights + basis.sum_weights_tail_bound;

  const auto amplitudes = weyl_amplitudes(basis, config);
  report.rows.reserve(basis.modes.size());
  bool all_pass = true;
  for (std::size_t m = 0; m < basis.modes.size(); ++m) {
    const SpectralMode& mode = basis.modes[m];
    WeylModeRow row;
    row.index = mode.index;
    row.eigenvalue = mode.eigenvalue;
    row.amplitude = std::abs(amplitudes[m]) / n;
    row.bound = std::sqrt(report.weight_sum_with_tail / (volume * mode.weight)) / std::sqrt(n);
    row.pass = row.amplitude <= row.bound + kPassSlack;
    all_pass = all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  report.all_pass = all_pass;
  return report;
}

MeanEnergyReport mean_energy_check(const Torus& torus, const KernelPair& kernel,
                                   const SpectralBasis& basis, int n_points, int samples,
                                   std::uint64_t seed) {
  if (samples < 100) throw std::domain_error("mean_energy_check: samples must be >= 100");
  if (n_points < 1) throw std::domain_error("mean_energy_check: n_points must be >= 1");
  kernel.validate();

  const Manifold manifold{torus};
  std::vector<double> values;
  values.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    const Configuration config =
        uniform_random_configuration(manifold, n_points, seed + static_cast<std::uint64_t>(s));
    values.push_back(energy_spectral(config, basis).value);
  }
  KahanSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / samples;
  KahanSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double variance = sq.value() / (static_cast<double>(samples) - 1.0);
  const double std_error = std::sqrt(variance / samples);

  MeanEnergyReport report;
  report.samples = samples;
  report.empirical_mean = mean;
  report.std_error = std_error;
  report.analytic_mean = static_cast<double>(n_points) / torus.volume() * basis.sum_weights;
  const double slack = 1e-12 * std::max(1.0, std::fabs(report.analytic_mean));
  report.within_four_se = std::fabs(mean - report.analytic_mean) <= 4.0 * std_error + slack;
  return report;
}

void TrigPolynomial::validate(int dimension) const {
  for (const auto& [index, coeff] : coefficients) {
    if (static_cast<int>(index.size()) != dimension)
      throw std::domain_error("TrigPolynomial: index dimension mismatch");
    std::vector<int> negated(index.size());
    for (std::size_t k = 0; k < index.size(); ++k) negated[k] = -index[k];
    bool found = false;
    for (const auto& [other, other_coeff] : coefficients) {
      if (other == negated) {
        if (std::abs(other_coeff - std::conj(coeff)) > 1e-12)
          throw std::domain_error("TrigPolynomial: coefficients are not conjugate-symmetric");
        found = true;
        break;
      }
    }
    if (!found)
      throw std::domain_error("TrigPolynomial: missing conjugate partner for a mode");
  }
}

IntegrationReport integrate_against(const Configuration& config, const Torus& torus,
                                    const TrigPolynomial& f) {
  check_configuration(Manifold{torus}, config, "integrate_against");
  f.validate(torus.dim());
  const double n = static_cast<double>(config.size());
  const double root_v = std::sqrt(torus.volume());

  // direct evaluation of f at the points
  std::vector<double> samples;
  samples.reserve(config.points.size());
  for (const Vec& x : config.points) {
    std::complex<double> value = 0.0;
    for (const auto& [index, coeff] : f.coefficients)
      value += coeff * eigenfunction(torus, index, x);
    samples.push_back(value.real());
  }
  std::complex<double> constant_coeff = 0.0;
  for (const auto& [index, coeff] : f.coefficients) {
    const bool zero = std::all_of(index.begin(), index.end(), [](int m) { return m == 0; });
    if (zero) constant_coeff += coeff;
  }

  IntegrationReport report;
  report.sample_mean = sorted_sum(samples) / n;
  report.true_mean = constant_coeff.real() / root_v;
  report.difference = report.sample_mean - report.true_mean;

  // the same difference through Weyl amplitudes: N^{-1} sum_{m != 0} c_m S_m
  std::complex<double> through_amplitudes = 0.0;
  for (const auto& [index, coeff] : f.coefficients) {
    const bool zero = std::all_of(index.begin(), index.end(), [](int m) { return m == 0; });
    if (zero) continue;
    std::vector<std::complex<double>> terms;
    terms.reserve(config.points.size());
    for (const Vec& x : config.points) terms.push_back(eigenfunction(torus, index, x));
    through_amplitudes += coeff * sorted_sum(terms);
  }
  report.weyl_difference = through_amplitudes.real() / n;
  return report;
}

double symmetric_minimizer_energy(int n_points, double circumference,
                                  const KernelPair& kernel) {
  if (n_points < 1) throw std::domain_error("symmetric_minimizer_energy: n_points must be >= 1");
  if (!(circumference > 0.0))
    throw std::domain_error("symmetric_minimizer_energy: circumference must be > 0");
  kernel.validate();
  const double volume = circumference;
  const double n = static_cast<double>(n_points);
  const double two_pi = 2.0 * std::numbers::pi;
  KahanSum sum;
  for (int k = 1; k <= 1000000; ++k) {
    const double freq = static_cast<double>(k) * n / circumference;
    const double lambda = two_pi * two_pi * freq * freq;
    const double term = 2.0 * n * n / volume * h_eval(kernel, lambda);
    sum.add(term);
    if (term < 1e-300) break;
  }
  return sum.value();
}

NearestNeighborReport nearest_neighbor_report(const Configuration& config,
                                              const BolzaSurface& surface,
                                              int baseline_samples, std::uint64_t seed) {
  if (config.size() < 2)
    throw std::domain_error("nearest_neighbor_report: need at least two points");
  if (baseline_samples < 1)
    throw std::domain_error("nearest_neighbor_report: baseline_samples must be >= 1");

  auto nn_stats = [&](const Configuration& c, double& min_nn, double& mean_nn) {
    const int n = c.size();
    min_nn = std::numeric_limits<double>::infinity();
    KahanSum mean;
    for (int i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        nearest = std::min(nearest,
                           surface.distance(to_complex(c.points[i]), to_complex(c.points[j])));
      }
      min_nn = std::min(min_nn, nearest);
      mean.add(nearest);
    }
    mean_nn = mean.value() / n;
  };

  NearestNeighborReport report;
  nn_stats(config, report.min_nn, report.mean_nn);
  report.baseline_samples = baseline_samples;
  const Manifold manifold{surface};
  KahanSum baseline;
  for (int s = 0; s < baseline_samples; ++s) {
    const Configuration sample = uniform_random_configuration(
        manifold, config.size(), seed + static_cast<std::uint64_t>(s));
    double min_nn = 0.0, mean_nn = 0.0;
    nn_stats(sample, min_nn, mean_nn);
    baseline.add(mean_nn);
  }
  report.baseline_mean_nn = baseline.value() / baseline_samples;
  return report;
}

}  // namespace repel
