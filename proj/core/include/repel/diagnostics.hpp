#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "repel/energy.hpp"
#include "repel/optimize.hpp"

namespace repel {

/// Per-mode Weyl data: normalized amplitude w_m = |S_m|/N against the bound
/// C(m)/sqrt(N) with C(m) = sqrt(sum_n a_n / (V a_m)). The numerator uses the
/// stored weight sum plus its certified tail bound, so the reported bound is
/// valid for the full series.
struct WeylModeRow {
  std::vector<int> index;
  double eigenvalue = 0.0;
  double amplitude = 0.0;  // w_m
  double bound = 0.0;      // b_m
  bool pass = false;       // w_m <= b_m + 1e-12
};

struct WeylReport {
  std::vector<WeylModeRow> rows;
  double energy = 0.0;          // spectral energy of the configuration
  double mean_threshold = 0.0;  // (N/V) * stored weight sum
  bool certified_below_mean = false;
  double weight_sum_with_tail = 0.0;  // numerator used in C(m)
  bool all_pass = false;
};

WeylReport weyl_report(const Configuration& config, const SpectralBasis& basis);

/// Monte Carlo check of the mean-field identity: over uniform configurations
/// the expected spectral energy is (N/V) sum a_n exactly (truncation on both
/// sides cancels).
struct MeanEnergyReport {
  int samples = 0;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double analytic_mean = 0.0;
  bool within_four_se = false;
};

MeanEnergyReport mean_energy_check(const Torus& torus, const KernelPair& kernel,
                                   const SpectralBasis& basis, int n_points, int samples,
                                   std::uint64_t seed);

/// A trigonometric polynomial as mode-coefficient pairs (the zero index is the
/// constant term). Coefficients must be conjugate-symmetric so f is real.
struct TrigPolynomial {
  std::vector<std::pair<std::vector<int>, std::complex<double>>> coefficients;
  void validate(int dimension) const;
};

struct IntegrationReport {
  double sample_mean = 0.0;     // N^{-1} sum_i f(x_i)
  double true_mean = 0.0;       // V^{-1} int f = c_0 / sqrt(V)
  double difference = 0.0;
  double weyl_difference = 0.0; // the same difference through Weyl amplitudes
};

IntegrationReport integrate_against(const Configuration& config, const Torus& torus,
                                    const TrigPolynomial& f);

/// Closed-form spectral energy of n equally spaced points on the circle of
/// the given circumference: only modes with index divisible by n survive,
///   E = 2 n^2 / V * sum_{k >= 1} h(lambda_{k n}).
double symmetric_minimizer_energy(int n_points, double circumference,
                                  const KernelPair& kernel);

/// Geometric equidistribution proxy for hyperbolic outputs (no eigendata
/// there): nearest-neighbor distances against a uniform-sampling baseline.
/// Heuristic only; it certifies nothing.
struct NearestNeighborReport {
  double min_nn = 0.0;
  double mean_nn = 0.0;
  double baseline_mean_nn = 0.0;  // Monte Carlo over uniform configurations
  int baseline_samples = 0;
};

NearestNeighborReport nearest_neighbor_report(const Configuration& config,
                                              const BolzaSurface& surface,
                                              int baseline_samples, std::uint64_t seed);

}  // namespace repel
