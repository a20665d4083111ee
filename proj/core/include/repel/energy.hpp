#pragma once

#include "repel/kernels.hpp"
#include "repel/manifold.hpp"
#include "repel/spectrum.hpp"

namespace repel {

/// A computed energy plus its certified absolute truncation error and the
/// summation conventions it used.
struct EnergyReport {
  double value = 0.0;
  double tail_bound = 0.0;
  bool self_loops_exclude_identity = false;  // geometric sum drops zero-length loops
  bool constant_mode_excluded = false;       // spectral sum starts at lambda_1
};

/// Spectral quadratic form sum_m a_m |S_m|^2 over the stored modes.
/// Nonnegative; invariant under permutations and translations.
EnergyReport energy_spectral(const Configuration& config, const SpectralBasis& basis);

/// Pairwise geodesic kernel sum: ordered pairs (i, j), i != j, over every
/// geodesic class of length <= R, plus nontrivial loops at each point. R is
/// certified so the omitted tail is below eps in absolute value.
EnergyReport energy_geometric(const Configuration& config, const Manifold& manifold,
                              const KernelPair& kernel, double eps);

/// Both sides of the pretrace identity. With the zero-length loops excluded
/// from the geometric sum and the constant mode excluded from the spectral
/// one, Poisson summation reads
///   E_geo + N k(0) = N^2 h(0)/V + E_spec,
/// so |residual| is bounded by the two truncation tails combined.
struct PretraceReport {
  double residual = 0.0;
  double geometric_tail = 0.0;
  double spectral_tail = 0.0;
  double budget() const { return geometric_tail + spectral_tail; }
};

PretraceReport pretrace_check(const Configuration& config, const Torus& torus,
                              const KernelPair& kernel, const SpectralBasis& basis,
                              double eps_geo);
double pretrace_residual(const Configuration& config, const Torus& torus,
                         const KernelPair& kernel, const SpectralBasis& basis,
                         double eps_geo);

/// Net repelling vector at point i: sum of H(L) times the repelling unit
/// tangent over every geodesic segment from x_i to the configuration
/// (nontrivial loops included, the zero-length class excluded). Chart tangent
/// at x_i. Equal to -1/2 of the geometric energy gradient.
Vec force_at(const Configuration& config, int i, const Manifold& manifold,
             const KernelPair& kernel, double eps);

/// Analytic gradient of the spectral energy, one chart tangent per point.
std::vector<Vec> gradient_spectral(const Configuration& config, const SpectralBasis& basis);

/// Riemannian gradient of the geometric energy (= -2 force_at per point).
std::vector<Vec> gradient_geometric(const Configuration& config, const Manifold& manifold,
                                    const KernelPair& kernel, double eps);

/// Certified cutoff radii used by the evaluators (exposed for tests/tools).
double geometric_cutoff(const Manifold& manifold, const KernelPair& kernel, int n_points,
                        double eps, double* tail_bound = nullptr);
double force_cutoff(const Manifold& manifold, const KernelPair& kernel, int n_points,
                    double eps, double* tail_bound = nullptr);

}  // namespace repel
