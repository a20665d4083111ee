#pragma once

#include <cstdint>
#include <vector>

#include "repel/energy.hpp"

namespace repel {

struct OptimizeParams {
  int max_iters = 1000;
  double grad_tol = 1e-8;       // stop when the residual sup-norm drops below
  double armijo_c = 1e-4;       // sufficient-decrease constant, in (0, 1)
  double backtrack_factor = 0.5;  // step shrink factor, in (0, 1)
  double initial_step = 1.0;
  std::uint64_t seed = 0;
  int restarts = 16;

  void validate() const;
};

enum class OptimizeStatus {
  Converged,      // residual <= grad_tol
  MaxIterations,  // iteration budget exhausted
  Stagnated,      // line search found no decrease at the minimum step
};

const char* to_string(OptimizeStatus status);

struct TracePoint {
  double energy = 0.0;
  double residual = 0.0;
};

struct OptimizeResult {
  Configuration config;
  EnergyReport energy;
  double residual_norm = 0.0;  // sup over points: gradient norm (torus) / force norm (bolza)
  int iterations = 0;          // accepted descent steps
  OptimizeStatus status = OptimizeStatus::MaxIterations;
  bool certified_below_mean = false;  // energy <= (N/V) sum a_n (spectral objective)
  double mean_threshold = 0.0;        // NaN on hyperbolic models
  std::vector<TracePoint> trace;      // per accepted step, starting at the initial state
};

/// Riemannian gradient descent with Armijo backtracking. The objective is
/// selected by the model: spectral energy on tori (basis required), geometric
/// energy on the hyperbolic surface (basis must be null). Line-search failure
/// yields an honest Stagnated result, not an error.
OptimizeResult minimize(const Manifold& manifold, const KernelPair& kernel,
                        const SpectralBasis* basis, const Configuration& start,
                        const OptimizeParams& params, double eps_geo = 1e-10);

struct MultistartResult {
  OptimizeResult best;
  int best_index = -1;
  std::vector<double> final_energies;  // one per restart, NaN on per-run failure
};

/// Independent uniform-random starts seeded seed, seed+1, ...; the lowest
/// final energy wins, with ties (within 1e-12) broken by restart index.
MultistartResult multistart(const Manifold& manifold, const KernelPair& kernel,
                            const SpectralBasis* basis, int n_points,
                            const OptimizeParams& params, double eps_geo = 1e-10);

/// I.i.d. points from the normalized Riemannian volume. Deterministic in seed.
Configuration uniform_random_configuration(const Manifold& manifold, int n_points,
                                           std::uint64_t seed);

}  // namespace repel
