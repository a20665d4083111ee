#include "repel/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace repel {

namespace {

constexpr double kMinStep = 1e-16;

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; stable across standard library implementations
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Objective {
  bool spectral = false;
  const SpectralBasis* basis = nullptr;
  const Manifold* manifold = nullptr;
  const KernelPair* kernel = nullptr;
  double eps_geo = 1e-10;

  double value(const Configuration& config) const {
    if (spectral) return energy_spectral(config, *basis).value;
    return energy_geometric(config, *manifold, *kernel, eps_geo).value;
  }
  std::vector<Vec> gradient(const Configuration& config) const {
    if (spectral) return gradient_spectral(config, *basis);
    return gradient_geometric(config, *manifold, *kernel, eps_geo);
  }
  EnergyReport report(const Configuration& config) const {
    if (spectral) return energy_spectral(config, *basis);
    return energy_geometric(config, *manifold, *kernel, eps_geo);
  }
  /// Reported residual: gradient sup-norm on tori, force sup-norm (= half
  /// the gradient norm) on the hyperbolic surface.
  double residual(const Configuration& config, const std::vector<Vec>& grad) const {
    double sup = 0.0;
    for (int i = 0; i < config.size(); ++i) {
      double norm = metric_norm(*manifold, config.points[i], grad[i]);
      if (!spectral) norm *= 0.5;
      sup = std::max(sup, norm);
    }
    return sup;
  }
};

}  // namespace

void OptimizeParams::validate() const {
  if (max_iters < 0) throw std::domain_error("OptimizeParams: max_iters must be >= 0");
  if (!(grad_tol >= 0.0)) throw std::domain_error("OptimizeParams: grad_tol must be >= 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw std::domain_error("OptimizeParams: armijo_c must be in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::domain_error("OptimizeParams: backtrack_factor must be in (0, 1)");
  if (!(initial_step > 0.0)) throw std::domain_error("OptimizeParams: initial_step must be > 0");
  if (restarts < 0) throw std::domain_error("OptimizeParams: restarts must be >= 0");
}

const char* to_string(OptimizeStatus status) {
  switch (status) {
    case OptimizeStatus::Converged: return "converged";
    case OptimizeStatus::MaxIterations: return "max-iterations";
    case OptimizeStatus::Stagnated: return "stagnated";
  }
  return "unknown";
}

OptimizeResult minimize(const Manifold& manifold, const KernelPair& kernel,
                        const SpectralBasis* basis, const Configuration& start,
                        const OptimizeParams& params, double eps_geo) {
  params.validate();
  kernel.validate();
  check_configuration(manifold, start, "minimize");
  const bool torus = is_torus(manifold);
  if (torus && basis == nullptr)
    throw std::domain_error("minimize: the spectral objective on a torus requires a basis");
  if (!torus && basis != nullptr)
    throw std::domain_error("minimize: no spectral basis exists on a hyperbolic model");

  Objective objective{torus, basis, &manifold, &kernel, eps_geo};

  Configuration config = start;
  double energy = objective.value(config);
  std::vector<Vec> grad = objective.gradient(config);
  double residual = objective.residual(config, grad);

  OptimizeResult result;
  result.trace.push_back(TracePoint{energy, residual});
  result.status = OptimizeStatus::MaxIterations;

  int accepted = 0;
  // the accepted step carries over, retried one level up next iteration, so
  // both stiff and nearly-flat objectives settle on their natural step scale
  double trial_step = params.initial_step;
  while (accepted < params.max_iters) {
    if (residual <= params.grad_tol) break;
    double grad_sq = 0.0;
    for (int i = 0; i < config.size(); ++i)
      grad_sq += metric_dot(manifold, config.points[i], grad[i], grad[i]);

    double step = trial_step;
    bool stepped = false;
    Configuration candidate = config;
    while (step >= kMinStep) {
      for (int i = 0; i < config.size(); ++i) {
        Vec move = grad[i];
        for (double& c : move) c *= -step;
        candidate.points[i] = retract(manifold, config.points[i], move);
      }
      const double cand_energy = objective.value(candidate);
      // strict decrease; when the required decrease underflows the energy's
      // resolution this fails and the run ends as an honest stagnation
      if (cand_energy <= energy - params.armijo_c * step * grad_sq && cand_energy < energy) {
        config = candidate;
        energy = cand_energy;
        stepped = true;
        break;
      }
      step *= params.backtrack_factor;
    }
    if (!stepped) {
      result.status = OptimizeStatus::Stagnated;
      break;
    }
    trial_step = std::min(step / params.backtrack_factor, 1e12);
    ++accepted;
    grad = objective.gradient(config);
    residual = objective.residual(config, grad);
    result.trace.push_back(TracePoint{energy, residual});
  }
  if (residual <= params.grad_tol) result.status = OptimizeStatus::Converged;

  result.config = std::move(config);
  result.energy = objective.report(result.config);
  result.residual_norm = residual;
  result.iterations = accepted;
  if (torus) {
    result.mean_threshold =
        static_cast<double>(start.size()) / basis->torus.volume() * basis->sum_weights;
    result.certified_below_mean = result.energy.value <= result.mean_threshold;
  } else {
    result.mean_threshold = std::numeric_limits<double>::quiet_NaN();
    result.certified_below_mean = false;
  }
  return result;
}

MultistartResult multistart(const Manifold& manifold, const KernelPair& kernel,
                            const SpectralBasis* basis, int n_points,
                            const OptimizeParams& params, double eps_geo) {
  params.validate();
  if (params.restarts < 1) throw std::domain_error("multistart: restarts must be >= 1");
  if (n_points < 1) throw std::domain_error("multistart: n_points must be >= 1");

  MultistartResult result;
  result.final_energies.assign(params.restarts, std::numeric_limits<double>::quiet_NaN());
  std::exception_ptr first_error;
  for (int r = 0; r < params.restarts; ++r) {
    try {
      const Configuration start =
          uniform_random_configuration(manifold, n_points, params.seed + static_cast<std::uint64_t>(r));
      OptimizeResult run = minimize(manifold, kernel, basis, start, params, eps_geo);
      result.final_energies[r] = run.energy.value;
      if (result.best_index < 0 || run.energy.value < result.best.energy.value - 1e-12) {
        result.best = std::move(run);
        result.best_index = r;
      }
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (result.best_index < 0) {
    if (first_error) std::rethrow_exception(first_error);
    throw std::runtime_error("multistart: every restart failed");
  }
  return result;
}

Configuration uniform_random_configuration(const Manifold& manifold, int n_points,
                                           std::uint64_t seed) {
  if (n_points < 1)
    throw std::domain_error("uniform_random_configuration: n_points must be >= 1");
  std::mt19937_64 rng(seed);
  Configuration config;
  config.points.reserve(n_points);
  if (const auto* torus = std::get_if<Torus>(&manifold)) {
    for (int i = 0; i < n_points; ++i) {
      Vec p(torus->dim());
      for (int k = 0; k < torus->dim(); ++k) p[k] = uniform01(rng) * torus->periods()[k];
      config.points.push_back(torus->reduce(p));
    }
    return config;
  }
  const auto& surface = std::get<BolzaSurface>(manifold);
  // rejection from the hyperbolic-uniform disk of the circumradius: the
  // radial CDF of the area element is (cosh r - 1)/(cosh c - 1)
  const double c = surface.circumradius();
  const double cosh_c = std::cosh(c);
  for (int i = 0; i < n_points; ++i) {
    while (true) {
      const double u = uniform01(rng);
      const double theta = 2.0 * std::numbers::pi * uniform01(rng);
      const double r = std::acosh(1.0 + u * (cosh_c - 1.0));
      const Complexd z = std::polar(std::tanh(0.5 * r), theta);
      if (surface.in_domain(z, 1e-15)) {
        config.points.push_back(to_vec(surface.reduce(z)));
        break;
      }
    }
  }
  return config;
}

}  // namespace repel
