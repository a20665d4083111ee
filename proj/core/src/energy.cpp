#include "repel/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "repel/summation.hpp"

namespace repel {

namespace {

constexpr double kPi = std::numbers::pi;

// Shell-density data for the certified tail bounds: the number of geodesic
// images per unit length from one point to another is at most
//   prefactor_pair * e^{growth rho} (rho + 1)^dim
// once the enumeration radius is shifted by `shift` (each image owns a
// disjoint cell, so counts are bounded by thickened volume quotients).
struct TailModel {
  double growth = 0.0;
  double prefactor_pair = 0.0;
  double shift = 0.0;
};

TailModel tail_model(const Manifold& manifold) {
  if (const auto* torus = std::get_if<Torus>(&manifold)) {
    const int d = torus->dim();
    const double hc = torus->half_diagonal();
    const double surface_coeff = (d == 1) ? 2.0 : 2.0 * kPi;  // d omega_d, d <= 2
    TailModel model;
    model.growth = 0.0;
    model.prefactor_pair = surface_coeff * std::pow(1.0 + hc, d - 1) / torus->volume();
    model.shift = 2.0 * hc;
    return model;
  }
  const auto& surface = std::get<BolzaSurface>(manifold);
  const double b = surface.injectivity_radius_lower_bound();
  const double ball = 2.0 * kPi * (std::cosh(b) - 1.0);  // area of the disjoint balls
  TailModel model;
  model.growth = 1.0;
  model.prefactor_pair = kPi * std::exp(b) / ball;
  model.shift = 2.0 * b;
  return model;
}

}  // namespace

double geometric_cutoff(const Manifold& manifold, const KernelPair& kernel, int n_points,
                        double eps, double* tail_bound) {
  if (n_points < 1) throw std::domain_error("geometric_cutoff: n_points must be >= 1");
  const TailModel model = tail_model(manifold);
  const double prefactor = static_cast<double>(n_points) * n_points * model.prefactor_pair;
  const double r0 = geometric_truncation_radius(kernel, model.growth, prefactor, eps);
  if (tail_bound) *tail_bound = geometric_tail_bound(kernel, model.growth, prefactor, r0);
  return r0 + model.shift;
}

double force_cutoff(const Manifold& manifold, const KernelPair& kernel, int n_points,
                    double eps, double* tail_bound) {
  if (n_points < 1) throw std::domain_error("force_cutoff: n_points must be >= 1");
  const TailModel model = tail_model(manifold);
  // an omitted image at distance L sits within `shift` of its cell, so
  // H(L) = L/(2t) k(L) <= (1 + shift) e^s / (2t) k(s) at the cell radius s;
  // the e^s goes into the growth exponent, the rest into the prefactor
  const double prefactor = static_cast<double>(n_points) * model.prefactor_pair *
                           (1.0 + model.shift) / (2.0 * kernel.t);
  const double r0 = geometric_truncation_radius(kernel, model.growth + 1.0, prefactor, eps);
  if (tail_bound) *tail_bound = geometric_tail_bound(kernel, model.growth + 1.0, prefactor, r0);
  return r0 + model.shift;
}

EnergyReport energy_spectral(const Configuration& config, const SpectralBasis& basis) {
  check_configuration(Manifold{basis.torus}, config, "energy_spectral");
  const int n = config.size();
  const PhaseTable table(basis, config);
  KahanSum total;
  for (const SpectralMode& mode : basis.modes)
    total.add(mode.weight * std::norm(table.amplitude(mode.index)));
  EnergyReport report;
  report.value = total.value();
  report.tail_bound = static_cast<double>(n) * n / basis.torus.volume() *
                      basis.sum_weights_tail_bound;
  report.constant_mode_excluded = true;
  return report;
}

EnergyReport energy_geometric(const Configuration& config, const Manifold& manifold,
                              const KernelPair& kernel, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("energy_geometric: eps must be > 0");
  check_configuration(manifold, config, "energy_geometric");
  kernel.validate();
  const int n = config.size();
  double tail = 0.0;
  const double cutoff = geometric_cutoff(manifold, kernel, n, eps, &tail);

  std::vector<double> terms;
  auto collect = [&](const Vec& p, const Vec& q, bool same_point) {
    if (const auto* torus = std::get_if<Torus>(&manifold)) {
      torus->scan_images(p, q, cutoff, [&](const Vec&, double len) {
        if (same_point && len < 1e-15) return;  // identity loop carries no energy term
        terms.push_back(k_eval(kernel, len));
      });
    } else {
      const auto& surface = std::get<BolzaSurface>(manifold);
      surface.scan_images(to_complex(p), to_complex(q), cutoff,
                          [&](double len, Complexd) {
                            if (same_point && len < 1e-15) return;
                            terms.push_back(k_eval(kernel, len));
                          });
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) collect(config.points[i], config.points[j], i == j);

  EnergyReport report;
  report.value = sorted_sum(terms);
  report.tail_bound = tail;
  report.self_loops_exclude_identity = true;
  return report;
}

PretraceReport pretrace_check(const Configuration& config, const Torus& torus,
                              const KernelPair& kernel, const SpectralBasis& basis,
                              double eps_geo) {
  const Manifold manifold{torus};
  const EnergyReport geo = energy_geometric(config, manifold, kernel, eps_geo);
  const EnergyReport spec = energy_spectral(config, basis);
  const double n = static_cast<double>(config.size());
  const double geometric_side = geo.value + n * k_eval(kernel, 0.0);
  const double spectral_side = n * n * h_eval(kernel, 0.0) / torus.volume() + spec.value;
  return PretraceReport{geometric_side - spectral_side, geo.tail_bound, spec.tail_bound};
}

double pretrace_residual(const Configuration& config, const Torus& torus,
                         const KernelPair& kernel, const SpectralBasis& basis,
                         double eps_geo) {
  return pretrace_check(config, torus, kernel, basis, eps_geo).residual;
}

Vec force_at(const Configuration& config, int i, const Manifold& manifold,
             const KernelPair& kernel, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("force_at: eps must be > 0");
  check_configuration(manifold, config, "force_at");
  if (i < 0 || i >= config.size()) throw std::domain_error("force_at: point index out of range");
  kernel.validate();
  const int n = config.size();
  const double cutoff = force_cutoff(manifold, kernel, n, eps);
  const Vec& p = config.points[i];

  const int d = dim(manifold);
  std::vector<KahanSum> acc(d);
  for (int j = 0; j < n; ++j) {
    const Vec& q = config.points[j];
    if (const auto* torus = std::get_if<Torus>(&manifold)) {
      torus->scan_images(p, q, cutoff, [&](const Vec& u, double len) {
        if (len < 1e-15) return;  // H(0) = 0: zero-length classes carry no force
        const double magnitude = H_eval(kernel, len);
        for (int k = 0; k < d; ++k) acc[k].add(magnitude * (-u[k] / len));
      });
    } else {
      const auto& surface = std::get<BolzaSurface>(manifold);
      surface.scan_images(to_complex(p), to_complex(q), cutoff, [&](double len, Complexd away) {
        if (len < 1e-15) return;
        const double magnitude = H_eval(kernel, len);
        acc[0].add(magnitude * away.real());
        acc[1].add(magnitude * away.imag());
      });
    }
  }
  Vec force(d);
  for (int k = 0; k < d; ++k) force[k] = acc[k].value();
  return force;
}

std::vector<Vec> gradient_spectral(const Configuration& config, const SpectralBasis& basis) {
  check_configuration(Manifold{basis.torus}, config, "gradient_spectral");
  const int n = config.size();
  const int d = basis.torus.dim();
  const PhaseTable table(basis, config);

  std::vector<std::vector<KahanSum>> acc(n, std::vector<KahanSum>(d));
  for (const SpectralMode& mode : basis.modes) {
    const std::complex<double> conj_amp = std::conj(table.amplitude(mode.index));
    for (int i = 0; i < n; ++i) {
      const std::complex<double> phi = table.eigenfunction_at(i, mode.index);
      // d/dx_k |S|^2 = 2 Re(conj(S) phi 2 pi i m_k / l_k)
      const double common = -2.0 * mode.weight * (conj_amp * phi).imag();
      for (int k = 0; k < d; ++k) {
        const double freq = 2.0 * kPi * mode.index[k] / basis.torus.periods()[k];
        acc[i][k].add(common * freq);
      }
    }
  }
  std::vector<Vec> grad(n, Vec(d));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) grad[i][k] = acc[i][k].value();
  return grad;
}

std::vector<Vec> gradient_geometric(const Configuration& config, const Manifold& manifold,
                                    const KernelPair& kernel, double eps) {
  std::vector<Vec> grad(config.size());
  for (int i = 0; i < config.size(); ++i) {
    Vec f = force_at(config, i, manifold, kernel, eps);
    for (double& c : f) c *= -2.0;
    grad[i] = std::move(f);
  }
  return grad;
}

}  // namespace repel
