#include "repel/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace repel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_rho(double rho, const char* who) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw std::domain_error(std::string(who) + ": rho must be finite and >= 0");
}

}  // namespace

KernelPair::KernelPair(double bandwidth, int d) : t(bandwidth), dim(d) { validate(); }

void KernelPair::validate() const {
  if (family != KernelFamily::Heat)
    throw std::domain_error("KernelPair: unknown kernel family");
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error("KernelPair: bandwidth t must be finite and > 0");
  if (dim < 1) throw std::domain_error("KernelPair: dim must be >= 1");
}

double k_eval(const KernelPair& kernel, double rho) {
  check_rho(rho, "k_eval");
  const double norm = std::pow(4.0 * kPi * kernel.t, -0.5 * kernel.dim);
  return norm * std::exp(-rho * rho / (4.0 * kernel.t));
}

double H_eval(const KernelPair& kernel, double rho) {
  check_rho(rho, "H_eval");
  return rho / (2.0 * kernel.t) * k_eval(kernel, rho);
}

double h_eval(const KernelPair& kernel, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("h_eval: lambda must be finite and >= 0");
  return std::exp(-lambda * kernel.t);
}

double geometric_tail_bound(const KernelPair& kernel, double growth_rate,
                            double prefactor, double radius) {
  if (growth_rate < 0.0) throw std::domain_error("geometric_tail_bound: growth_rate < 0");
  if (!(radius >= 0.0)) throw std::domain_error("geometric_tail_bound: radius < 0");
  // For rho >= R, (1+rho)^d <= (1+R)^d e^{d (rho-R)/(1+R)}; completing the
  // square then gives
  //   int_R^inf e^{a rho - rho^2/4t} drho = e^{a^2 t} sqrt(pi t) erfc((R - 2at)/(2 sqrt t))
  // with a = growth + d/(1+R).
  const double t = kernel.t;
  const double d = static_cast<double>(kernel.dim);
  const double a = growth_rate + d / (1.0 + radius);
  const double poly = std::pow(1.0 + radius, d) * std::exp(-d * radius / (1.0 + radius));
  const double norm = std::pow(4.0 * kPi * t, -0.5 * kernel.dim);
  const double integral = std::exp(a * a * t) * std::sqrt(kPi * t) *
                          std::erfc((radius - 2.0 * a * t) / (2.0 * std::sqrt(t)));
  return prefactor * norm * poly * integral;
}

double geometric_truncation_radius(const KernelPair& kernel, double growth_rate,
                                   double prefactor, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("geometric_truncation_radius: eps must be > 0");
  double radius = 1.0;
  while (geometric_tail_bound(kernel, growth_rate, prefactor, radius) >= eps) {
    radius += 0.5;
    if (radius > 1e6)
      throw std::runtime_error("geometric_truncation_radius: no finite radius found");
  }
  return radius;
}

double spectral_tail_bound(const KernelPair& kernel,
                           const std::vector<double>& periods,
                           double lambda_max) {
  if (periods.empty()) throw std::domain_error("spectral_tail_bound: empty periods");
  if (lambda_max < 0.0) throw std::domain_error("spectral_tail_bound: lambda_max < 0");
  // sum_{lambda > L} e^{-lambda t} <= e^{-L t/2} prod_k sum_n e^{-4 pi^2 n^2 (t/2)/l_k^2}
  // and each axis sum is <= 1 + 2 q/(1-q) with q = e^{-2 pi^2 t / l_k^2} (n^2 >= n).
  double product = 1.0;
  for (double period : periods) {
    if (!(period > 0.0)) throw std::domain_error("spectral_tail_bound: period <= 0");
    const double q = std::exp(-2.0 * kPi * kPi * kernel.t / (period * period));
    product *= 1.0 + 2.0 * q / (1.0 - q);
  }
  return std::exp(-0.5 * lambda_max * kernel.t) * product;
}

double spectral_truncation(const KernelPair& kernel,
                           const std::vector<double>& periods, int n_points,
                           double eps) {
  if (!(eps > 0.0)) throw std::domain_error("spectral_truncation: eps must be > 0");
  if (n_points < 1) throw std::domain_error("spectral_truncation: n_points must be >= 1");
  double volume = 1.0;
  for (double period : periods) volume *= period;
  const double scale = static_cast<double>(n_points) * n_points / volume;
  double lambda_max = 0.0;
  while (scale * spectral_tail_bound(kernel, periods, lambda_max) >= eps) {
    lambda_max += 1.0;
    if (lambda_max > 1e9)
      throw std::runtime_error("spectral_truncation: no finite cutoff found");
  }
  return lambda_max;
}

}  // namespace repel
