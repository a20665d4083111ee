#pragma once

#include <vector>

namespace repel {

enum class KernelFamily { Heat };

/// A radial kernel, its force law and its spectral transform, on a model of
/// dimension `dim`:
///
///   k_t(rho)  = (4 pi t)^{-dim/2} exp(-rho^2 / 4t)
///   H(rho)    = -k'(rho) = rho/(2t) k(rho)
///   h(lambda) = exp(-lambda t)
///
/// On a flat torus h is exactly the Fourier transform of k, so the periodized
/// kernel sum and the spectral expansion agree term by term (Poisson
/// summation). All public interfaces are parameterized by the eigenvalue
/// lambda; the r-picture (lambda = r^2 + ((n-1)/2)^2 on hyperbolic models)
/// stays in the documentation.
struct KernelPair {
  KernelFamily family = KernelFamily::Heat;
  double t = 0.05;  // bandwidth, in (0, inf)
  int dim = 1;      // flat model dimension, >= 1

  KernelPair() = default;
  KernelPair(double bandwidth, int d);
  void validate() const;
};

/// Kernel value k_t(rho). Strictly positive, strictly decreasing.
double k_eval(const KernelPair& kernel, double rho);

/// Repelling magnitude H(rho) = -k'(rho). Nonnegative, H(0) = 0.
double H_eval(const KernelPair& kernel, double rho);

/// Spectral weight h(lambda). Strictly positive, strictly decreasing, h(0)=1.
double h_eval(const KernelPair& kernel, double lambda);

/// Closed-form upper bound on
///   prefactor * int_R^inf e^{growth_rate rho} (rho+1)^{dim} k(rho) drho,
/// via (rho+1)^dim <= e^{dim rho} and the Gaussian tail in erfc form.
/// Conservative and deterministic; used to certify truncated geodesic sums.
double geometric_tail_bound(const KernelPair& kernel, double growth_rate,
                            double prefactor, double radius);

/// Smallest R >= 1 on the half-integer grid with
/// geometric_tail_bound(kernel, growth_rate, prefactor, R) < eps.
double geometric_truncation_radius(const KernelPair& kernel, double growth_rate,
                                   double prefactor, double eps);

/// Upper bound on sum_{lambda_m > lambda_max} h(lambda_m) over the full dual
/// lattice of the torus with the given periods, by splitting h = h^{1/2}
/// h^{1/2} and bounding each axis factor with a geometric series.
double spectral_tail_bound(const KernelPair& kernel,
                           const std::vector<double>& periods,
                           double lambda_max);

/// Smallest lambda_max on the unit grid such that
///   (n^2 / V) * spectral_tail_bound(kernel, periods, lambda_max) < eps.
/// May return 0 when eps exceeds the whole bound (empty basis is valid).
double spectral_truncation(const KernelPair& kernel,
                           const std::vector<double>& periods, int n_points,
                           double eps);

}  // namespace repel
