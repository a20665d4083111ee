#pragma once

#include <complex>
#include <vector>

#include "repel/kernels.hpp"
#include "repel/manifolds.hpp"

namespace repel {

/// One torus eigenfunction phi_m(x) = V^{-1/2} exp(2 pi i sum_k m_k x_k/l_k),
/// m != 0, with eigenvalue lambda = 4 pi^2 sum_k (m_k/l_k)^2 and spectral
/// weight h(lambda). Conjugate pairs +-m are both stored, so Weyl amplitudes
/// come in conjugate pairs and every quadratic form below is real.
struct SpectralMode {
  std::vector<int> index;
  double eigenvalue = 0.0;
  double weight = 0.0;
};

/// Explicit eigendata below a cutoff, ordered by (eigenvalue, index). The
/// constant mode is excluded and handled analytically where needed. Finite
/// linear combinations of these modes are sup-norm dense in the continuous
/// functions on the torus (Stone-Weierstrass), which is what makes Weyl-sum
/// control equivalent to equidistribution.
struct SpectralBasis {
  Torus torus;
  KernelPair kernel;
  double lambda_max = 0.0;
  std::vector<SpectralMode> modes;
  double sum_weights = 0.0;            // sum of stored weights, compensated
  double sum_weights_tail_bound = 0.0; // certified bound on the omitted sum of h
};

SpectralBasis build_basis(const Torus& torus, const KernelPair& kernel, double lambda_max);

std::complex<double> eigenfunction(const Torus& torus, const std::vector<int>& index,
                                   const Vec& x);

/// Weyl amplitude S_m = sum_i phi_m(x_i), summed over the canonical
/// (coordinate-sorted) point order so the result is invariant under
/// permutations of the configuration.
std::complex<double> weyl_amplitude(const SpectralBasis& basis, const SpectralMode& mode,
                                    const Configuration& config);

/// All amplitudes in basis order, evaluated through a per-point phase table.
std::vector<std::complex<double>> weyl_amplitudes(const SpectralBasis& basis,
                                                  const Configuration& config);

/// Sorts point indices by coordinates; the shared canonical summation order.
std::vector<int> canonical_point_order(const Configuration& config);

/// Per-point tables of the axis phases e^{2 pi i m x_k / l_k}; turns each
/// eigenfunction evaluation into a product of lookups. Built once per
/// (basis, configuration) evaluation pass.
class PhaseTable {
 public:
  PhaseTable(const SpectralBasis& basis, const Configuration& config);
  std::complex<double> eigenfunction_at(int point, const std::vector<int>& index) const;
  std::complex<double> amplitude(const std::vector<int>& index) const;
  const std::vector<int>& order() const { return order_; }

 private:
  int n_points_;
  int dim_;
  double inv_sqrt_volume_;
  std::vector<int> order_;
  std::vector<int> max_index_;
  std::vector<int> offsets_;
  std::vector<std::complex<double>> table_;
};

}  // namespace repel
