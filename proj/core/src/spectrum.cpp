#include "repel/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "repel/summation.hpp"

namespace repel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mode_eigenvalue(const Torus& torus, const std::vector<int>& index) {
  double s = 0.0;
  for (int k = 0; k < torus.dim(); ++k) {
    const double f = static_cast<double>(index[k]) / torus.periods()[k];
    s += f * f;
  }
  return kTwoPi * kTwoPi * s;
}

}  // namespace

SpectralBasis build_basis(const Torus& torus, const KernelPair& kernel, double lambda_max) {
  if (!(lambda_max >= 0.0)) throw std::domain_error("build_basis: lambda_max must be >= 0");
  kernel.validate();
  SpectralBasis basis{torus, kernel, lambda_max, {}, 0.0, 0.0};

  const int d = torus.dim();
  std::vector<int> bound(d), index(d);
  for (int k = 0; k < d; ++k)
    bound[k] = static_cast<int>(std::floor(std::sqrt(lambda_max) * torus.periods()[k] / kTwoPi));
  for (int k = 0; k < d; ++k) index[k] = -bound[k];
  if (lambda_max > 0.0) {
    while (true) {
      bool zero = std::all_of(index.begin(), index.end(), [](int m) { return m == 0; });
      if (!zero) {
        const double lambda = mode_eigenvalue(torus, index);
        if (lambda <= lambda_max)
          basis.modes.push_back(SpectralMode{index, lambda, h_eval(kernel, lambda)});
      }
      int k = d - 1;
      while (k >= 0 && index[k] == bound[k]) {
        index[k] = -bound[k];
        --k;
      }
      if (k < 0) break;
      ++index[k];
    }
  }
  std::sort(basis.modes.begin(), basis.modes.end(),
            [](const SpectralMode& a, const SpectralMode& b) {
              if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
              return a.index < b.index;
            });
  std::vector<double> weights;
  weights.reserve(basis.modes.size());
  for (const SpectralMode& mode : basis.modes) weights.push_back(mode.weight);
  basis.sum_weights = sorted_sum(weights);
  basis.sum_weights_tail_bound = spectral_tail_bound(kernel, torus.periods(), lambda_max);
  return basis;
}

std::complex<double> eigenfunction(const Torus& torus, const std::vector<int>& index,
                                   const Vec& x) {
  if (static_cast<int>(index.size()) != torus.dim())
    throw std::domain_error("eigenfunction: index dimension mismatch");
  if (static_cast<int>(x.size()) != torus.dim())
    throw std::domain_error("eigenfunction: point dimension mismatch");
  double phase = 0.0;
  for (int k = 0; k < torus.dim(); ++k)
    phase += static_cast<double>(index[k]) * x[k] / torus.periods()[k];
  return std::polar(1.0 / std::sqrt(torus.volume()), kTwoPi * phase);
}

std::vector<int> canonical_point_order(const Configuration& config) {
  std::vector<int> order(config.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return config.points[a] < config.points[b]; });
  return order;
}

PhaseTable::PhaseTable(const SpectralBasis& basis, const Configuration& config)
    : n_points_(static_cast<int>(config.points.size())),
      dim_(basis.torus.dim()),
      inv_sqrt_volume_(1.0 / std::sqrt(basis.torus.volume())),
      order_(canonical_point_order(config)) {
  max_index_.assign(dim_, 0);
  for (const SpectralMode& mode : basis.modes)
    for (int k = 0; k < dim_; ++k)
      max_index_[k] = std::max(max_index_[k], std::abs(mode.index[k]));
  offsets_.assign(dim_ + 1, 0);
  for (int k = 0; k < dim_; ++k) offsets_[k + 1] = offsets_[k] + 2 * max_index_[k] + 1;
  const int stride = offsets_[dim_];
  table_.resize(static_cast<std::size_t>(n_points_) * stride);
  for (int i = 0; i < n_points_; ++i)
    for (int k = 0; k < dim_; ++k)
      for (int m = -max_index_[k]; m <= max_index_[k]; ++m)
        table_[static_cast<std::size_t>(i) * stride + offsets_[k] + (m + max_index_[k])] =
            std::polar(1.0, kTwoPi * m * config.points[i][k] / basis.torus.periods()[k]);
}

std::complex<double> PhaseTable::eigenfunction_at(int point, const std::vector<int>& index) const {
  const int stride = offsets_[dim_];
  std::complex<double> phi = table_[static_cast<std::size_t>(point) * stride + offsets_[0] +
                                    (index[0] + max_index_[0])];
  for (int k = 1; k < dim_; ++k)
    phi *= table_[static_cast<std::size_t>(point) * stride + offsets_[k] +
                  (index[k] + max_index_[k])];
  return phi * inv_sqrt_volume_;
}

std::complex<double> PhaseTable::amplitude(const std::vector<int>& index) const {
  // summed over the canonical (coordinate-sorted) point order: invariant
  // under permutations of the configuration, bit for bit
  KahanSum re, im;
  for (int i : order_) {
    const std::complex<double> phi = eigenfunction_at(i, index);
    re.add(phi.real());
    im.add(phi.imag());
  }
  return {re.value(), im.value()};
}

std::complex<double> weyl_amplitude(const SpectralBasis& basis, const SpectralMode& mode,
                                    const Configuration& config) {
  const std::vector<int> order = canonical_point_order(config);
  KahanSum re, im;
  for (int i : order) {
    const std::complex<double> phi = eigenfunction(basis.torus, mode.index, config.points[i]);
    re.add(phi.real());
    im.add(phi.imag());
  }
  return {re.value(), im.value()};
}

std::vector<std::complex<double>> weyl_amplitudes(const SpectralBasis& basis,
                                                  const Configuration& config) {
  const PhaseTable table(basis, config);
  std::vector<std::complex<double>> out;
  out.reserve(basis.modes.size());
  for (const SpectralMode& mode : basis.modes) out.push_back(table.amplitude(mode.index));
  return out;
}

}  // namespace repel
