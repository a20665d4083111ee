#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "repel/spectrum.hpp"

using namespace repel;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 rng(23);
double uniform01() { return (rng() >> 11) * 0x1.0p-53; }

Configuration random_config(const Torus& torus, int n) {
  Configuration config;
  for (int i = 0; i < n; ++i) {
    Vec p(torus.dim());
    for (int k = 0; k < torus.dim(); ++k) p[k] = uniform01() * torus.periods()[k];
    config.points.push_back(torus.reduce(p));
  }
  return config;
}

}  // namespace

TEST_CASE("basis enumeration matches hand counts") {
  const KernelPair kernel(0.05, 1);
  const Torus circle({1.0});
  // lambda(1) = 4 pi^2 ~ 39.48 <= 50; lambda(2) ~ 157.9 > 50
  const SpectralBasis basis = build_basis(circle, kernel, 50.0);
  REQUIRE(basis.modes.size() == 2);
  CHECK(basis.modes[0].index == std::vector<int>{-1});
  CHECK(basis.modes[1].index == std::vector<int>{1});
  CHECK(basis.modes[0].eigenvalue == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-15));

  CHECK(build_basis(circle, kernel, 0.0).modes.empty());

  const KernelPair kernel2(0.05, 2);
  const SpectralBasis basis2 = build_basis(Torus({1.0, 1.0}), kernel2, 40.0);
  REQUIRE(basis2.modes.size() == 4);  // (+-1, 0) and (0, +-1)
  for (const SpectralMode& mode : basis2.modes)
    CHECK(mode.eigenvalue == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-15));

  // deterministic order: (eigenvalue, lexicographic index)
  CHECK(basis2.modes[0].index == std::vector<int>{-1, 0});
  CHECK(basis2.modes[1].index == std::vector<int>{0, -1});
  CHECK(basis2.modes[2].index == std::vector<int>{0, 1});
  CHECK(basis2.modes[3].index == std::vector<int>{1, 0});

  // weights positive and summed
  CHECK(basis2.sum_weights == doctest::Approx(4.0 * std::exp(-4.0 * kPi * kPi * 0.05)));
  CHECK(basis2.sum_weights_tail_bound > 0.0);
}

TEST_CASE("weyl amplitudes") {
  const KernelPair kernel(0.05, 1);
  const Torus circle({1.0});
  const SpectralBasis basis = build_basis(circle, kernel, 50.0);
  const SpectralMode& mode_plus = basis.modes[1];

  // antipodal pair cancels: e^0 + e^{i pi} = 0
  Configuration antipodal;
  antipodal.points = {{0.0}, {0.5}};
  CHECK(std::abs(weyl_amplitude(basis, mode_plus, antipodal)) < 1e-15);

  // one point: |S| = V^{-1/2}
  Configuration single;
  single.points = {{0.37}};
  CHECK(std::abs(weyl_amplitude(basis, mode_plus, single)) == doctest::Approx(1.0).epsilon(1e-14));

  // four equally spaced points: roots-of-unity sums
  const SpectralBasis wide = build_basis(circle, kernel, 4.0 * kPi * kPi * 16.5);
  Configuration four;
  four.points = {{0.0}, {0.25}, {0.5}, {0.75}};
  for (const SpectralMode& mode : wide.modes) {
    const int m = mode.index[0];
    const double amp = std::abs(weyl_amplitude(basis, mode, four));
    if (m % 4 == 0)
      CHECK(amp == doctest::Approx(4.0).epsilon(1e-13));
    else
      CHECK(amp < 1e-13);
  }
}

TEST_CASE("orthonormality and mean zero by quadrature") {
  const KernelPair kernel(0.05, 2);
  const Torus torus({1.0, 2.0});
  const SpectralBasis basis = build_basis(torus, kernel, 45.0);
  REQUIRE(basis.modes.size() >= 5);

  // trapezoid rule on a uniform product grid is exact for trig polynomials
  const int grid = 32;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) {
      std::complex<double> inner = 0.0;
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
          const Vec x{(i + 0.5) / grid * 1.0, (j + 0.5) / grid * 2.0};
          inner += eigenfunction(torus, basis.modes[a].index, x) *
                   std::conj(eigenfunction(torus, basis.modes[b].index, x));
        }
      inner *= torus.volume() / static_cast<double>(grid * grid);
      const double expect = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(inner - expect) < 1e-10);
    }
    // mean zero
    std::complex<double> mean = 0.0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const Vec x{(i + 0.5) / grid * 1.0, (j + 0.5) / grid * 2.0};
        mean += eigenfunction(torus, basis.modes[a].index, x);
      }
    mean *= torus.volume() / static_cast<double>(grid * grid);
    CHECK(std::abs(mean) < 1e-12);
  }
}

TEST_CASE("plancherel sum is position independent") {
  const KernelPair kernel(0.05, 2);
  const Torus torus({1.0, 1.0});
  const SpectralBasis basis = build_basis(torus, kernel, 250.0);
  const double expect = basis.sum_weights / torus.volume();
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x{uniform01(), uniform01()};
    double sum = 0.0;
    for (const SpectralMode& mode : basis.modes)
      sum += mode.weight * std::norm(eigenfunction(torus, mode.index, x));
    CHECK(sum == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("conjugate symmetry and translation covariance") {
  const KernelPair kernel(0.05, 2);
  const Torus torus({1.0, 1.0});
  const SpectralBasis basis = build_basis(torus, kernel, 200.0);
  const Configuration config = random_config(torus, 6);

  for (const SpectralMode& mode : basis.modes) {
    std::vector<int> negated{-mode.index[0], -mode.index[1]};
    const SpectralMode* partner = nullptr;
    for (const SpectralMode& other : basis.modes)
      if (other.index == negated) partner = &other;
    REQUIRE(partner != nullptr);
    const auto s = weyl_amplitude(basis, mode, config);
    const auto s_neg = weyl_amplitude(basis, *partner, config);
    CHECK(std::abs(s_neg - std::conj(s)) < 1e-14 * config.size());
  }

  // translating every point preserves |S_m|
  const Vec shift{uniform01(), uniform01()};
  Configuration shifted = config;
  for (Vec& p : shifted.points) p = torus.reduce({p[0] + shift[0], p[1] + shift[1]});
  for (const SpectralMode& mode : basis.modes)
    CHECK(std::abs(weyl_amplitude(basis, mode, shifted)) ==
          doctest::Approx(std::abs(weyl_amplitude(basis, mode, config))).epsilon(1e-12));
}
