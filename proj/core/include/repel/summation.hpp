#pragma once

#include <algorithm>
#include <complex>
#include <vector>

namespace repel {

/// Kahan compensated accumulator. Bit-reproducible for a fixed insertion order.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

/// Compensated sum in the canonical (value-sorted) order. Sorting makes the
/// result invariant under any permutation of the inputs, bit for bit.
inline double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  KahanSum s;
  for (double x : terms) s.add(x);
  return s.value();
}

inline std::complex<double> sorted_sum(std::vector<std::complex<double>>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& u, const auto& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  KahanSum re, im;
  for (const auto& x : terms) {
    re.add(x.real());
    im.add(x.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace repel
