#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace repel {

/// Chart coordinates / chart tangent vectors. Tori use d reals in [0, l_k);
/// the hyperbolic disk uses (Re z, Im z).
using Vec = std::vector<double>;

double dot(const Vec& u, const Vec& v);
double euclidean_norm(const Vec& u);

/// One geodesic class between two points: its length and the unit tangent at
/// the source, oriented away from the target (the repelling direction).
/// Zero-length segments are never produced by the public enumeration.
struct GeodesicSegment {
  double length = 0.0;
  Vec direction;  // unit with respect to the metric at the source point
};

/// An ordered list of points on one manifold, all reduced to the canonical
/// domain. Coincident points are legal for the evaluators.
struct Configuration {
  std::vector<Vec> points;
  int size() const { return static_cast<int>(points.size()); }
};

/// Flat torus R^d / (l_1 Z x ... x l_d Z) with the canonical chart [0, l_k).
class Torus {
 public:
  explicit Torus(std::vector<double> periods);

  int dim() const { return static_cast<int>(periods_.size()); }
  double volume() const { return volume_; }
  const std::vector<double>& periods() const { return periods_; }
  /// Half the diagonal of the fundamental cell; tail bounds thicken by this.
  double half_diagonal() const { return half_diagonal_; }

  Vec reduce(const Vec& raw) const;
  bool is_reduced(const Vec& p) const;
  double distance(const Vec& p, const Vec& q) const;
  Vec retract(const Vec& p, const Vec& v) const;

  /// Every geodesic class from p to q of length <= cutoff, exactly once,
  /// sorted by (length, direction). The zero-length class is omitted.
  std::vector<GeodesicSegment> geodesics_between(const Vec& p, const Vec& q,
                                                 double cutoff) const;

  /// Visits every lattice image displacement u = q - p + m*l with |u| <=
  /// cutoff as fn(u, length), in lexicographic order of m. The zero-length
  /// image is included when p == q; callers decide how to treat it.
  template <class Fn>
  void scan_images(const Vec& p, const Vec& q, double cutoff, Fn&& fn) const {
    check_point(p, "scan_images");
    check_point(q, "scan_images");
    if (!(cutoff > 0.0)) throw std::domain_error("scan_images: cutoff must be > 0");
    const int d = dim();
    Vec delta(d);
    for (int k = 0; k < d; ++k) delta[k] = q[k] - p[k];
    std::vector<long> lo(d), hi(d), m(d);
    for (int k = 0; k < d; ++k) {
      lo[k] = static_cast<long>(std::ceil((-cutoff - delta[k]) / periods_[k]));
      hi[k] = static_cast<long>(std::floor((cutoff - delta[k]) / periods_[k]));
      m[k] = lo[k];
    }
    for (int k = 0; k < d; ++k)
      if (lo[k] > hi[k]) return;
    Vec u(d);
    while (true) {
      double len2 = 0.0;
      for (int k = 0; k < d; ++k) {
        u[k] = delta[k] + static_cast<double>(m[k]) * periods_[k];
        len2 += u[k] * u[k];
      }
      const double len = std::sqrt(len2);
      if (len <= cutoff) fn(u, len);
      int k = d - 1;
      while (k >= 0 && m[k] == hi[k]) {
        m[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++m[k];
    }
  }

 private:
  std::vector<double> periods_;
  double volume_ = 1.0;
  double half_diagonal_ = 0.0;

  void check_point(const Vec& p, const char* who) const;
};

}  // namespace repel
