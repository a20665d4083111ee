#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "repel/manifolds.hpp"

namespace repel {

using Complexd = std::complex<double>;

/// One orientation-preserving isometry of the hyperbolic plane. The disk
/// action is the SU(1,1) Moebius map z -> (a z + b)/(conj(b) z + conj(a)) with
/// |a|^2 - |b|^2 = 1; `matrix` is the Cayley-conjugated SL(2,R) form in the
/// fixed sign normal form (first nonzero of (Re a, Im a, Re b, Im b) > 0).
struct GroupElement {
  Complexd a{1.0, 0.0};
  Complexd b{0.0, 0.0};
  std::array<double, 4> matrix{1.0, 0.0, 0.0, 1.0};  // row-major, det 1
  int word_length = 0;
  double displacement = 0.0;  // d(0, g 0) = acosh(2|a|^2 - 1)

  Complexd apply(Complexd z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
  double trace() const { return 2.0 * a.real(); }
  GroupElement inverse() const;
};

GroupElement compose(const GroupElement& g, const GroupElement& h);

// Poincare disk primitives, curvature -1, metric 4|dz|^2/(1-|z|^2)^2.
double disk_distance(Complexd z, Complexd w);
double disk_distance_to_origin(Complexd z);
/// Exact exponential map at p applied to the chart tangent v.
Complexd disk_exp(Complexd p, Complexd v);
/// Chart tangent at p of Riemannian norm 1 pointing along the geodesic to w.
Complexd disk_unit_tangent_toward(Complexd p, Complexd w);

/// The genus-2 surface of the regular hyperbolic octagon with pi/4 vertex
/// angles. The four side-pairing translations g_0..g_3 run through the side
/// midpoints at angles k pi/4; they satisfy the single relation
///   g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = 1.
/// The Dirichlet domain at the origin is the octagon itself.
class BolzaSurface {
 public:
  BolzaSurface();

  int dim() const { return 2; }
  double volume() const;  // 4 pi, Gauss-Bonnet at curvature -1
  double systole() const { return systole_; }
  double injectivity_radius_lower_bound() const { return 0.5 * systole_; }
  double circumradius() const { return circumradius_; }
  Complexd basepoint() const { return {0.0, 0.0}; }

  /// g_0..g_3 followed by their inverses; entry j moves the origin to the
  /// orbit neighbor in direction j pi/4.
  const std::array<GroupElement, 8>& side_pairings() const { return pairings_; }
  /// Indices into side_pairings whose product is the identity.
  const std::vector<int>& relation_word() const { return relation_; }
  /// Max-norm distance of the evaluated relation word from +-identity.
  double relation_residual() const;
  /// Octagon area recomputed from the constructed vertices via the angle
  /// defect 6 pi - sum of interior angles.
  double area_by_angle_defect() const;
  /// Largest deviation of an octagon vertex from being equidistant to the
  /// origin and its two adjacent orbit neighbors.
  double vertex_equidistance_error() const;

  bool in_domain(Complexd z, double tol = 1e-12) const;
  Complexd reduce(Complexd z) const;
  double distance(Complexd z, Complexd w) const;  // quotient distance
  Complexd retract(Complexd p, Complexd v) const;

  std::vector<GeodesicSegment> geodesics_between(Complexd p, Complexd q,
                                                 double cutoff) const;

  /// All nontrivial group elements with displacement <= cutoff, exactly once,
  /// sorted by (displacement, matrix entries).
  std::shared_ptr<const std::vector<GroupElement>> elements_up_to(double cutoff) const;

  /// Sorted element list covering at least the given radius; may extend
  /// beyond it. Grown lazily and shared between copies; hot paths iterate it
  /// and stop at their own displacement bound.
  std::shared_ptr<const std::vector<GroupElement>> elements_snapshot(double min_radius) const;

  std::size_t element_cap() const;
  void set_element_cap(std::size_t cap);

  /// Visits every geodesic class from p to q of length <= cutoff as
  /// fn(length, away_direction). Includes the zero-length identity class when
  /// p == q (with a zero direction); callers decide how to treat it.
  template <class Fn>
  void scan_images(Complexd p, Complexd q, double cutoff, Fn&& fn) const {
    check_point(p, "scan_images");
    check_point(q, "scan_images");
    if (!(cutoff > 0.0)) throw std::domain_error("scan_images: cutoff must be > 0");
    const double slack = disk_distance_to_origin(p) + disk_distance_to_origin(q);
    auto elements = elements_snapshot(cutoff + slack);
    // identity image first, then elements in canonical order
    visit_image(p, q, cutoff, fn);
    for (const GroupElement& g : *elements) {
      if (g.displacement > cutoff + slack) break;
      visit_image(p, g.apply(q), cutoff, fn);
    }
  }

 private:
  std::array<GroupElement, 8> pairings_;
  std::vector<int> relation_;
  double systole_ = 0.0;
  double circumradius_ = 0.0;
  std::array<Complexd, 8> vertices_;

  struct ElementCache;
  std::shared_ptr<ElementCache> cache_;

  void check_point(Complexd z, const char* who) const;

  template <class Fn>
  static void visit_image(Complexd p, Complexd target, double cutoff, Fn&& fn) {
    const double len = disk_distance(p, target);
    if (len > cutoff) return;
    if (len < 1e-15) {
      fn(len, Complexd{0.0, 0.0});  // direction undefined at zero length
      return;
    }
    fn(len, -disk_unit_tangent_toward(p, target));
  }
};

}  // namespace repel
