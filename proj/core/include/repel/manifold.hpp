#pragma once

#include <variant>

#include "repel/bolza.hpp"
#include "repel/manifolds.hpp"

namespace repel {

/// Geometry backend: either a flat torus or the genus-2 Bolza surface.
using Manifold = std::variant<Torus, BolzaSurface>;

int dim(const Manifold& m);
double volume(const Manifold& m);
Vec reduce_to_domain(const Manifold& m, const Vec& raw);
bool is_reduced(const Manifold& m, const Vec& p);
double distance(const Manifold& m, const Vec& p, const Vec& q);
Vec retract(const Manifold& m, const Vec& p, const Vec& v);
std::vector<GeodesicSegment> geodesics_between(const Manifold& m, const Vec& p,
                                               const Vec& q, double cutoff);

/// Riemannian inner product of chart tangents u, v at the point `at`.
double metric_dot(const Manifold& m, const Vec& at, const Vec& u, const Vec& v);
double metric_norm(const Manifold& m, const Vec& at, const Vec& u);

bool is_torus(const Manifold& m);
/// Throws UnsupportedModelError when the model is not a torus.
const Torus& require_torus(const Manifold& m, const char* who);
const BolzaSurface& require_bolza(const Manifold& m, const char* who);

Complexd to_complex(const Vec& p);
Vec to_vec(Complexd z);

void check_configuration(const Manifold& m, const Configuration& config, const char* who);

}  // namespace repel
