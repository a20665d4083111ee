#include "repel/manifold.hpp"

#include <cmath>
#include <string>

#include "repel/errors.hpp"

namespace repel {

namespace {

double disk_conformal_factor(const Vec& at) {
  const double r2 = at[0] * at[0] + at[1] * at[1];
  const double s = 1.0 - r2;
  return 4.0 / (s * s);
}

}  // namespace

int dim(const Manifold& m) {
  return std::visit([](const auto& model) { return model.dim(); }, m);
}

double volume(const Manifold& m) {
  return std::visit([](const auto& model) { return model.volume(); }, m);
}

Vec reduce_to_domain(const Manifold& m, const Vec& raw) {
  if (const auto* torus = std::get_if<Torus>(&m)) return torus->reduce(raw);
  const auto& surface = std::get<BolzaSurface>(m);
  if (raw.size() != 2) throw std::domain_error("reduce_to_domain: disk points have 2 coordinates");
  return to_vec(surface.reduce(to_complex(raw)));
}

bool is_reduced(const Manifold& m, const Vec& p) {
  if (const auto* torus = std::get_if<Torus>(&m)) return torus->is_reduced(p);
  const auto& surface = std::get<BolzaSurface>(m);
  if (p.size() != 2) return false;
  const Complexd z = to_complex(p);
  return std::abs(z) < 1.0 && surface.in_domain(z, 1e-9);
}

double distance(const Manifold& m, const Vec& p, const Vec& q) {
  if (const auto* torus = std::get_if<Torus>(&m)) return torus->distance(p, q);
  const auto& surface = std::get<BolzaSurface>(m);
  return surface.distance(to_complex(p), to_complex(q));
}

Vec retract(const Manifold& m, const Vec& p, const Vec& v) {
  if (const auto* torus = std::get_if<Torus>(&m)) return torus->retract(p, v);
  const auto& surface = std::get<BolzaSurface>(m);
  if (v.size() != 2) throw std::domain_error("retract: disk tangents have 2 coordinates");
  return to_vec(surface.retract(to_complex(p), to_complex(v)));
}

std::vector<GeodesicSegment> geodesics_between(const Manifold& m, const Vec& p,
                                               const Vec& q, double cutoff) {
  if (const auto* torus = std::get_if<Torus>(&m)) return torus->geodesics_between(p, q, cutoff);
  const auto& surface = std::get<BolzaSurface>(m);
  return surface.geodesics_between(to_complex(p), to_complex(q), cutoff);
}

double metric_dot(const Manifold& m, const Vec& at, const Vec& u, const Vec& v) {
  if (std::holds_alternative<Torus>(m)) return dot(u, v);
  return disk_conformal_factor(at) * dot(u, v);
}

double metric_norm(const Manifold& m, const Vec& at, const Vec& u) {
  return std::sqrt(metric_dot(m, at, u, u));
}

bool is_torus(const Manifold& m) { return std::holds_alternative<Torus>(m); }

const Torus& require_torus(const Manifold& m, const char* who) {
  if (const auto* torus = std::get_if<Torus>(&m)) return *torus;
  throw UnsupportedModelError(std::string(who) +
                              ": spectral data is only available on flat tori");
}

const BolzaSurface& require_bolza(const Manifold& m, const char* who) {
  if (const auto* surface = std::get_if<BolzaSurface>(&m)) return *surface;
  throw UnsupportedModelError(std::string(who) + ": requires the bolza surface");
}

Complexd to_complex(const Vec& p) {
  if (p.size() != 2) throw std::domain_error("to_complex: expected 2 coordinates");
  return {p[0], p[1]};
}

Vec to_vec(Complexd z) { return {z.real(), z.imag()}; }

void check_configuration(const Manifold& m, const Configuration& config, const char* who) {
  if (config.size() < 1)
    throw std::domain_error(std::string(who) + ": configuration needs at least one point");
  for (const Vec& p : config.points)
    if (!is_reduced(m, p))
      throw std::domain_error(std::string(who) + ": configuration point not reduced");
}

}  // namespace repel
