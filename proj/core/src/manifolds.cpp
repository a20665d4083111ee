#include "repel/manifolds.hpp"

#include <algorithm>
#include <cmath>

namespace repel {

double dot(const Vec& u, const Vec& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
  return s;
}

double euclidean_norm(const Vec& u) { return std::sqrt(dot(u, u)); }

Torus::Torus(std::vector<double> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw std::domain_error("Torus: at least one period required");
  double diag2 = 0.0;
  for (double period : periods_) {
    if (!(period > 0.0) || !std::isfinite(period))
      throw std::domain_error("Torus: periods must be finite and > 0");
    volume_ *= period;
    diag2 += period * period;
  }
  half_diagonal_ = 0.5 * std::sqrt(diag2);
}

void Torus::check_point(const Vec& p, const char* who) const {
  if (static_cast<int>(p.size()) != dim())
    throw std::domain_error(std::string(who) + ": point dimension mismatch");
  if (!is_reduced(p))
    throw std::domain_error(std::string(who) + ": point not reduced to [0, l)");
}

Vec Torus::reduce(const Vec& raw) const {
  if (static_cast<int>(raw.size()) != dim())
    throw std::domain_error("Torus::reduce: point dimension mismatch");
  Vec out(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!std::isfinite(raw[k])) throw std::domain_error("Torus::reduce: non-finite coordinate");
    double x = std::fmod(raw[k], periods_[k]);
    if (x < 0.0) x += periods_[k];
    if (x >= periods_[k]) x = 0.0;  // fmod can land exactly on the period
    out[k] = x;
  }
  return out;
}

bool Torus::is_reduced(const Vec& p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!(p[k] >= 0.0) || !(p[k] < periods_[k])) return false;
  return true;
}

double Torus::distance(const Vec& p, const Vec& q) const {
  check_point(p, "distance");
  check_point(q, "distance");
  double s = 0.0;
  for (int k = 0; k < dim(); ++k) {
    double delta = std::fabs(q[k] - p[k]);
    delta = std::min(delta, periods_[k] - delta);
    s += delta * delta;
  }
  return std::sqrt(s);
}

Vec Torus::retract(const Vec& p, const Vec& v) const {
  check_point(p, "retract");
  if (v.size() != p.size()) throw std::domain_error("Torus::retract: tangent dimension mismatch");
  Vec raw(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!std::isfinite(v[k])) throw std::domain_error("Torus::retract: non-finite tangent");
    raw[k] = p[k] + v[k];
  }
  return reduce(raw);
}

std::vector<GeodesicSegment> Torus::geodesics_between(const Vec& p, const Vec& q,
                                                      double cutoff) const {
  std::vector<GeodesicSegment> out;
  scan_images(p, q, cutoff, [&](const Vec& u, double len) {
    if (len < 1e-15) return;  // zero-length class (p == q) is omitted
    GeodesicSegment seg;
    seg.length = len;
    seg.direction.resize(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) seg.direction[k] = -u[k] / len;
    out.push_back(std::move(seg));
  });
  std::sort(out.begin(), out.end(), [](const GeodesicSegment& a, const GeodesicSegment& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.direction < b.direction;
  });
  return out;
}

}  // namespace repel
