#include "repel/bolza.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "repel/errors.hpp"

namespace repel {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 4> components(const GroupElement& g) {
  return {g.a.real(), g.a.imag(), g.b.real(), g.b.imag()};
}

/// Flip the overall sign so the first component larger than 1e-12 in
/// magnitude is positive. Group elements are only defined up to sign.
void sign_normalize(GroupElement& g) {
  for (double c : components(g)) {
    if (std::fabs(c) > 1e-12) {
      if (c < 0.0) {
        g.a = -g.a;
        g.b = -g.b;
        for (double& m : g.matrix) m = -m;
      }
      return;
    }
  }
}

void finish(GroupElement& g) {
  // Cayley conjugate of [[a, b], [conj b, conj a]] into SL(2, R).
  g.matrix = {g.a.real() + g.b.real(), g.a.imag() - g.b.imag(),
              -(g.a.imag() + g.b.imag()), g.a.real() - g.b.real()};
  const double cosh_d = 2.0 * std::norm(g.a) - 1.0;
  g.displacement = std::acosh(std::max(1.0, cosh_d));
  sign_normalize(g);
}

/// Dedup key on a 2e-9 grid over (Re a, Im a, Re b, Im b). Copies of the same
/// element agree to ~1e-12, so a copy can disagree on a rounded coordinate
/// only near a cell boundary; candidate_keys returns both cells there.
struct QuantKey {
  std::array<std::int64_t, 4> q;
  bool operator==(const QuantKey&) const = default;
};

struct QuantKeyHash {
  std::size_t operator()(const QuantKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

constexpr double kQuantStep = 2e-9;

void candidate_keys(const GroupElement& g, std::vector<QuantKey>& out) {
  const auto c = components(g);
  std::array<std::array<std::int64_t, 2>, 4> options{};
  std::array<int, 4> counts{};
  for (int i = 0; i < 4; ++i) {
    const double scaled = c[i] / kQuantStep;
    const double rounded = std::round(scaled);
    options[i][0] = static_cast<std::int64_t>(rounded);
    counts[i] = 1;
    if (std::fabs(scaled - rounded - 0.5) < 1e-2 || std::fabs(scaled - rounded + 0.5) < 1e-2) {
      options[i][1] = static_cast<std::int64_t>(scaled > rounded ? rounded + 1 : rounded - 1);
      counts[i] = 2;
    }
  }
  out.clear();
  for (int i0 = 0; i0 < counts[0]; ++i0)
    for (int i1 = 0; i1 < counts[1]; ++i1)
      for (int i2 = 0; i2 < counts[2]; ++i2)
        for (int i3 = 0; i3 < counts[3]; ++i3)
          out.push_back(QuantKey{{options[0][i0], options[1][i1], options[2][i2], options[3][i3]}});
}

bool is_identity(const GroupElement& g, double tol = 1e-9) {
  return std::fabs(g.a.real() - 1.0) < tol && std::fabs(g.a.imag()) < tol &&
         std::fabs(g.b.real()) < tol && std::fabs(g.b.imag()) < tol;
}

}  // namespace

GroupElement GroupElement::inverse() const {
  GroupElement inv;
  inv.a = std::conj(a);
  inv.b = -b;
  inv.word_length = word_length;
  finish(inv);
  return inv;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  GroupElement out;
  out.a = g.a * h.a + g.b * std::conj(h.b);
  out.b = g.a * h.b + g.b * std::conj(h.a);
  out.word_length = g.word_length + h.word_length;
  finish(out);
  return out;
}

double disk_distance(Complexd z, Complexd w) {
  const double num = std::abs(z - w);
  const double den = std::sqrt((1.0 - std::norm(z)) * (1.0 - std::norm(w)));
  return 2.0 * std::asinh(num / den);
}

double disk_distance_to_origin(Complexd z) { return 2.0 * std::atanh(std::abs(z)); }

Complexd disk_exp(Complexd p, Complexd v) {
  const double vnorm = std::abs(v);
  if (vnorm == 0.0) return p;
  // transport to the origin, walk the radial geodesic, transport back
  const double scale = 1.0 - std::norm(p);
  const Complexd v0 = v / scale;
  const double riemannian = 2.0 * std::abs(v0);
  const Complexd w0 = std::tanh(0.5 * riemannian) * (v0 / std::abs(v0));
  return (w0 + p) / (1.0 + std::conj(p) * w0);
}

Complexd disk_unit_tangent_toward(Complexd p, Complexd w) {
  const Complexd w0 = (w - p) / (1.0 - std::conj(p) * w);
  const double mag = std::abs(w0);
  if (mag == 0.0) throw std::domain_error("disk_unit_tangent_toward: coincident points");
  return 0.5 * (1.0 - std::norm(p)) * (w0 / mag);
}

struct BolzaSurface::ElementCache {
  std::mutex mutex;
  double radius = 0.0;
  std::shared_ptr<const std::vector<GroupElement>> elements =
      std::make_shared<const std::vector<GroupElement>>();
  std::size_t cap = 2'000'000;
};

BolzaSurface::BolzaSurface() : cache_(std::make_shared<ElementCache>()) {
  // side-pairing translation length 2 acosh(1+sqrt2); cosh of half = 1+sqrt2
  const double sqrt2 = std::sqrt(2.0);
  const double cosh_half = 1.0 + sqrt2;
  const double sinh_half = std::sqrt(2.0 + 2.0 * sqrt2);
  for (int k = 0; k < 4; ++k) {
    GroupElement g;
    g.a = {cosh_half, 0.0};
    g.b = std::polar(sinh_half, 0.25 * kPi * k);
    g.word_length = 1;
    finish(g);
    pairings_[k] = g;
  }
  for (int k = 0; k < 4; ++k) pairings_[4 + k] = pairings_[k].inverse();

  // g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3
  relation_ = {0, 5, 2, 7, 4, 1, 6, 3};

  systole_ = 2.0 * std::acosh(cosh_half);
  circumradius_ = std::acosh(cosh_half * cosh_half);
  const double vertex_abs = std::tanh(0.5 * circumradius_);
  for (int j = 0; j < 8; ++j)
    vertices_[j] = std::polar(vertex_abs, (2.0 * j + 1.0) * kPi / 8.0);
}

double BolzaSurface::volume() const { return 4.0 * kPi; }

double BolzaSurface::relation_residual() const {
  GroupElement w;
  for (int idx : relation_) w = compose(w, pairings_[idx]);
  double plus = 0.0, minus = 0.0;
  const std::array<double, 4> id{1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    plus = std::max(plus, std::fabs(w.matrix[i] - id[i]));
    minus = std::max(minus, std::fabs(w.matrix[i] + id[i]));
  }
  return std::min(plus, minus);
}

double BolzaSurface::area_by_angle_defect() const {
  double angle_sum = 0.0;
  for (int j = 0; j < 8; ++j) {
    const Complexd v = vertices_[j];
    const Complexd prev = vertices_[(j + 7) % 8];
    const Complexd next = vertices_[(j + 1) % 8];
    // the chart is conformal, so euclidean angles between tangents are metric angles
    const Complexd t1 = disk_unit_tangent_toward(v, prev);
    const Complexd t2 = disk_unit_tangent_toward(v, next);
    const double c = std::clamp((t1.real() * t2.real() + t1.imag() * t2.imag()) /
                                    (std::abs(t1) * std::abs(t2)),
                                -1.0, 1.0);
    angle_sum += std::acos(c);
  }
  return 6.0 * kPi - angle_sum;
}

double BolzaSurface::vertex_equidistance_error() const {
  double worst = 0.0;
  for (int j = 0; j < 8; ++j) {
    const Complexd v = vertices_[j];
    const double d0 = disk_distance(v, basepoint());
    const double d1 = disk_distance(v, pairings_[j].apply(basepoint()));
    const double d2 = disk_distance(v, pairings_[(j + 1) % 8].apply(basepoint()));
    worst = std::max({worst, std::fabs(d0 - d1), std::fabs(d0 - d2)});
  }
  return worst;
}

void BolzaSurface::check_point(Complexd z, const char* who) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error(std::string(who) + ": non-finite point");
  if (std::abs(z) >= 1.0)
    throw std::domain_error(std::string(who) + ": point outside the open unit disk");
  if (!in_domain(z, 1e-9))
    throw std::domain_error(std::string(who) + ": point not reduced to the fundamental domain");
}

bool BolzaSurface::in_domain(Complexd z, double tol) const {
  if (std::abs(z) >= 1.0) return false;
  const double d0 = disk_distance_to_origin(z);
  for (const GroupElement& g : pairings_)
    if (disk_distance_to_origin(g.apply(z)) < d0 - tol) return false;
  return true;
}

Complexd BolzaSurface::reduce(Complexd z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("BolzaSurface::reduce: non-finite point");
  if (std::abs(z) >= 1.0)
    throw std::domain_error("BolzaSurface::reduce: point outside the open unit disk");
  // greedy Dirichlet reduction; word length is bounded by
  // displacement / injectivity radius, so this terminates
  for (int iter = 0; iter < 1000; ++iter) {
    const double d0 = disk_distance_to_origin(z);
    Complexd best = z;
    double best_d = d0 - 1e-15;
    bool improved = false;
    for (const GroupElement& g : pairings_) {
      const Complexd w = g.apply(z);
      const double dw = disk_distance_to_origin(w);
      if (dw < best_d) {
        best_d = dw;
        best = w;
        improved = true;
      }
    }
    if (!improved) return z;
    z = best;
  }
  return z;  // within 1e-15 of the domain; good enough for all callers
}

double BolzaSurface::distance(Complexd z, Complexd w) const {
  check_point(z, "distance");
  check_point(w, "distance");
  double best = disk_distance(z, w);
  const double slack = disk_distance_to_origin(z) + disk_distance_to_origin(w);
  auto elements = elements_snapshot(best + slack);
  for (const GroupElement& g : *elements) {
    if (g.displacement - slack > best) break;  // sorted by displacement
    best = std::min(best, disk_distance(z, g.apply(w)));
  }
  return best;
}

Complexd BolzaSurface::retract(Complexd p, Complexd v) const {
  check_point(p, "retract");
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::domain_error("BolzaSurface::retract: non-finite tangent");
  return reduce(disk_exp(p, v));
}

std::vector<GeodesicSegment> BolzaSurface::geodesics_between(Complexd p, Complexd q,
                                                             double cutoff) const {
  std::vector<GeodesicSegment> out;
  scan_images(p, q, cutoff, [&](double len, Complexd dir) {
    if (len < 1e-15) return;  // zero-length class (p == q) is omitted
    out.push_back(GeodesicSegment{len, Vec{dir.real(), dir.imag()}});
  });
  std::sort(out.begin(), out.end(), [](const GeodesicSegment& a, const GeodesicSegment& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.direction < b.direction;
  });
  return out;
}

std::size_t BolzaSurface::element_cap() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->cap;
}

void BolzaSurface::set_element_cap(std::size_t cap) {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->cap = cap;
}

std::shared_ptr<const std::vector<GroupElement>> BolzaSurface::elements_up_to(
    double cutoff) const {
  auto snapshot = elements_snapshot(cutoff);
  auto kept = std::make_shared<std::vector<GroupElement>>();
  for (const GroupElement& g : *snapshot) {
    if (g.displacement > cutoff + 1e-9) break;
    kept->push_back(g);
  }
  return kept;
}

std::shared_ptr<const std::vector<GroupElement>> BolzaSurface::elements_snapshot(
    double min_radius) const {
  const double cutoff = min_radius;
  if (!(cutoff >= 0.0) || !std::isfinite(cutoff))
    throw std::domain_error("elements_snapshot: cutoff must be finite and >= 0");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cutoff <= cache_->radius) return cache_->elements;

  const double target = cutoff + 1.5;  // hysteresis against incremental regrowth
  // breadth-first word expansion; children of g have displacement >=
  // displacement(g) - max generator displacement, so expanding while
  // displacement <= target + systole reaches every element below target
  // (validated by the cutoff-consistency tests)
  const double expand_limit = target + systole_;
  const std::size_t cap = cache_->cap;

  std::unordered_map<QuantKey, int, QuantKeyHash> seen;
  std::vector<GroupElement> all;
  std::vector<QuantKey> keys;
  GroupElement identity;
  finish(identity);
  identity.word_length = 0;
  all.push_back(identity);
  candidate_keys(identity, keys);
  seen.emplace(keys.front(), 0);

  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int idx : frontier) {
      for (const GroupElement& s : pairings_) {
        GroupElement child = compose(all[idx], s);
        child.word_length = all[idx].word_length + 1;
        if (child.displacement > expand_limit) continue;
        candidate_keys(child, keys);
        bool known = false;
        for (const QuantKey& key : keys)
          if (seen.count(key)) {
            known = true;
            break;
          }
        if (known) continue;
        const int new_idx = static_cast<int>(all.size());
        if (all.size() >= cap)
          throw ResourceLimitError(
              "BolzaSurface::elements_up_to: element count would exceed the configured cap of " +
                  std::to_string(cap) + " elements",
              cap);
        all.push_back(child);
        seen.emplace(keys.front(), new_idx);
        next.push_back(new_idx);
      }
    }
    frontier = std::move(next);
  }

  std::vector<GroupElement> kept;
  kept.reserve(all.size());
  for (const GroupElement& g : all)
    if (!is_identity(g) && g.displacement <= target + 1e-9) kept.push_back(g);
  std::sort(kept.begin(), kept.end(), [](const GroupElement& x, const GroupElement& y) {
    if (x.displacement != y.displacement) return x.displacement < y.displacement;
    return x.matrix < y.matrix;
  });

  cache_->radius = target;
  cache_->elements = std::make_shared<const std::vector<GroupElement>>(std::move(kept));
  return cache_->elements;
}

}  // namespace repel
