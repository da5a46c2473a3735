#include "tropdeg/measure.hpp"

#include <cmath>
#include <limits>

namespace tropdeg {

double DiscreteMeasure::total_variation() const {
  double s = 0;
  for (const auto& a : atoms_) s += std::abs(a.mass);
  return s;
}

double DiscreteMeasure::total_mass() const {
  double s = 0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

double DiscreteMeasure::integrate(const std::function<double(const SphereAtom&)>& g) const {
  double s = 0;
  for (const auto& a : atoms_) s += g(a.at) * a.mass;
  return s;
}

DiscreteMeasure measure(const EuclideanWeight& z) {
  if (z.dim() != 1) throw std::invalid_argument("measure: weight must be one-dimensional");
  const auto& cx = *z.complex();
  std::vector<Atom> atoms;
  const auto& rays = cx.cones(1);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (z[i] == 0) continue;
    atoms.push_back({sphere_atom(cx, rays[i][0]), z[i]});
  }
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure mixed_ma_measure(std::span<const PLFunction> fs, const BalancedSpace& space) {
  const std::size_t n = space.complex()->dim();
  if (fs.size() + 1 != n)
    throw std::invalid_argument("mixed measure needs " + std::to_string(n - 1) + " functions");
  EuclideanWeight z = space.normalized();
  for (std::size_t i = fs.size(); i-- > 0;) {
    if (fs[i].complex() != space.complex()) throw std::invalid_argument("function is not on the balanced space");
    z = euclidean_product(fs[i], z);
  }
  return measure(z);
}

DiscreteMeasure ma_measure(const PLFunction& f, const BalancedSpace& space) {
  const std::size_t n = space.complex()->dim();
  std::vector<PLFunction> fs(n - 1, f);
  return mixed_ma_measure(fs, space);
}

double pairing(const PLFunction& f, const DiscreteMeasure& mu) {
  // Same per-atom arithmetic as the Euclidean product at the apex.
  const auto& cx = *f.complex();
  double s = 0;
  for (const auto& a : mu.atoms()) {
    const double value = to_double(f.at(a.at.ray)) / std::sqrt(to_double(cx.gram_det(1, a.at.ray)));
    s -= value * a.mass;
  }
  return s;
}

double naive_integral(const PLFunction& f, const DiscreteMeasure& mu) { return -pairing(f, mu); }

SphereRange sphere_range(const PLFunction& f) {
  const auto& cx = *f.complex();
  SphereRange range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < cx.ray_count(); ++r) {
    const double v = to_double(f.at(r)) / ray_norm(cx, r);
    range.min = std::min(range.min, v);
    range.max = std::max(range.max, v);
  }
  // Interior critical points: phi restricted to span(c) is <g, .> with g = sum beta_j t_j.
  const auto& ip = cx.inner_product();
  for (std::size_t k = 2; k <= cx.dim(); ++k) {
    for (const auto& c : cx.cones(k)) {
      std::vector<RatVector> cols(k, RatVector(k));
      RatVector vals(k);
      for (std::size_t i = 0; i < k; ++i) {
        vals[i] = f.at(c[i]);
        for (std::size_t j = 0; j < k; ++j) cols[j][i] = ip(cx.image(c[i]), cx.image(c[j]));
      }
      RatVector beta = *solve_in_span(cols, vals);
      bool pos = true, neg = true;
      for (const auto& b : beta) {
        pos = pos && b > 0;
        neg = neg && b < 0;
      }
      if (!pos && !neg) continue;
      const double g = std::sqrt(to_double(dot(beta, vals)));
      if (pos) range.max = std::max(range.max, g);
      if (neg) range.min = std::min(range.min, -g);
    }
  }
  return range;
}

namespace {

bool nearly_positive(const EuclideanWeight& w, double rel = 1e-12) {
  double scale = 0;
  for (auto v : w.values()) scale = std::max(scale, std::abs(v));
  for (auto v : w.values())
    if (v < -rel * scale) return false;
  return true;
}

EuclideanWeight clamp_negative_zeros(EuclideanWeight w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0) w[i] = 0;
  return w;
}

}  // namespace

double size(const EuclideanWeight& z, const AuxiliaryConcave& aux) {
  if (!is_positive(z)) throw std::invalid_argument("size: cycle is not positive");
  const PLFunction f = aux.on(z.complex());
  EuclideanWeight w = z;
  while (w.dim() > 0) w = euclidean_product(f, w);
  return degree(w);
}

std::string_view cln_status_name(ClnResult::Status s) {
  switch (s) {
    case ClnResult::Status::holds: return "holds";
    case ClnResult::Status::violated: return "violated";
    case ClnResult::Status::inapplicable: return "inapplicable";
  }
  return "unknown";
}

ClnResult cln_check(const PLFunction& f, const EuclideanWeight& z, const AuxiliaryConcave& aux) {
  if (z.dim() == 0) throw std::invalid_argument("cln_check: cycle must have positive dimension");
  ClnResult r;
  EuclideanWeight y = euclidean_product(f, z);
  if (!nearly_positive(y)) {
    r.status = ClnResult::Status::inapplicable;
    return r;
  }
  r.sup = sphere_range(f).sup_abs();
  r.lhs = size(clamp_negative_zeros(y), aux);
  r.rhs = r.sup * size(z, aux);
  r.status = r.lhs <= r.rhs + 1e-9 * std::max(1.0, r.rhs) ? ClnResult::Status::holds : ClnResult::Status::violated;
  return r;
}

}  // namespace tropdeg
