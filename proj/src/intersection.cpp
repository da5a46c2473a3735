#include "tropdeg/intersection.hpp"

#include <algorithm>
#include <cmath>

namespace tropdeg {

namespace {

void same_complex(const PLFunction& f, const ComplexPtr& cx) {
  if (f.complex() != cx) throw std::invalid_argument("function and weight live on different complexes");
}

// phi_tau(x) for x in span(tau), with fast paths for the apex and rays.
Rat phi_on_face(const PLFunction& f, const Cone& tau, const RatVector& x) {
  const auto& cx = *f.complex();
  if (tau.empty()) {
    if (!is_zero(x)) throw std::invalid_argument("lattice product: weight is not balanced at the apex");
    return 0;
  }
  if (tau.size() == 1) {
    const RatVector& t = cx.image(tau[0]);
    std::size_t j = 0;
    while (t[j] == 0) ++j;
    Rat lambda = x[j] / t[j];
    for (std::size_t i = 0; i < t.size(); ++i)
      if (x[i] != lambda * t[i])
        throw std::invalid_argument("lattice product: weight is not balanced at ray " + cx.ray(tau[0]).id);
    return lambda * f.at(tau[0]);
  }
  auto coeffs = solve_in_span(cx.images_of(tau), x);
  if (!coeffs) throw std::invalid_argument("lattice product: weight is not balanced at " + cx.cone_key(tau));
  Rat s = 0;
  for (std::size_t i = 0; i < tau.size(); ++i) s += (*coeffs)[i] * f.at(tau[i]);
  return s;
}

}  // namespace

double phi_on_normal(const PLFunction& f, const Cone& tau, const Incidence& inc) {
  Rat num = f.at(inc.extra);
  for (std::size_t i = 0; i < tau.size(); ++i) num -= inc.projection[i] * f.at(tau[i]);
  return to_double(num) / std::sqrt(to_double(inc.perp_sq));
}

EuclideanWeight euclidean_product(const PLFunction& f, const EuclideanWeight& w) {
  same_complex(f, w.complex());
  if (w.dim() == 0) throw std::invalid_argument("cannot intersect a zero-dimensional weight");
  const auto& cx = *w.complex();
  const std::size_t k = w.dim() - 1;
  const auto& taus = cx.cones(k);
  EuclideanWeight out(w.complex(), k);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    double s = 0;
    for (const auto& inc : cx.cofaces(k, t)) {
      const double c = w[inc.sigma];
      if (c == 0) continue;
      s -= phi_on_normal(f, taus[t], inc) * c;
    }
    out[t] = s;
  }
  return out;
}

double product_scale(const PLFunction& f, const EuclideanWeight& w) {
  same_complex(f, w.complex());
  if (w.dim() == 0) throw std::invalid_argument("cannot intersect a zero-dimensional weight");
  const auto& cx = *w.complex();
  const std::size_t k = w.dim() - 1;
  const auto& taus = cx.cones(k);
  double scale = 0;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    double s = 0;
    for (const auto& inc : cx.cofaces(k, t))
      if (w[inc.sigma] != 0) s += std::abs(phi_on_normal(f, taus[t], inc) * w[inc.sigma]);
    scale = std::max(scale, s);
  }
  return scale;
}

LatticeWeight lattice_product(const PLFunction& f, const LatticeWeight& w, const Lifting& lifting) {
  same_complex(f, w.complex());
  if (w.dim() == 0) throw std::invalid_argument("cannot intersect a zero-dimensional weight");
  const auto& cx = *w.complex();
  const std::size_t k = w.dim() - 1;
  const auto& taus = cx.cones(k);
  const auto& sigmas = cx.cones(k + 1);
  LatticeWeight out(w.complex(), k);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    Rat value = 0;
    RatVector sum(cx.ambient_dim());
    for (const auto& inc : cx.cofaces(k, t)) {
      const Rat& c = w[inc.sigma];
      if (c == 0) continue;
      if (lifting) {
        RatVector v = lifting(cx, taus[t], inc);
        value -= f.on_span(sigmas[inc.sigma], v) * c;
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c * v[j];
      } else {
        value -= f.at(inc.extra) * c;
        const auto& v = cx.image(inc.extra);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c * v[j];
      }
    }
    out[t] = value + phi_on_face(f, taus[t], sum);
  }
  return out;
}

namespace {

void check_arity(std::span<const PLFunction> fs, const BalancedSpace& space, std::size_t expected) {
  if (fs.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " functions, got " + std::to_string(fs.size()));
  for (const auto& f : fs)
    if (f.complex() != space.complex()) throw std::invalid_argument("function is not on the balanced space");
}

}  // namespace

Rat top_number_lattice(std::span<const PLFunction> fs, const BalancedSpace& space) {
  check_arity(fs, space, space.complex()->dim());
  LatticeWeight c = space.cycle();
  for (std::size_t i = fs.size(); i-- > 0;) c = lattice_product(fs[i], c);
  return degree(c);
}

double top_number_euclidean(std::span<const PLFunction> fs, const BalancedSpace& space) {
  check_arity(fs, space, space.complex()->dim());
  EuclideanWeight c = space.normalized();
  for (std::size_t i = fs.size(); i-- > 0;) c = euclidean_product(fs[i], c);
  return degree(c);
}

double mixed_top_number(const ConicFunction& psi, std::span<const PLFunction> fs, const BalancedSpace& space) {
  check_arity(fs, space, space.complex()->dim() - 1);
  EuclideanWeight z = space.normalized();
  for (std::size_t i = fs.size(); i-- > 0;) z = euclidean_product(fs[i], z);
  const auto& cx = *space.complex();
  double s = 0;
  for (const auto& inc : cx.cofaces(0, 0)) {
    const double c = z[inc.sigma];
    if (c == 0) continue;
    s -= psi.at_unit_ray(cx, inc.extra) * c;
  }
  return s;
}

CheckResult projection_formula_check(const PLFunction& fine_phi, const LatticeWeight& c1, const Subdivision& s) {
  if (c1.dim() != 1) throw std::invalid_argument("projection formula needs a one-dimensional weight");
  const Rat lhs = degree(lattice_product(push_forward(fine_phi, s), c1));
  const Rat rhs = degree(lattice_product(fine_phi, pull_back(c1, s)));
  CheckResult r;
  r.ok = lhs == rhs;
  r.max_error = std::abs(to_double(lhs - rhs));
  r.detail = to_string(lhs) + " vs " + to_string(rhs);
  return r;
}

CheckResult projection_formula_check(const PLFunction& fine_phi, const EuclideanWeight& c1, const Subdivision& s,
                                     double tol) {
  if (c1.dim() != 1) throw std::invalid_argument("projection formula needs a one-dimensional weight");
  const PLFunction coarse_phi = push_forward(fine_phi, s);
  const EuclideanWeight fine_c1 = pull_back(c1, s);
  const double lhs = degree(euclidean_product(coarse_phi, c1));
  const double rhs = degree(euclidean_product(fine_phi, fine_c1));
  CheckResult r;
  r.max_error = std::abs(lhs - rhs);
  const double scale = std::max(product_scale(coarse_phi, c1), product_scale(fine_phi, fine_c1));
  r.ok = r.max_error <= tol * std::max({std::abs(lhs), std::abs(rhs), scale});
  r.detail = std::to_string(lhs) + " vs " + std::to_string(rhs);
  return r;
}

CheckResult compare_weights(const EuclideanWeight& a, const EuclideanWeight& b, double tol, double scale) {
  if (a.complex() != b.complex() || a.dim() != b.dim()) return {false, INFINITY, "weights not comparable"};
  double biggest = 0;
  for (std::size_t i = 0; i < a.size(); ++i) biggest = std::max({biggest, std::abs(a[i]), std::abs(b[i])});
  CheckResult r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double err = std::abs(a[i] - b[i]);
    const double bound =
        std::max({tol * std::max(std::abs(a[i]), std::abs(b[i])), tol * 1e-3 * biggest, tol * scale});
    r.max_error = std::max(r.max_error, err);
    if (err > bound && r.ok) {
      r.ok = false;
      r.detail = "component " + a.complex()->cone_key(a.complex()->cones(a.dim())[i]) + ": " + std::to_string(a[i]) +
                 " vs " + std::to_string(b[i]);
    }
  }
  return r;
}

CheckResult normalization_bridge_check(const PLFunction& f, const LatticeWeight& w, double rel_tol) {
  const auto hat = normalize(w);
  return compare_weights(normalize(lattice_product(f, w)), euclidean_product(f, hat), rel_tol, product_scale(f, hat));
}

}  // namespace tropdeg
