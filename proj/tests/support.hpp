#pragma once
// Shared helpers for the test suites: seeded randomness, random refinements and
// weights, and oracles that recompute products from raw geometry.

#include "tropdeg/fixtures.hpp"
#include "tropdeg/intersection.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace tropdeg;

inline std::uint64_t seed() {
  if (const char* s = std::getenv("TROPDEG_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240917;
}

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Rat random_rat(Rng& rng, int span = 5) {
  return Rat(uniform(rng, -span, span)) / Rat(uniform(rng, 1, 3));
}

inline std::vector<ComplexPtr> all_fixtures() {
  return {fixtures::p2(), fixtures::p1xp1(), fixtures::hirzebruch1(), fixtures::p3(), fixtures::elliptic()};
}

inline std::vector<ComplexPtr> surface_fixtures() {
  return {fixtures::p2(), fixtures::p1xp1(), fixtures::hirzebruch1()};
}

/// A few barycentric stellar subdivisions at random faces of dimension >= 2.
inline Subdivision random_refinement(const ComplexPtr& cx, Rng& rng, int steps) {
  Subdivision total = Subdivision::identity(cx);
  for (int i = 0; i < steps && cx->dim() >= 2; ++i) {
    const auto& fine = total.fine();
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(fine->dim())));
    const auto& cones = fine->cones(k);
    const Cone c = cones[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(cones.size()) - 1))];
    const Subdivision step = stellar_subdivide(fine, Point{c, RatVector(c.size(), Rat(1))});
    total = compose(step, total);
  }
  return total;
}

inline PLFunction random_pl(const ComplexPtr& cx, Rng& rng, int span = 5) {
  RatVector v(cx->ray_count());
  for (auto& x : v) x = random_rat(rng, span);
  return PLFunction(cx, v);
}

/// Random integer combination of a basis of balanced k-weights.
inline LatticeWeight random_balanced(const ComplexPtr& cx, std::size_t k, Rng& rng) {
  LatticeWeight w(cx, k);
  for (const auto& b : balanced_basis(cx, k)) w += Rat(uniform(rng, -3, 3)) * b;
  return w;
}

/// Positive balanced 1-weight from a positive relation among ray images.
/// Needs the images to positively span the ambient space.
inline LatticeWeight random_positive_curve(const ComplexPtr& cx, Rng& rng) {
  const std::size_t d = cx->ambient_dim();
  RatVector c(cx->ray_count());
  RatVector residual(d);
  for (std::size_t r = 0; r < c.size(); ++r) {
    c[r] = Rat(uniform(rng, 0, 3));
    for (std::size_t i = 0; i < d; ++i) residual[i] += c[r] * cx->image(r)[i];
  }
  // Cancel the residual with a nonnegative combination inside one maximal cone.
  const RatVector target = scale(Rat(-1), residual);
  bool done = is_zero(target);
  for (const auto& m : cx->maximal_cones()) {
    if (done) break;
    if (m.size() != d) break;
    auto coeffs = solve_in_span(cx->images_of(m), target);
    if (!coeffs) continue;
    bool nonneg = true;
    for (const auto& a : *coeffs) nonneg = nonneg && a >= 0;
    if (!nonneg) continue;
    for (std::size_t i = 0; i < m.size(); ++i) c[m[i]] += (*coeffs)[i];
    done = true;
  }
  if (!done) throw std::logic_error("could not cancel residual");
  // Clear denominators.
  Integer l = 1;
  for (const auto& x : c) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  for (auto& x : c) x *= Rat(l);
  if (is_zero(c)) c.assign(c.size(), Rat(0));
  LatticeWeight w(cx, 1);
  for (std::size_t r = 0; r < c.size(); ++r) w.set({r}, c[r]);
  return w;
}

// ---- oracles ----

/// Gram matrix of the complex's inner product as doubles.
inline double ip_d(const ConicalComplex& cx, const std::vector<double>& a, const std::vector<double>& b) {
  const auto& g = cx.inner_product().gram();
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += to_double(g(i, j)) * a[i] * b[j];
  return s;
}

inline std::vector<double> image_d(const ConicalComplex& cx, std::size_t r) {
  std::vector<double> v;
  for (auto x : cx.ray(r).image) v.push_back(static_cast<double>(x));
  return v;
}

/// Solves a small dense system by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Euclidean product from scratch: Gram-Schmidt normal in doubles, phi_sigma through the ray coefficients.
inline std::vector<double> oracle_euclidean_product(const PLFunction& f, const EuclideanWeight& w) {
  const auto& cx = *w.complex();
  const std::size_t k = w.dim();
  const auto& taus = cx.cones(k - 1);
  const auto& sigmas = cx.cones(k);
  std::vector<double> out(taus.size(), 0.0);
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    if (w[s] == 0) continue;
    const Cone& sigma = sigmas[s];
    for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
      Cone tau = sigma;
      const std::size_t extra = tau[drop];
      tau.erase(tau.begin() + static_cast<long>(drop));
      // Project the extra image onto span(tau) via the normal equations.
      const auto e = image_d(cx, extra);
      std::vector<double> coef;
      if (!tau.empty()) {
        std::vector<std::vector<double>> g(tau.size(), std::vector<double>(tau.size()));
        std::vector<double> rhs(tau.size());
        for (std::size_t i = 0; i < tau.size(); ++i) {
          for (std::size_t j = 0; j < tau.size(); ++j) g[i][j] = ip_d(cx, image_d(cx, tau[i]), image_d(cx, tau[j]));
          rhs[i] = ip_d(cx, image_d(cx, tau[i]), e);
        }
        coef = solve_dense(g, rhs);
      }
      std::vector<double> perp = e;
      for (std::size_t i = 0; i < tau.size(); ++i) {
        const auto t = image_d(cx, tau[i]);
        for (std::size_t j = 0; j < perp.size(); ++j) perp[j] -= coef[i] * t[j];
      }
      const double len = std::sqrt(ip_d(cx, perp, perp));
      // phi on sigma is linear in ray coefficients: perp/len = (e - sum coef t)/len.
      double value = to_double(f.at(extra));
      for (std::size_t i = 0; i < tau.size(); ++i) value -= coef[i] * to_double(f.at(tau[i]));
      value /= len;
      const std::size_t t = *cx.index_of(tau);
      out[t] -= value * w[s];
    }
  }
  return out;
}

/// Exact rational solve of a square system, for the lattice oracle.
inline RatVector solve_exact(std::vector<RatVector> a, RatVector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Lattice product from scratch, with the ray-generator lifting.
inline RatVector oracle_lattice_product(const PLFunction& f, const LatticeWeight& w) {
  const auto& cx = *w.complex();
  const std::size_t k = w.dim();
  const auto& taus = cx.cones(k - 1);
  const auto& sigmas = cx.cones(k);
  RatVector out(taus.size());
  std::vector<RatVector> sums(taus.size(), RatVector(cx.ambient_dim()));
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    if (w[s] == 0) continue;
    for (std::size_t drop = 0; drop < sigmas[s].size(); ++drop) {
      Cone tau = sigmas[s];
      const std::size_t extra = tau[drop];
      tau.erase(tau.begin() + static_cast<long>(drop));
      const std::size_t t = *cx.index_of(tau);
      out[t] -= f.at(extra) * w[s];
      for (std::size_t j = 0; j < cx.ambient_dim(); ++j) sums[t][j] += w[s] * Rat(cx.ray(extra).image[j]);
    }
  }
  // phi_tau(sum): write sum = sum_i a_i t_i using the normal equations of the standard dot product.
  for (std::size_t t = 0; t < taus.size(); ++t) {
    const Cone& tau = taus[t];
    if (tau.empty()) continue;
    std::vector<RatVector> g(tau.size(), RatVector(tau.size()));
    RatVector rhs(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
      for (std::size_t j = 0; j < tau.size(); ++j) g[i][j] = dot(cx.image(tau[i]), cx.image(tau[j]));
      rhs[i] = dot(cx.image(tau[i]), sums[t]);
    }
    const RatVector a = solve_exact(g, rhs);
    for (std::size_t i = 0; i < tau.size(); ++i) out[t] += a[i] * f.at(tau[i]);
  }
  return out;
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testing_support
