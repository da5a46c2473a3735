#pragma once

#include "tropdeg/functions.hpp"
#include "tropdeg/weights.hpp"

#include <functional>
#include <span>
#include <string>

namespace tropdeg {

/// phi_sigma evaluated at the unit normal of sigma over tau.
double phi_on_normal(const PLFunction& f, const Cone& tau, const Incidence& inc);

/// (phi . c)(tau) = sum over sigma > tau of -phi_sigma(unit normal) c(sigma).
EuclideanWeight euclidean_product(const PLFunction& f, const EuclideanWeight& w);

/// Lifting of the normal of sigma over tau: an ambient vector in span(sigma) whose
/// class generates N^sigma / N^tau.
using Lifting = std::function<RatVector(const ConicalComplex&, const Cone& tau, const Incidence& inc)>;

/// Largest sum of |summand| over the facets of the Euclidean product: the scale of its rounding error.
double product_scale(const PLFunction& f, const EuclideanWeight& w);

/// Exact lattice product; liftings default to the extra ray's image.
/// Throws std::invalid_argument if w is not balanced.
LatticeWeight lattice_product(const PLFunction& f, const LatticeWeight& w, const Lifting& lifting = {});

Rat top_number_lattice(std::span<const PLFunction> fs, const BalancedSpace& space);
double top_number_euclidean(std::span<const PLFunction> fs, const BalancedSpace& space);

/// deg(psi . phi_1 ... phi_{n-1} . hat[X]) with psi read off at unit ray vectors.
double mixed_top_number(const ConicFunction& psi, std::span<const PLFunction> fs, const BalancedSpace& space);

struct CheckResult {
  bool ok = true;
  double max_error = 0;
  std::string detail;
};

/// f^*(f_* phi . c1) = phi . f^* c1, exact.
CheckResult projection_formula_check(const PLFunction& fine_phi, const LatticeWeight& c1, const Subdivision& s);
/// Euclidean version at relative tolerance.
CheckResult projection_formula_check(const PLFunction& fine_phi, const EuclideanWeight& c1, const Subdivision& s,
                                     double tol = 1e-9);

/// hat(phi (.) c) = phi . hat(c) componentwise; entries that cancel are judged against product_scale.
CheckResult normalization_bridge_check(const PLFunction& f, const LatticeWeight& w, double rel_tol = 1e-9);

/// Componentwise comparison: |a-b| <= tol * max(|a|, |b|), with an absolute floor of
/// tol * 1e-3 * (largest entry) for entries that should vanish.
/// A positive scale (size of the summands behind the entries) raises the floor to tol * scale,
/// for sums that cancel to zero.
CheckResult compare_weights(const EuclideanWeight& a, const EuclideanWeight& b, double tol, double scale = 0);

}  // namespace tropdeg
