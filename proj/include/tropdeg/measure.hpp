#pragma once

#include "tropdeg/functions.hpp"
#include "tropdeg/intersection.hpp"
#include "tropdeg/weights.hpp"

#include <functional>
#include <span>
#include <vector>

namespace tropdeg {

struct Atom {
  SphereAtom at;
  double mass = 0;
};

/// Finite atomic measure on the unit-sphere section; atoms in ray order.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_variation() const;
  double total_mass() const;
  /// Sum of g(atom) * mass, in atom order.
  double integrate(const std::function<double(const SphereAtom&)>& g) const;

 private:
  std::vector<Atom> atoms_;
};

/// Atoms at the unit ray vectors with the weight's values (zero values dropped).
DiscreteMeasure measure(const EuclideanWeight& z);
/// mu of phi^{n-1} . hat[X].
DiscreteMeasure ma_measure(const PLFunction& f, const BalancedSpace& space);
/// mu of phi_1 ... phi_{n-1} . hat[X].
DiscreteMeasure mixed_ma_measure(std::span<const PLFunction> fs, const BalancedSpace& space);

/// Integral of -phi against mu; equals the degree of phi . z for mu = mu_z.
double pairing(const PLFunction& f, const DiscreteMeasure& mu);
/// Integral of phi against mu, as displayed without the sign.
double naive_integral(const PLFunction& f, const DiscreteMeasure& mu);

/// Min and max of phi on the unit sphere section of its complex.
struct SphereRange {
  double min = 0;
  double max = 0;
  double sup_abs() const { return std::max(-min, max); }
};
SphereRange sphere_range(const PLFunction& f);

/// The auxiliary concave function 2r min(0,w_1..w_r) - (w_1+...+w_r) in orthogonal coordinates.
/// Coordinates come from a rational Gram-Schmidt basis b_i scaled by rational s_i >= ||b_i||,
/// so the bound aux(x) <= -||x|| holds exactly; for the standard inner product w = x.
class AuxiliaryConcave {
 public:
  explicit AuxiliaryConcave(const InnerProduct& ip);

  std::size_t r() const { return coords_.size(); }
  /// Linear forms l_0..l_r with aux = min_j l_j.
  const std::vector<RatVector>& forms() const { return forms_; }
  const std::vector<RatVector>& coordinates() const { return coords_; }
  Rat evaluate(const RatVector& x) const;

  bool is_pl_on(const ConicalComplex& cx) const;
  /// Throws if not PL on the complex.
  PLFunction on(const ComplexPtr& cx) const;
  /// Subdivision on which aux is PL. Complexes of dimension <= 2 only, unless already PL.
  Subdivision refine(const ComplexPtr& cx) const;

 private:
  std::vector<RatVector> coords_;
  std::vector<RatVector> forms_;
};

/// deg((aux .)^k z) for a positive Euclidean k-weight. Throws if z is not positive
/// or aux is not PL on z's complex.
double size(const EuclideanWeight& z, const AuxiliaryConcave& aux);

struct ClnResult {
  enum class Status { holds, violated, inapplicable } status = Status::holds;
  double lhs = 0;  // size(phi . z)
  double rhs = 0;  // sup|phi| * size(z)
  double sup = 0;
};
std::string_view cln_status_name(ClnResult::Status s);

/// |phi . z| <= sup|phi| |z| with slack 1e-9; inapplicable when phi . z is not positive.
ClnResult cln_check(const PLFunction& f, const EuclideanWeight& z, const AuxiliaryConcave& aux);

}  // namespace tropdeg
