#pragma once

#include "tropdeg/measure.hpp"

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace tropdeg {

struct TowerLevel {
  ComplexPtr complex;
  std::optional<Subdivision> from_previous;  // absent on level 0
  PLFunction function;
};

/// Finite prefix of a toroidal b-divisor: PL functions on a refinement tower.
class BDivisorSequence {
 public:
  explicit BDivisorSequence(std::vector<TowerLevel> levels, bool claimed_nef = false);

  std::size_t size() const { return levels_.size(); }
  const TowerLevel& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<TowerLevel>& levels() const { return levels_; }
  bool claimed_nef() const { return claimed_nef_; }

 private:
  std::vector<TowerLevel> levels_;
  bool claimed_nef_;
};

/// Optional shift phi_k + eps_k * A for the monotonicity test (A given on level 0).
struct MonotoneShift {
  PLFunction base;
  std::vector<Rat> epsilon;  // one per level
};

struct TowerDiagnostics {
  bool compatible = true;
  std::size_t level = 0;  // first offending level
  std::string ray;        // first offending ray id
  std::string message;
  std::optional<bool> monotone;  // pull-back of level k-1 <= level k, if requested
  std::size_t monotone_level = 0;
};

TowerDiagnostics bdiv_validate(const BDivisorSequence& b, bool check_monotone = false,
                               const std::optional<MonotoneShift>& shift = std::nullopt);

/// Refinement ladder: complexes[k+1] subdivides complexes[k] via steps[k].
struct Ladder {
  std::vector<ComplexPtr> complexes;
  std::vector<Subdivision> steps;
};

/// Step k >= 1 splits cones barycentrically until every maximal cone spans an angle
/// of at most pi / (3 * 2^k). Two-dimensional complexes only.
Ladder disk_ladder(const ComplexPtr& base, std::size_t steps);

/// Ray values -q(v) with q(v) the dyadic upper bound of ||v||; compatible and increasing.
BDivisorSequence neg_norm_tower(const Ladder& ladder);
/// Pull-backs of one PL function (a Cartier b-divisor).
BDivisorSequence constant_tower(const Ladder& ladder, const PLFunction& f0);

struct ConvergeOptions {
  bool slot_pairings = false;   // pair each slot against the measure of the others
  bool variation_bound = false; // compute B^{n-1} * size(hat[X]) per step
};

struct ConvergenceStep {
  std::size_t step = 0;
  std::size_t cones = 0;
  double degree = 0;
  double delta = 0;  // |degree - previous|, NaN at step 0
  double total_variation = 0;
  double pairing = 0;          // integral of -phi_1 against the measure
  double naive_integral = 0;   // integral of phi_1
  std::vector<double> slot_pairings;
  double sup_bound = 0;        // B
  double aux_size = 0;         // size(hat[X])
  double variation_bound = 0;  // NaN when aux is not PL on the level
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  std::vector<double> degrees;
  double limit = 0;
  bool cauchy_ok = false;
  DiscreteMeasure final_measure;
};

/// Degrees deg(phi_1k ... phi_nk . hat[X_k]) until three successive differences are below tol.
ConvergenceReport converge_degree(std::span<const BDivisorSequence> towers, double tol = 1e-6,
                                  std::size_t max_steps = 12, const ConvergeOptions& opts = {});

struct AdmissibleReport {
  bool products_positive = true;  // condition (1), all products up to depth n
  bool cone_closed = true;        // condition (2), sampled conic combinations
  std::string witness;            // first failing product
  std::string density = "not verified";
};

AdmissibleReport admissible_check(std::span<const PLFunction> family, const BalancedSpace& space,
                                  std::size_t samples = 20, std::uint64_t seed = 1);

}  // namespace tropdeg
