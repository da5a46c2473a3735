#pragma once

#include "tropdeg/functions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropdeg {

/// Lattice polytope in dimension 1 to 3.
/// With an H-description {m : <m, v_i> >= -a_i}, or as a bare vertex set (Minkowski sums).
class Polytope {
 public:
  static Polytope from_inequalities(std::vector<IntVector> normals, RatVector offsets);
  static Polytope from_vertices(std::size_t dim, std::vector<RatVector> points);
  /// Delta_D of a divisor on a complete fan.
  static Polytope from_divisor(const DivisorView& d);

  std::size_t dim() const { return dim_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  bool has_inequalities() const { return !normals_.empty(); }
  const std::vector<IntVector>& normals() const { return normals_; }
  const RatVector& offsets() const { return offsets_; }
  bool empty() const { return vertices_.empty(); }

  Polytope scaled(const Rat& s) const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> normals_;
  RatVector offsets_;
  std::vector<RatVector> vertices_;
};

Rat polytope_volume(const Polytope& p);
Polytope minkowski_sum(const Polytope& a, const Polytope& b);
/// Normalized so that mixed_volume(P, ..., P) = n! vol(P).
Rat mixed_volume(const std::vector<Polytope>& ps);
/// Lattice points of l*P. Throws if the bounding box exceeds 1e7 points.
Integer count_lattice_points(const Polytope& p, std::int64_t scale = 1);
/// Lattice length of the edge of a polygon with inner normal v (0 if it is a vertex or absent).
Rat facet_lattice_length(const Polytope& p, const IntVector& normal);

struct ToricFixture {
  std::string name;
  ComplexPtr fan;
};

struct DegreeComparison {
  Rat tropical;
  Rat oracle;
  bool equal = false;
};

/// Lattice top number of the phi_{D_i} against n!-normalized mixed volume of the Delta_{D_i}.
DegreeComparison compare_degrees(const ToricFixture& fx, const std::vector<DivisorView>& divisors);

struct HilbertSamuelRow {
  std::int64_t scale;
  Integer count;
  double normalized;  // count * n! / l^n
  double error;       // |normalized - n! vol|
};

struct HilbertSamuelReport {
  Rat volume_times_factorial;
  std::vector<HilbertSamuelRow> rows;
};

HilbertSamuelReport hilbert_samuel(const Polytope& p, const std::vector<std::int64_t>& scales);

struct BrunnMinkowskiReport {
  Rat d_top, f_top, sum_top;      // D^n, F^n, (D+F)^n from the oracle
  double lhs = 0;                 // ((D+F)^n)^{1/n}
  double rhs = 0;                 // (D^n)^{1/n} + (F^n)^{1/n}
  bool superadditive = false;     // lhs >= rhs - slack
  bool strict = false;            // lhs > rhs + slack
  bool stated_direction = false;  // rhs >= lhs - slack, the reversed form
};

BrunnMinkowskiReport brunn_minkowski(const DivisorView& d, const DivisorView& f, double slack = 1e-9);

}  // namespace tropdeg
