#pragma once

#include "tropdeg/complex.hpp"
#include "tropdeg/weights.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropdeg {

/// Piecewise linear function on a simplicial complex, stored by its ray values.
class PLFunction {
 public:
  explicit PLFunction(ComplexPtr cx);  // zero function
  PLFunction(ComplexPtr cx, RatVector ray_values);
  /// Throws if a ray is missing or unknown.
  static PLFunction from_map(ComplexPtr cx, const std::map<std::string, Rat>& values);

  const ComplexPtr& complex() const { return cx_; }
  const RatVector& values() const { return values_; }
  const Rat& at(std::size_t ray) const { return values_.at(ray); }

  Rat evaluate(const Point& p) const;
  /// phi_c at an ambient vector of span(c); throws if x is outside that span.
  Rat on_span(const Cone& c, const RatVector& x) const;
  /// Linear form (ambient covector) of phi on a full-dimensional cone.
  RatVector linear_form(const Cone& c) const;

  PLFunction& operator+=(const PLFunction& o);
  friend PLFunction operator+(PLFunction a, const PLFunction& b) { return a += b; }
  friend PLFunction operator-(PLFunction a, const PLFunction& b) { return a += Rat(-1) * b; }
  friend PLFunction operator*(const Rat& s, PLFunction f) {
    for (auto& v : f.values_) v *= s;
    return f;
  }
  friend bool operator==(const PLFunction& a, const PLFunction& b) {
    return a.cx_ == b.cx_ && a.values_ == b.values_;
  }

 private:
  ComplexPtr cx_;
  RatVector values_;
};

/// Boundary divisor: a multiplicity per ray.
struct DivisorView {
  ComplexPtr complex;
  RatVector coefficients;
};

/// phi_D(v) = -ord_v(D).
PLFunction from_divisor(const DivisorView& d);
DivisorView to_divisor(const PLFunction& f);

PLFunction pull_back(const PLFunction& f, const Subdivision& s);
PLFunction push_forward(const PLFunction& f, const Subdivision& s);

/// Positively homogeneous function given by an evaluator on points of a complex.
class ConicFunction {
 public:
  using Evaluator = std::function<double(const ConicalComplex&, const Point&)>;

  ConicFunction(std::string name, Evaluator f) : name_(std::move(name)), f_(std::move(f)) {}
  static ConicFunction from_pl(const PLFunction& f);
  static ConicFunction from_ambient(std::string name, std::function<double(const std::vector<double>&)> f);
  /// x -> -||x|| for the complex's inner product.
  static ConicFunction neg_norm();

  const std::string& name() const { return name_; }
  double operator()(const ConicalComplex& cx, const Point& p) const { return f_(cx, p); }
  /// Value at the unit vector of a ray.
  double at_unit_ray(const ConicalComplex& cx, std::size_t ray) const;
  /// PL function with the (exactly converted) values at ray generators.
  PLFunction restrict_to(const ComplexPtr& cx) const;

 private:
  std::string name_;
  Evaluator f_;
};

enum class Concavity { strongly_concave, weakly_concave, neither };
std::string_view concavity_name(Concavity c);

struct ConcavityReport {
  Concavity cls = Concavity::neither;
  bool weak = false;
  /// Strong test needs full-dimensional maximal cones; otherwise not applicable.
  bool strong_applicable = false;
  bool strong = false;
  std::optional<bool> concave_wrt_weights;
  std::optional<LatticeWeight> product;  // phi (.) [X]
};

ConcavityReport concavity_class(const PLFunction& f, const BalancedSpace& space,
                                std::span<const LatticeWeight> extra_weights = {});

}  // namespace tropdeg
