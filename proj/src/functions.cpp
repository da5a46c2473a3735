#include "tropdeg/functions.hpp"

#include "tropdeg/intersection.hpp"

#include <cmath>

namespace tropdeg {

PLFunction::PLFunction(ComplexPtr cx) : cx_(std::move(cx)), values_(cx_->ray_count()) {}

PLFunction::PLFunction(ComplexPtr cx, RatVector ray_values) : cx_(std::move(cx)), values_(std::move(ray_values)) {
  if (values_.size() != cx_->ray_count()) throw std::invalid_argument("PL function needs one value per ray");
}

PLFunction PLFunction::from_map(ComplexPtr cx, const std::map<std::string, Rat>& values) {
  RatVector v(cx->ray_count());
  std::vector<bool> seen(cx->ray_count(), false);
  for (const auto& [id, x] : values) {
    auto r = cx->find_ray(id);
    if (!r) throw std::invalid_argument("unknown ray id: " + id);
    v[*r] = x;
    seen[*r] = true;
  }
  for (std::size_t r = 0; r < seen.size(); ++r)
    if (!seen[r]) throw std::invalid_argument("missing value for ray " + cx->ray(r).id);
  return PLFunction(std::move(cx), std::move(v));
}

Rat PLFunction::evaluate(const Point& p) const {
  if (p.cone.size() != p.coefficients.size()) throw std::invalid_argument("evaluate: coefficient count mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < p.cone.size(); ++i) s += p.coefficients[i] * values_.at(p.cone[i]);
  return s;
}

Rat PLFunction::on_span(const Cone& c, const RatVector& x) const {
  auto coeffs = solve_in_span(cx_->images_of(c), x);
  if (!coeffs) throw std::invalid_argument("on_span: vector outside the span of the cone");
  Rat s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += (*coeffs)[i] * values_[c[i]];
  return s;
}

RatVector PLFunction::linear_form(const Cone& c) const {
  const std::size_t d = cx_->ambient_dim();
  if (c.size() != d) throw std::invalid_argument("linear_form: cone is not full-dimensional");
  std::vector<RatVector> cols(d, RatVector(d));
  RatVector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    rhs[i] = values_[c[i]];
    for (std::size_t j = 0; j < d; ++j) cols[j][i] = cx_->image(c[i])[j];
  }
  return *solve_in_span(cols, rhs);
}

PLFunction& PLFunction::operator+=(const PLFunction& o) {
  if (o.cx_ != cx_) throw std::invalid_argument("PL functions live on different complexes");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

PLFunction from_divisor(const DivisorView& d) {
  RatVector v(d.coefficients.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -d.coefficients[i];
  return PLFunction(d.complex, std::move(v));
}

DivisorView to_divisor(const PLFunction& f) {
  RatVector c(f.values().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -f.values()[i];
  return DivisorView{f.complex(), std::move(c)};
}

PLFunction pull_back(const PLFunction& f, const Subdivision& s) {
  if (f.complex() != s.coarse()) throw std::invalid_argument("pull_back: function is not on the coarse complex");
  RatVector v(s.fine()->ray_count());
  for (std::size_t r = 0; r < v.size(); ++r) {
    const auto& loc = s.location(r);
    v[r] = f.evaluate(Point{loc.cone, loc.coefficients});
  }
  return PLFunction(s.fine(), std::move(v));
}

PLFunction push_forward(const PLFunction& f, const Subdivision& s) {
  if (f.complex() != s.fine()) throw std::invalid_argument("push_forward: function is not on the fine complex");
  RatVector v(s.coarse()->ray_count());
  for (std::size_t r = 0; r < v.size(); ++r) {
    auto fine = s.fine_ray_of(r);
    if (!fine) throw std::invalid_argument("push_forward: coarse ray missing from fine complex");
    v[r] = f.at(*fine);
  }
  return PLFunction(s.coarse(), std::move(v));
}

ConicFunction ConicFunction::from_pl(const PLFunction& f) {
  return ConicFunction("pl", [f](const ConicalComplex& cx, const Point& p) {
    if (&cx != f.complex().get()) throw std::invalid_argument("PL conic function evaluated on another complex");
    return to_double(f.evaluate(p));
  });
}

ConicFunction ConicFunction::from_ambient(std::string name, std::function<double(const std::vector<double>&)> f) {
  return ConicFunction(std::move(name),
                       [f = std::move(f)](const ConicalComplex& cx, const Point& p) { return f(to_double(cx.image_of(p))); });
}

ConicFunction ConicFunction::neg_norm() {
  return ConicFunction("neg-norm", [](const ConicalComplex& cx, const Point& p) {
    RatVector x = cx.image_of(p);
    return -std::sqrt(to_double(cx.inner_product()(x, x)));
  });
}

double ConicFunction::at_unit_ray(const ConicalComplex& cx, std::size_t ray) const {
  return f_(cx, Point{{ray}, {Rat(1)}}) / ray_norm(cx, ray);
}

PLFunction ConicFunction::restrict_to(const ComplexPtr& cx) const {
  RatVector v(cx->ray_count());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = rat_from_double(f_(*cx, Point{{r}, {Rat(1)}}));
  return PLFunction(cx, std::move(v));
}

std::string_view concavity_name(Concavity c) {
  switch (c) {
    case Concavity::strongly_concave: return "strongly_concave";
    case Concavity::weakly_concave: return "weakly_concave";
    case Concavity::neither: return "neither";
  }
  return "unknown";
}

ConcavityReport concavity_class(const PLFunction& f, const BalancedSpace& space,
                                std::span<const LatticeWeight> extra_weights) {
  if (f.complex() != space.complex()) throw std::invalid_argument("concavity_class: function not on the space");
  const auto& cx = *f.complex();
  ConcavityReport rep;
  // Weak concavity: phi . [X] >= 0. The normalized product differs from the
  // lattice one by positive volume factors, so the sign test is exact here.
  rep.product = lattice_product(f, space.cycle());
  rep.weak = is_positive(*rep.product);

  rep.strong_applicable = cx.dim() == cx.ambient_dim();
  if (rep.strong_applicable) {
    std::vector<RatVector> forms;
    for (const auto& m : cx.maximal_cones()) forms.push_back(f.linear_form(m));
    std::vector<Point> samples;
    for (std::size_t r = 0; r < cx.ray_count(); ++r) samples.push_back({{r}, {Rat(1)}});
    if (cx.dim() >= 2)
      for (const auto& e : cx.cones(2)) samples.push_back({e, {Rat(1), Rat(1)}});
    rep.strong = true;
    for (const auto& p : samples) {
      const Rat value = f.evaluate(p);
      const RatVector x = cx.image_of(p);
      for (const auto& l : forms)
        if (dot(l, x) < value) {
          rep.strong = false;
          break;
        }
      if (!rep.strong) break;
    }
  }

  if (!extra_weights.empty()) {
    bool ok = true;
    for (const auto& w : extra_weights) {
      if (!is_positive(w)) throw std::invalid_argument("concavity_class: supplied weights must be positive");
      if (!is_positive(lattice_product(f, w))) ok = false;
    }
    rep.concave_wrt_weights = ok;
  }

  if (rep.strong)
    rep.cls = Concavity::strongly_concave;
  else if (rep.weak)
    rep.cls = Concavity::weakly_concave;
  else
    rep.cls = Concavity::neither;
  return rep;
}

}  // namespace tropdeg
