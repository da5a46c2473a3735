#include "tropdeg/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tropdeg {

namespace {

// Sum of weighted locations, merged on a common carrier.
RayLocation combine(const std::vector<std::pair<Rat, const RayLocation*>>& parts) {
  std::map<std::size_t, Rat> acc;
  for (const auto& [w, loc] : parts)
    for (std::size_t i = 0; i < loc->cone.size(); ++i) acc[loc->cone[i]] += w * loc->coefficients[i];
  RayLocation out;
  for (const auto& [r, c] : acc) {
    if (c == 0) continue;
    out.cone.push_back(r);
    out.coefficients.push_back(c);
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ray image overflows 64-bit integers");
  return r;
}

}  // namespace

Subdivision::Subdivision(ComplexPtr fine, ComplexPtr coarse, std::vector<RayLocation> ray_map)
    : fine_(std::move(fine)), coarse_(std::move(coarse)), ray_map_(std::move(ray_map)) {
  if (!fine_ || !coarse_) throw std::invalid_argument("subdivision needs both complexes");
  if (ray_map_.size() != fine_->ray_count()) throw std::invalid_argument("ray map size does not match fine complex");
  old_rays_.assign(coarse_->ray_count(), std::nullopt);
  for (std::size_t r = 0; r < ray_map_.size(); ++r) {
    const auto& loc = ray_map_[r];
    if (loc.cone.size() != loc.coefficients.size()) throw std::invalid_argument("ray map entry is malformed");
    for (auto c : loc.cone)
      if (c >= coarse_->ray_count()) throw std::invalid_argument("ray map refers to unknown coarse ray");
    if (loc.cone.size() == 1 && loc.coefficients[0] == 1) old_rays_[loc.cone[0]] = r;
  }
}

Subdivision Subdivision::identity(ComplexPtr cx) {
  std::vector<RayLocation> map;
  for (std::size_t r = 0; r < cx->ray_count(); ++r) map.push_back({{r}, {Rat(1)}});
  return Subdivision(cx, cx, std::move(map));
}

std::optional<std::size_t> Subdivision::fine_ray_of(std::size_t coarse_ray) const { return old_rays_.at(coarse_ray); }

Cone Subdivision::carrier(const Cone& fine_cone) const {
  Cone out;
  for (auto r : fine_cone) {
    const auto& c = ray_map_.at(r).cone;
    out.insert(out.end(), c.begin(), c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Point Subdivision::push_point(const Point& fine_point) const {
  Point p = locate(*fine_, fine_point);
  std::vector<std::pair<Rat, const RayLocation*>> parts;
  for (std::size_t i = 0; i < p.cone.size(); ++i) parts.emplace_back(p.coefficients[i], &ray_map_[p.cone[i]]);
  RayLocation loc = combine(parts);
  return Point{std::move(loc.cone), std::move(loc.coefficients)};
}

Diagnostics check_subdivision(const Subdivision& s) {
  const auto& fine = *s.fine();
  const auto& coarse = *s.coarse();
  auto fail = [](Diag code, std::string msg, std::string where = {}) {
    return Diagnostics{code, std::move(msg), std::move(where)};
  };
  if (fine.ambient_dim() != coarse.ambient_dim() || fine.dim() != coarse.dim() ||
      !(fine.inner_product() == coarse.inner_product()))
    return fail(Diag::complex_mismatch, "fine and coarse complexes differ in dimension or inner product");

  for (std::size_t r = 0; r < fine.ray_count(); ++r) {
    const auto& loc = s.location(r);
    const std::string& id = fine.ray(r).id;
    if (loc.cone.empty() || !coarse.has_cone(loc.cone))
      return fail(Diag::bad_location, "ray is not located on a coarse cone", id);
    for (const auto& c : loc.coefficients)
      if (c <= 0) return fail(Diag::bad_location, "location coefficients must be positive", id);
    RatVector img(fine.ambient_dim());
    for (std::size_t i = 0; i < loc.cone.size(); ++i)
      img = add(img, scale(loc.coefficients[i], coarse.image(loc.cone[i])));
    if (img != fine.image(r)) return fail(Diag::image_mismatch, "ray image differs from its location", id);
  }
  for (std::size_t r = 0; r < coarse.ray_count(); ++r)
    if (!s.fine_ray_of(r)) return fail(Diag::missing_old_ray, "coarse ray has no fine counterpart", coarse.ray(r).id);

  // Coverage: in barycentric coordinates of each coarse maximal cone, the fine
  // pieces are simplices whose normalized volumes must add up to one.
  const std::size_t n = coarse.dim();
  std::vector<Rat> covered(coarse.maximal_cones().size());
  for (const auto& fc : fine.maximal_cones()) {
    Cone car = s.carrier(fc);
    auto idx = coarse.index_of(car);
    if (!idx) return fail(Diag::carrier_not_cone, "fine cone is not inside a coarse cone", fine.cone_key(fc));
    if (car.size() != n) return fail(Diag::carrier_not_cone, "fine maximal cone has a lower-dimensional carrier",
                                     fine.cone_key(fc));
    RatMatrix rows(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& loc = s.location(fc[i]);
      Rat total = std::accumulate(loc.coefficients.begin(), loc.coefficients.end(), Rat(0));
      for (std::size_t j = 0; j < loc.cone.size(); ++j) {
        auto pos = std::lower_bound(car.begin(), car.end(), loc.cone[j]) - car.begin();
        rows(i, static_cast<std::size_t>(pos)) = loc.coefficients[j] / total;
      }
    }
    Rat det = determinant(std::move(rows));
    if (det == 0) return fail(Diag::coverage, "degenerate fine cone", fine.cone_key(fc));
    covered[*idx] += det < 0 ? Rat(-det) : det;
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (covered[i] != 1)
      return fail(Diag::coverage, "fine pieces cover " + to_string(covered[i]) + " of the coarse cone",
                  coarse.cone_key(coarse.maximal_cones()[i]));
  return {};
}

Subdivision compose(const Subdivision& outer, const Subdivision& inner) {
  if (outer.coarse() != inner.fine()) throw std::invalid_argument("compose: subdivisions do not chain");
  std::vector<RayLocation> map;
  map.reserve(outer.fine()->ray_count());
  for (std::size_t r = 0; r < outer.fine()->ray_count(); ++r) {
    const auto& loc = outer.location(r);
    std::vector<std::pair<Rat, const RayLocation*>> parts;
    for (std::size_t i = 0; i < loc.cone.size(); ++i) parts.emplace_back(loc.coefficients[i], &inner.location(loc.cone[i]));
    map.push_back(combine(parts));
  }
  return Subdivision(outer.fine(), inner.coarse(), std::move(map));
}

Subdivision stellar_subdivide(const ComplexPtr& cx, const Point& p, std::string new_id) {
  if (p.cone.size() != p.coefficients.size()) throw std::invalid_argument("stellar_subdivide: coefficient count mismatch");
  if (!cx->has_cone(p.cone)) throw std::invalid_argument("stellar_subdivide: not a cone of the complex");
  for (const auto& c : p.coefficients)
    if (c <= 0) throw std::invalid_argument("stellar_subdivide: point lies on a proper face (zero coefficient)");
  if (p.cone.size() < 2)
    throw std::invalid_argument("stellar_subdivide: a ray has no interior point to split at");
  // Scale to coprime integers; the split cone replacing ray t has determinant m_t.
  Integer l = 1;
  for (const auto& c : p.coefficients) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(c)));
  std::vector<Integer> m;
  Integer g = 0;
  for (const auto& c : p.coefficients) {
    m.push_back(Integer(boost::multiprecision::numerator(c)) * (l / Integer(boost::multiprecision::denominator(c))));
    g = boost::multiprecision::gcd(g, m.back());
  }
  for (auto& x : m) {
    x /= g;
    if (x != 1)
      throw std::invalid_argument("stellar_subdivide: split cone is not unimodular (determinant " + x.str() + ")");
  }
  RefinementBuilder b(cx);
  b.split(p.cone, std::move(new_id));
  return b.finish();
}

RefinementBuilder::RefinementBuilder(ComplexPtr base) : base_(std::move(base)) {
  rays_ = base_->rays();
  star_.assign(rays_.size(), {});
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    locations_.push_back({{r}, {Rat(1)}});
    ids_.emplace(rays_[r].id, r);
  }
  for (const auto& m : base_->maximal_cones()) {
    for (auto r : m) star_[r].push_back(maximal_.size());
    maximal_.push_back(m);
    alive_.push_back(true);
  }
}

std::vector<Cone> RefinementBuilder::maximal_cones() const {
  std::vector<Cone> out;
  for (std::size_t s = 0; s < maximal_.size(); ++s)
    if (alive_[s]) out.push_back(maximal_[s]);
  return out;
}

std::string RefinementBuilder::fresh_id(const Cone& c, std::string id) {
  if (!id.empty()) {
    if (ids_.count(id)) throw std::invalid_argument("ray id already in use: " + id);
    return id;
  }
  std::string joined;
  for (auto r : c) joined += (joined.empty() ? "" : "+") + rays_[r].id;
  id = joined.size() <= 24 ? joined : "r" + std::to_string(rays_.size());
  while (ids_.count(id)) id += "'";
  return id;
}

std::size_t RefinementBuilder::add_ray(const Cone& c, std::string id) {
  Ray ray{fresh_id(c, std::move(id)), IntVector(base_->ambient_dim(), 0)};
  std::vector<std::pair<Rat, const RayLocation*>> parts;
  for (auto r : c) {
    for (std::size_t j = 0; j < ray.image.size(); ++j) ray.image[j] = checked_add(ray.image[j], rays_[r].image[j]);
    parts.emplace_back(Rat(1), &locations_[r]);
  }
  RayLocation loc = combine(parts);
  const std::size_t idx = rays_.size();
  ids_.emplace(ray.id, idx);
  rays_.push_back(std::move(ray));
  locations_.push_back(std::move(loc));
  star_.emplace_back();
  return idx;
}

std::size_t RefinementBuilder::split(const Cone& c, std::string id) {
  if (c.size() < 2) throw std::invalid_argument("split: need a cone of dimension at least 2");
  std::vector<std::size_t> hits;
  for (auto s : star_.at(c[0]))
    if (alive_[s] && std::includes(maximal_[s].begin(), maximal_[s].end(), c.begin(), c.end())) hits.push_back(s);
  if (hits.empty()) throw std::invalid_argument("split: not a cone of the current complex");
  const std::size_t w = add_ray(c, std::move(id));
  for (auto s : hits) {
    alive_[s] = false;
    const Cone sigma = maximal_[s];
    for (auto t : c) {
      Cone piece;
      for (auto r : sigma)
        if (r != t) piece.push_back(r);
      piece.push_back(w);  // w is the largest index so far
      for (auto r : piece) star_[r].push_back(maximal_.size());
      maximal_.push_back(std::move(piece));
      alive_.push_back(true);
    }
  }
  return w;
}

std::size_t RefinementBuilder::split_maximal(std::size_t slot, std::string id) {
  if (!alive_.at(slot)) throw std::invalid_argument("split_maximal: cone already split");
  const Cone c = maximal_[slot];
  return split(c, std::move(id));
}

Subdivision RefinementBuilder::finish() const {
  ComplexDescription d = base_->describe();
  d.rays = rays_;
  d.cones.clear();
  for (std::size_t s = 0; s < maximal_.size(); ++s) {
    if (!alive_[s]) continue;
    std::vector<std::string> ids;
    for (auto r : maximal_[s]) ids.push_back(rays_[r].id);
    d.cones.push_back(std::move(ids));
  }
  return Subdivision(ConicalComplex::create(d), base_, locations_);
}

}  // namespace tropdeg
