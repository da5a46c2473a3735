#include "tropdeg/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace tropdeg {

std::string_view diag_name(Diag d) {
  switch (d) {
    case Diag::ok: return "ok";
    case Diag::bad_ambient_dim: return "bad_ambient_dim";
    case Diag::bad_inner_product: return "bad_inner_product";
    case Diag::empty_ray_id: return "empty_ray_id";
    case Diag::duplicate_ray_id: return "duplicate_ray_id";
    case Diag::image_dimension: return "image_dimension";
    case Diag::zero_image: return "zero_image";
    case Diag::no_cones: return "no_cones";
    case Diag::empty_cone: return "empty_cone";
    case Diag::unknown_ray: return "unknown_ray";
    case Diag::repeated_ray: return "repeated_ray";
    case Diag::duplicate_cone: return "duplicate_cone";
    case Diag::dependent_images: return "dependent_images";
    case Diag::impure: return "impure";
    case Diag::unused_ray: return "unused_ray";
    case Diag::complex_mismatch: return "complex_mismatch";
    case Diag::bad_location: return "bad_location";
    case Diag::image_mismatch: return "image_mismatch";
    case Diag::carrier_not_cone: return "carrier_not_cone";
    case Diag::missing_old_ray: return "missing_old_ray";
    case Diag::coverage: return "coverage";
  }
  return "unknown";
}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out += '|';
    out += sorted[i];
  }
  return out;
}

Diagnostics fail(Diag code, std::string msg, std::string where = {}) {
  return Diagnostics{code, std::move(msg), std::move(where)};
}

bool independent(const std::vector<const IntVector*>& vs, std::size_t d) {
  if (vs.size() > d) return false;
  if (vs.size() == 1) return true;
  if (vs.size() == 2 && d == 2) {
    const auto& a = *vs[0];
    const auto& b = *vs[1];
    return a[0] * b[1] - a[1] * b[0] != 0;
  }
  RatMatrix m(vs.size(), d);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = (*vs[i])[j];
  return rank(std::move(m)) == vs.size();
}

}  // namespace

Diagnostics validate(const ComplexDescription& desc) {
  const std::size_t d = desc.ambient_dim;
  if (d == 0) return fail(Diag::bad_ambient_dim, "ambient dimension must be positive");
  if (desc.inner_product) {
    const auto& g = *desc.inner_product;
    if (g.rows() != d || g.cols() != d)
      return fail(Diag::bad_inner_product, "inner product must be " + std::to_string(d) + "x" + std::to_string(d));
    if (auto why = check_gram(g)) return fail(Diag::bad_inner_product, *why);
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < desc.rays.size(); ++i) {
    const auto& r = desc.rays[i];
    if (r.id.empty()) return fail(Diag::empty_ray_id, "ray " + std::to_string(i) + " has an empty id");
    if (r.id.find('|') != std::string::npos)
      return fail(Diag::empty_ray_id, "ray id may not contain '|'", r.id);
    if (!index.emplace(r.id, i).second) return fail(Diag::duplicate_ray_id, "duplicate ray id", r.id);
    if (r.image.size() != d)
      return fail(Diag::image_dimension, "image has " + std::to_string(r.image.size()) + " entries, expected " +
                                             std::to_string(d), r.id);
    if (std::all_of(r.image.begin(), r.image.end(), [](auto x) { return x == 0; }))
      return fail(Diag::zero_image, "ray image is zero", r.id);
  }

  if (desc.cones.empty()) return fail(Diag::no_cones, "complex has no cones");
  std::set<std::vector<std::size_t>> seen;
  std::vector<bool> used(desc.rays.size(), false);
  const std::size_t n = desc.cones.front().size();
  for (const auto& cone : desc.cones) {
    const std::string key = join_ids(cone);
    if (cone.empty()) return fail(Diag::empty_cone, "empty maximal cone");
    std::vector<std::size_t> members;
    for (const auto& id : cone) {
      auto it = index.find(id);
      if (it == index.end()) return fail(Diag::unknown_ray, "cone refers to unknown ray " + id, key);
      members.push_back(it->second);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
      return fail(Diag::repeated_ray, "cone lists a ray twice", key);
    if (!seen.insert(members).second) return fail(Diag::duplicate_cone, "cone listed twice", key);
    std::vector<const IntVector*> imgs;
    for (auto m : members) imgs.push_back(&desc.rays[m].image);
    if (!independent(imgs, d)) return fail(Diag::dependent_images, "ray images are linearly dependent", key);
    if (cone.size() != n)
      return fail(Diag::impure, "cone has dimension " + std::to_string(cone.size()) + ", expected " +
                                    std::to_string(n), key);
    for (auto m : members) used[m] = true;
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) return fail(Diag::unused_ray, "ray lies in no cone", desc.rays[i].id);
  return {};
}

ComplexPtr ConicalComplex::create(const ComplexDescription& desc) {
  if (auto diag = validate(desc); !diag.ok()) throw ValidationError(std::move(diag));
  std::shared_ptr<ConicalComplex> cx(new ConicalComplex());
  cx->ambient_dim_ = desc.ambient_dim;
  cx->ip_ = desc.inner_product ? InnerProduct(*desc.inner_product) : InnerProduct::identity(desc.ambient_dim);
  cx->rays_ = desc.rays;
  for (std::size_t i = 0; i < cx->rays_.size(); ++i) {
    cx->images_.push_back(to_rat(cx->rays_[i].image));
    cx->ray_index_.emplace(cx->rays_[i].id, i);
  }
  cx->dim_ = desc.cones.front().size();
  std::vector<Cone> maximal;
  maximal.reserve(desc.cones.size());
  for (const auto& c : desc.cones) {
    Cone cone;
    for (const auto& id : c) cone.push_back(cx->ray_index_.at(id));
    std::sort(cone.begin(), cone.end());
    maximal.push_back(std::move(cone));
  }
  cx->faces_.assign(cx->dim_ + 1, {});
  cx->faces_[cx->dim_] = std::move(maximal);
  cx->build();
  return cx;
}

void ConicalComplex::build() {
  const std::size_t n = dim_;
  // Faces of each dimension from subsets of maximal cones.
  std::vector<std::unordered_set<Cone, ConeHash>> sets(n + 1);
  for (const auto& m : faces_[n]) {
    const std::size_t subsets = std::size_t{1} << m.size();
    for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
      Cone f;
      for (std::size_t b = 0; b < m.size(); ++b)
        if (mask & (std::size_t{1} << b)) f.push_back(m[b]);
      sets[f.size()].insert(std::move(f));
    }
  }
  for (std::size_t k = 0; k < n; ++k) faces_[k].assign(sets[k].begin(), sets[k].end());
  for (auto& fs : faces_) std::sort(fs.begin(), fs.end());

  face_index_.assign(n + 1, {});
  for (std::size_t k = 0; k <= n; ++k) {
    face_index_[k].reserve(faces_[k].size());
    for (std::size_t i = 0; i < faces_[k].size(); ++i) face_index_[k].emplace(faces_[k][i], i);
  }

  cofaces_.assign(n, {});
  gram_dets_.assign(n + 1, {});
  gram_dets_[0] = {Rat(1)};
  for (std::size_t k = 0; k < n; ++k) {
    cofaces_[k].assign(faces_[k].size(), {});
    gram_dets_[k + 1].assign(faces_[k + 1].size(), Rat(0));
    for (std::size_t s = 0; s < faces_[k + 1].size(); ++s) {
      const Cone& sigma = faces_[k + 1][s];
      for (std::size_t p = 0; p < sigma.size(); ++p) {
        Cone tau = sigma;
        tau.erase(tau.begin() + static_cast<std::ptrdiff_t>(p));
        const std::size_t t = face_index_[k].at(tau);
        const std::size_t extra = sigma[p];
        const RatVector& e = images_[extra];
        Incidence inc{s, extra, RatVector(k), ip_(e, e)};
        if (k == 1) {
          const RatVector& t0 = images_[tau[0]];
          inc.projection[0] = ip_(t0, e) / ip_(t0, t0);
        } else if (k > 1) {
          std::vector<RatVector> cols(k, RatVector(k));
          RatVector rhs(k);
          for (std::size_t i = 0; i < k; ++i) {
            rhs[i] = ip_(images_[tau[i]], e);
            for (std::size_t j = 0; j < k; ++j) cols[j][i] = ip_(images_[tau[i]], images_[tau[j]]);
          }
          inc.projection = *solve_in_span(cols, rhs);
        }
        for (std::size_t i = 0; i < k; ++i) inc.perp_sq -= inc.projection[i] * ip_(images_[tau[i]], e);
        // The last facet visited fixes the Gram determinant; all facets agree.
        gram_dets_[k + 1][s] = gram_dets_[k][t] * inc.perp_sq;
        cofaces_[k][t].push_back(std::move(inc));
      }
    }
  }
  // Keep coface lists ordered by sigma index.
  for (auto& level : cofaces_)
    for (auto& list : level)
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.sigma < b.sigma; });
}

std::optional<std::size_t> ConicalComplex::find_ray(std::string_view id) const {
  auto it = ray_index_.find(std::string(id));
  if (it == ray_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ConicalComplex::index_of(const Cone& c) const {
  if (c.size() > dim_) return std::nullopt;
  auto it = face_index_[c.size()].find(c);
  if (it == face_index_[c.size()].end()) return std::nullopt;
  return it->second;
}

std::string ConicalComplex::cone_key(const Cone& c) const {
  std::vector<std::string> ids;
  for (auto r : c) ids.push_back(rays_.at(r).id);
  return join_ids(ids);
}

Cone ConicalComplex::cone_from_ids(const std::vector<std::string>& ids) const {
  Cone c;
  for (const auto& id : ids) {
    auto r = find_ray(id);
    if (!r) throw std::invalid_argument("unknown ray id: " + id);
    c.push_back(*r);
  }
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw std::invalid_argument("repeated ray in cone");
  if (!has_cone(c)) throw std::invalid_argument("not a cone of the complex: " + join_ids(ids));
  return c;
}

Cone ConicalComplex::parse_cone_key(std::string_view key) const {
  std::vector<std::string> ids;
  if (!key.empty()) {
    std::size_t start = 0;
    while (true) {
      auto bar = key.find('|', start);
      ids.emplace_back(key.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
  }
  return cone_from_ids(ids);
}

std::vector<RatVector> ConicalComplex::images_of(const Cone& c) const {
  std::vector<RatVector> out;
  out.reserve(c.size());
  for (auto r : c) out.push_back(images_.at(r));
  return out;
}

RatVector ConicalComplex::image_of(const Point& p) const {
  if (p.cone.size() != p.coefficients.size()) throw std::invalid_argument("point: coefficient count mismatch");
  RatVector x(ambient_dim_);
  for (std::size_t i = 0; i < p.cone.size(); ++i) {
    const auto& v = images_.at(p.cone[i]);
    for (std::size_t j = 0; j < ambient_dim_; ++j) x[j] += p.coefficients[i] * v[j];
  }
  return x;
}

ComplexDescription ConicalComplex::describe() const {
  ComplexDescription d;
  d.ambient_dim = ambient_dim_;
  if (!ip_.is_identity()) d.inner_product = ip_.gram();
  d.rays = rays_;
  for (const auto& m : maximal_cones()) {
    std::vector<std::string> ids;
    for (auto r : m) ids.push_back(rays_[r].id);
    d.cones.push_back(std::move(ids));
  }
  return d;
}

Point locate(const ConicalComplex& cx, const Point& p) {
  if (p.cone.size() != p.coefficients.size()) throw std::invalid_argument("locate: coefficient count mismatch");
  if (!cx.has_cone(p.cone)) throw std::invalid_argument("locate: not a cone of the complex");
  Point out;
  for (std::size_t i = 0; i < p.cone.size(); ++i) {
    if (p.coefficients[i] < 0) throw std::invalid_argument("locate: negative coefficient");
    if (p.coefficients[i] > 0) {
      out.cone.push_back(p.cone[i]);
      out.coefficients.push_back(p.coefficients[i]);
    }
  }
  return out;
}

namespace {

const Incidence& find_incidence(const ConicalComplex& cx, const Cone& tau, const Cone& sigma) {
  if (sigma.size() != tau.size() + 1 || !std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end()))
    throw std::invalid_argument("tau is not a facet of sigma");
  auto t = cx.index_of(tau);
  auto s = cx.index_of(sigma);
  if (!t || !s) throw std::invalid_argument("cone not in complex");
  for (const auto& inc : cx.cofaces(tau.size(), *t))
    if (inc.sigma == *s) return inc;
  throw std::logic_error("missing incidence");
}

}  // namespace

std::vector<double> euclidean_normal(const ConicalComplex& cx, const Cone& tau, const Cone& sigma) {
  return unit_normal(cx, tau, find_incidence(cx, tau, sigma));
}

std::vector<double> unit_normal(const ConicalComplex& cx, const Cone& tau, const Incidence& inc) {
  RatVector perp = cx.image(inc.extra);
  for (std::size_t i = 0; i < tau.size(); ++i) perp = sub(perp, scale(inc.projection[i], cx.image(tau[i])));
  const double norm = std::sqrt(to_double(inc.perp_sq));
  std::vector<double> out = to_double(perp);
  for (auto& x : out) x /= norm;
  return out;
}

IntVector lattice_normal(const ConicalComplex& cx, const Cone& tau, const Cone& sigma) {
  return cx.ray(find_incidence(cx, tau, sigma).extra).image;
}

double cone_volume(const ConicalComplex& cx, const Cone& sigma) {
  auto i = cx.index_of(sigma);
  if (!i) throw std::invalid_argument("cone_volume: not a cone of the complex");
  return std::sqrt(to_double(cx.gram_det(sigma.size(), *i)));
}

double ray_norm(const ConicalComplex& cx, std::size_t ray) {
  const auto& v = cx.image(ray);
  return std::sqrt(to_double(cx.inner_product()(v, v)));
}

SphereAtom sphere_atom(const ConicalComplex& cx, std::size_t ray) {
  SphereAtom a{ray, cx.ray(ray).id, to_double(cx.image(ray))};
  const double n = ray_norm(cx, ray);
  for (auto& x : a.unit_image) x /= n;
  return a;
}

}  // namespace tropdeg
