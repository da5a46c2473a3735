#pragma once

#include "tropdeg/linalg.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tropdeg {

struct Ray {
  std::string id;
  IntVector image;
};

/// Sorted ray indices into the owning complex. The empty cone is the apex.
using Cone = std::vector<std::size_t>;

struct ConeHash {
  std::size_t operator()(const Cone& c) const noexcept {
    std::size_t h = c.size();
    for (auto r : c) h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// A point of |Pi|: nonnegative coefficients on the rays of a cone.
struct Point {
  Cone cone;
  RatVector coefficients;
};

enum class Diag {
  ok,
  bad_ambient_dim,
  bad_inner_product,
  empty_ray_id,
  duplicate_ray_id,
  image_dimension,
  zero_image,
  no_cones,
  empty_cone,
  unknown_ray,
  repeated_ray,
  duplicate_cone,
  dependent_images,
  impure,
  unused_ray,
  // subdivision checks
  complex_mismatch,
  bad_location,
  image_mismatch,
  carrier_not_cone,
  missing_old_ray,
  coverage,
};

std::string_view diag_name(Diag d);

struct Diagnostics {
  Diag code = Diag::ok;
  std::string message;
  std::string where;  // cone key or ray id of the first violation
  bool ok() const { return code == Diag::ok; }
};

/// Unvalidated input, as read from JSON.
struct ComplexDescription {
  std::size_t ambient_dim = 0;
  std::optional<RatMatrix> inner_product;
  std::vector<Ray> rays;
  std::vector<std::vector<std::string>> cones;  // maximal cones by ray id
};

Diagnostics validate(const ComplexDescription& desc);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Diagnostics d)
      : std::runtime_error(std::string(diag_name(d.code)) + ": " + d.message), diag(std::move(d)) {}
  Diagnostics diag;
};

/// One (tau, sigma) facet pair seen from tau.
struct Incidence {
  std::size_t sigma;     // index into cones(dim tau + 1)
  std::size_t extra;     // the ray of sigma not in tau
  RatVector projection;  // a_i with extra - sum a_i t_i orthogonal to span(tau)
  Rat perp_sq;           // squared norm of that orthogonal part
};

class ConicalComplex;
using ComplexPtr = std::shared_ptr<const ConicalComplex>;

class ConicalComplex {
 public:
  /// Throws ValidationError.
  static ComplexPtr create(const ComplexDescription& desc);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  const InnerProduct& inner_product() const { return ip_; }

  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(std::size_t r) const { return rays_.at(r); }
  const RatVector& image(std::size_t r) const { return images_.at(r); }
  std::optional<std::size_t> find_ray(std::string_view id) const;

  /// All k-dimensional cones, lexicographically sorted. cones(0) = {apex}.
  const std::vector<Cone>& cones(std::size_t k) const { return faces_.at(k); }
  const std::vector<Cone>& maximal_cones() const { return faces_.at(dim_); }
  std::optional<std::size_t> index_of(const Cone& c) const;
  bool has_cone(const Cone& c) const { return index_of(c).has_value(); }

  /// Cofaces of cones(k)[i], i.e. the (k+1)-cones containing it.
  const std::vector<Incidence>& cofaces(std::size_t k, std::size_t i) const { return cofaces_.at(k).at(i); }

  const Rat& gram_det(std::size_t k, std::size_t i) const { return gram_dets_.at(k).at(i); }

  std::string cone_key(const Cone& c) const;
  /// Inverse of cone_key; throws std::invalid_argument on unknown ids or non-cones.
  Cone parse_cone_key(std::string_view key) const;
  Cone cone_from_ids(const std::vector<std::string>& ids) const;

  std::vector<RatVector> images_of(const Cone& c) const;
  RatVector image_of(const Point& p) const;

  ComplexDescription describe() const;

 private:
  ConicalComplex() = default;
  void build();

  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  InnerProduct ip_ = InnerProduct::identity(0);
  std::vector<Ray> rays_;
  std::vector<RatVector> images_;
  std::unordered_map<std::string, std::size_t> ray_index_;
  std::vector<std::vector<Cone>> faces_;
  std::vector<std::unordered_map<Cone, std::size_t, ConeHash>> face_index_;
  std::vector<std::vector<std::vector<Incidence>>> cofaces_;
  std::vector<std::vector<Rat>> gram_dets_;
};

/// Minimal cone containing the point, with the matching coefficients. Throws on negative coefficients.
Point locate(const ConicalComplex& cx, const Point& p);

/// Unit vector in span(sigma), orthogonal to span(tau), pointing into sigma.
std::vector<double> euclidean_normal(const ConicalComplex& cx, const Cone& tau, const Cone& sigma);
std::vector<double> unit_normal(const ConicalComplex& cx, const Cone& tau, const Incidence& inc);
/// Image of the ray of sigma outside tau (a valid lifting since cones are unimodular).
IntVector lattice_normal(const ConicalComplex& cx, const Cone& tau, const Cone& sigma);
double cone_volume(const ConicalComplex& cx, const Cone& sigma);

struct SphereAtom {
  std::size_t ray = 0;
  std::string id;
  std::vector<double> unit_image;
};

SphereAtom sphere_atom(const ConicalComplex& cx, std::size_t ray);
double ray_norm(const ConicalComplex& cx, std::size_t ray);

// ---- subdivisions ----

/// Where a fine ray sits in the coarse complex.
struct RayLocation {
  Cone cone;
  RatVector coefficients;  // strictly positive, aligned with cone
};

class Subdivision {
 public:
  Subdivision(ComplexPtr fine, ComplexPtr coarse, std::vector<RayLocation> ray_map);
  static Subdivision identity(ComplexPtr cx);

  const ComplexPtr& fine() const { return fine_; }
  const ComplexPtr& coarse() const { return coarse_; }
  const RayLocation& location(std::size_t fine_ray) const { return ray_map_.at(fine_ray); }
  const std::vector<RayLocation>& ray_map() const { return ray_map_; }

  /// Fine ray sitting on the given coarse ray, if any.
  std::optional<std::size_t> fine_ray_of(std::size_t coarse_ray) const;
  /// Minimal coarse cone containing a fine cone.
  Cone carrier(const Cone& fine_cone) const;
  /// A fine point expressed in the coarse complex.
  Point push_point(const Point& fine_point) const;

 private:
  ComplexPtr fine_;
  ComplexPtr coarse_;
  std::vector<RayLocation> ray_map_;
  std::vector<std::optional<std::size_t>> old_rays_;
};

/// Checks the ray map (images, positivity, carriers) and exact coverage of every coarse maximal cone.
Diagnostics check_subdivision(const Subdivision& s);

/// outer: fine over mid, inner: mid over coarse.
Subdivision compose(const Subdivision& outer, const Subdivision& inner);

/// Stellar subdivision at a point in the relative interior of a cone of dimension >= 2.
/// Throws std::invalid_argument when the point is on a face or the result is not unimodular.
Subdivision stellar_subdivide(const ComplexPtr& cx, const Point& p, std::string new_id = {});

/// Accumulates barycentric stellar subdivisions, then emits one Subdivision over the base.
class RefinementBuilder {
 public:
  explicit RefinementBuilder(ComplexPtr base);

  std::size_t ray_count() const { return rays_.size(); }
  const IntVector& image(std::size_t r) const { return rays_.at(r).image; }
  const RayLocation& location(std::size_t r) const { return locations_.at(r); }
  /// Current maximal cones (sorted ray indices).
  std::vector<Cone> maximal_cones() const;

  /// Splits every maximal cone containing c at the sum of c's rays; returns the new ray.
  std::size_t split(const Cone& c, std::string id = {});
  /// Splits the maximal cone with this slot index; cheaper than split() for maximal cones.
  std::size_t split_maximal(std::size_t slot, std::string id = {});
  std::size_t slot_count() const { return maximal_.size(); }
  bool alive(std::size_t slot) const { return alive_.at(slot); }
  const Cone& slot(std::size_t s) const { return maximal_.at(s); }

  Subdivision finish() const;

 private:
  std::string fresh_id(const Cone& c, std::string id);
  std::size_t add_ray(const Cone& c, std::string id);

  ComplexPtr base_;
  std::vector<Ray> rays_;
  std::vector<RayLocation> locations_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<Cone> maximal_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::size_t>> star_;  // ray -> slots (may include dead)
};

}  // namespace tropdeg
