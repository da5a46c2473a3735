#include "tropdeg/io.hpp"

#include "tropdeg/fixtures.hpp"

#include <fstream>

namespace tropdeg::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

double as_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rat(j.get<std::string>()));
  throw FormatError("expected a number");
}

std::size_t ray_of(const ConicalComplex& cx, const std::string& id) {
  auto r = cx.find_ray(id);
  if (!r) throw FormatError("unknown ray '" + id + "'");
  return *r;
}

template <class T>
Json weight_json(const Weight<T>& w) {
  Json values = Json::object();
  const auto& cones = w.complex()->cones(w.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if constexpr (std::is_same_v<T, Rat>)
      values[w.complex()->cone_key(cones[i])] = rat_json(w[i]);
    else
      values[w.complex()->cone_key(cones[i])] = w[i];
  }
  return {{"dim", w.dim()}, {"flavor", w.flavor == Flavor::lattice ? "lattice" : "euclidean"}, {"values", values}};
}

RatVector ray_map(const Json& j, const ConicalComplex& cx) {
  if (!j.is_object()) throw FormatError("ray values must be an object keyed by ray id");
  RatVector v(cx.ray_count());
  for (const auto& [id, val] : j.items()) v[ray_of(cx, id)] = rat_from_json(val);
  return v;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("rational must be a \"p/q\" string or an integer");
}

Json rat_json(const Rat& r) { return to_string(r); }

ComplexDescription complex_description_from_json(const Json& j) {
  ComplexDescription d;
  const Json& ad = field(j, "ambient_dim");
  if (!ad.is_number_integer() || ad.get<std::int64_t>() < 0) throw FormatError("ambient_dim must be a nonnegative integer");
  d.ambient_dim = ad.get<std::size_t>();
  if (j.contains("inner_product") && !j.at("inner_product").is_null()) {
    const Json& g = j.at("inner_product");
    if (!g.is_array()) throw FormatError("inner_product must be a matrix");
    std::vector<RatVector> rows;
    for (const auto& row : g) {
      if (!row.is_array()) throw FormatError("inner_product must be a matrix");
      RatVector r;
      for (const auto& x : row) r.push_back(rat_from_json(x));
      rows.push_back(std::move(r));
    }
    for (const auto& r : rows)
      if (r.size() != rows.size()) throw FormatError("inner_product must be square");
    d.inner_product = RatMatrix::from_rows(rows);
  }
  for (const auto& r : field(j, "rays")) {
    Ray ray;
    ray.id = as_string(field(r, "id"), "ray id");
    for (const auto& x : field(r, "image")) {
      if (!x.is_number_integer()) throw FormatError("ray images must be integer vectors");
      ray.image.push_back(x.get<std::int64_t>());
    }
    d.rays.push_back(std::move(ray));
  }
  for (const auto& c : field(j, "cones")) {
    if (!c.is_array()) throw FormatError("cones must be lists of ray ids");
    std::vector<std::string> ids;
    for (const auto& id : c) ids.push_back(as_string(id, "ray id"));
    d.cones.push_back(std::move(ids));
  }
  return d;
}

ComplexPtr complex_from_json(const Json& j) { return ConicalComplex::create(complex_description_from_json(j)); }

Json to_json(const ConicalComplex& cx) {
  Json j;
  j["ambient_dim"] = cx.ambient_dim();
  if (!cx.inner_product().is_identity()) {
    Json g = Json::array();
    const auto& m = cx.inner_product().gram();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_json(m(i, k)));
      g.push_back(row);
    }
    j["inner_product"] = g;
  }
  Json rays = Json::array();
  for (const auto& r : cx.rays()) rays.push_back({{"id", r.id}, {"image", r.image}});
  j["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : cx.maximal_cones()) {
    Json ids = Json::array();
    for (auto r : c) ids.push_back(cx.ray(r).id);
    cones.push_back(ids);
  }
  j["cones"] = cones;
  return j;
}

AnyWeight weight_from_json(const Json& j, const ComplexPtr& cx) {
  const Json& dj = field(j, "dim");
  if (!dj.is_number_integer() || dj.get<std::int64_t>() < 0 || dj.get<std::size_t>() > cx->dim())
    throw FormatError("weight dim out of range");
  const std::size_t k = dj.get<std::size_t>();
  const std::string flavor = j.contains("flavor") ? as_string(j.at("flavor"), "flavor") : "lattice";
  const Json& values = field(j, "values");
  if (!values.is_object()) throw FormatError("weight values must be an object keyed by cone");
  auto index = [&](const std::string& key) {
    Cone c;
    try {
      c = cx->parse_cone_key(key);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    if (c.size() != k) throw FormatError("cone '" + key + "' has the wrong dimension");
    return *cx->index_of(c);
  };
  AnyWeight w;
  if (flavor == "lattice") {
    LatticeWeight lw(cx, k);
    for (const auto& [key, v] : values.items()) lw[index(key)] = rat_from_json(v);
    w.lattice = std::move(lw);
  } else if (flavor == "euclidean" || flavor == "euclid") {
    EuclideanWeight ew(cx, k);
    for (const auto& [key, v] : values.items()) ew[index(key)] = as_double(v);
    w.euclidean = std::move(ew);
  } else {
    throw FormatError("unknown weight flavor '" + flavor + "'");
  }
  return w;
}

Json to_json(const LatticeWeight& w) { return weight_json(w); }
Json to_json(const EuclideanWeight& w) { return weight_json(w); }

PLFunction function_from_json(const Json& j, const ComplexPtr& cx) {
  if (j.is_object() && j.contains("ray_values")) return PLFunction(cx, ray_map(j.at("ray_values"), *cx));
  if (j.is_object() && j.contains("divisor")) return from_divisor(divisor_from_json(j, cx));
  throw FormatError("function needs \"ray_values\" or \"divisor\"");
}

Json to_json(const PLFunction& f) {
  Json m = Json::object();
  for (std::size_t r = 0; r < f.values().size(); ++r) m[f.complex()->ray(r).id] = rat_json(f.at(r));
  return {{"ray_values", m}};
}

DivisorView divisor_from_json(const Json& j, const ComplexPtr& cx) {
  if (j.is_object() && j.contains("divisor")) return {cx, ray_map(j.at("divisor"), *cx)};
  if (j.is_object() && j.contains("ray_values")) return to_divisor(PLFunction(cx, ray_map(j.at("ray_values"), *cx)));
  throw FormatError("divisor needs \"divisor\" or \"ray_values\"");
}

Json divisor_json(const DivisorView& d) {
  Json m = Json::object();
  for (std::size_t r = 0; r < d.coefficients.size(); ++r) m[d.complex->ray(r).id] = rat_json(d.coefficients[r]);
  return {{"divisor", m}};
}

Subdivision subdivision_from_json(const Json& j, const ComplexPtr& coarse, ComplexPtr fine) {
  if (!fine) fine = complex_from_json(field(j, "fine"));
  const Json& locs = field(j, "locations");
  if (!locs.is_object()) throw FormatError("locations must be an object keyed by fine ray id");
  std::vector<RayLocation> map(fine->ray_count());
  std::vector<bool> seen(fine->ray_count());
  for (const auto& [id, loc] : locs.items()) {
    const std::size_t r = ray_of(*fine, id);
    RayLocation l;
    l.cone = {};
    std::vector<std::pair<std::size_t, Rat>> pairs;
    const Json& ids = field(loc, "cone");
    const Json& cs = field(loc, "coefficients");
    if (!ids.is_array() || !cs.is_array() || ids.size() != cs.size())
      throw FormatError("location of '" + id + "' needs matching cone and coefficients");
    for (std::size_t i = 0; i < ids.size(); ++i)
      pairs.emplace_back(ray_of(*coarse, as_string(ids[i], "ray id")), rat_from_json(cs[i]));
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [c, v] : pairs) {
      l.cone.push_back(c);
      l.coefficients.push_back(v);
    }
    map[r] = std::move(l);
    seen[r] = true;
  }
  for (std::size_t r = 0; r < seen.size(); ++r)
    if (!seen[r]) throw FormatError("no location for fine ray '" + fine->ray(r).id + "'");
  return Subdivision(fine, coarse, std::move(map));
}

Json to_json(const Subdivision& s) {
  Json locs = Json::object();
  for (std::size_t r = 0; r < s.fine()->ray_count(); ++r) {
    const auto& l = s.location(r);
    Json ids = Json::array(), cs = Json::array();
    for (std::size_t i = 0; i < l.cone.size(); ++i) {
      ids.push_back(s.coarse()->ray(l.cone[i]).id);
      cs.push_back(rat_json(l.coefficients[i]));
    }
    locs[s.fine()->ray(r).id] = {{"cone", ids}, {"coefficients", cs}};
  }
  return {{"fine", to_json(*s.fine())}, {"locations", locs}};
}

std::vector<BDivisorSequence> towers_from_json(const Json& j) {
  const bool nef = j.contains("claimed_nef") && j.at("claimed_nef").is_boolean() && j.at("claimed_nef").get<bool>();
  if (j.contains("generator")) {
    const std::string gen = as_string(j.at("generator"), "generator");
    if (gen != "neg-norm-ladder") throw FormatError("unknown tower generator '" + gen + "'");
    const ComplexPtr base = j.contains("fixture") ? fixtures::by_name(as_string(j.at("fixture"), "fixture")).fan
                                                  : complex_from_json(field(j, "complex"));
    const Json& steps = field(j, "steps");
    if (!steps.is_number_integer() || steps.get<std::int64_t>() < 0) throw FormatError("steps must be a nonnegative integer");
    const Ladder ladder = disk_ladder(base, steps.get<std::size_t>());
    std::vector<BDivisorSequence> out;
    for (const auto& slot : field(j, "slots")) {
      if (slot.is_string() && slot.get<std::string>() == "neg-norm")
        out.push_back(neg_norm_tower(ladder));
      else
        out.push_back(constant_tower(ladder, function_from_json(slot, base)));
    }
    return out;
  }
  const Json& levels = field(j, "levels");
  if (!levels.is_array() || levels.empty()) throw FormatError("levels must be a nonempty list");
  std::vector<std::vector<TowerLevel>> per_slot;
  ComplexPtr prev;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const Json& L = levels[k];
    const ComplexPtr cx = complex_from_json(field(L, "complex"));
    std::optional<Subdivision> s;
    if (k > 0) s = subdivision_from_json(field(L, "subdivision"), prev, cx);
    const Json& fs = field(L, "functions");
    if (!fs.is_array()) throw FormatError("functions must be a list");
    if (k == 0) per_slot.resize(fs.size());
    if (fs.size() != per_slot.size()) throw FormatError("every level needs the same number of functions");
    for (std::size_t i = 0; i < fs.size(); ++i) per_slot[i].push_back({cx, s, function_from_json(fs[i], cx)});
    prev = cx;
  }
  std::vector<BDivisorSequence> out;
  for (auto& levels_i : per_slot) out.emplace_back(std::move(levels_i), nef);
  return out;
}

Json to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"ray", a.at.id}, {"direction", a.at.unit_image}, {"mass", a.mass}});
  return {{"atoms", atoms}, {"total_variation", mu.total_variation()}, {"total_mass", mu.total_mass()}};
}

Json to_json(const ConvergenceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json e{{"step", s.step},
           {"cones", s.cones},
           {"degree", s.degree},
           {"total_variation", s.total_variation},
           {"pairing", s.pairing},
           {"naive_integral", s.naive_integral}};
    e["delta"] = std::isnan(s.delta) ? Json(nullptr) : Json(s.delta);
    steps.push_back(e);
  }
  return {{"steps", steps},
          {"degrees", r.degrees},
          {"limit", r.limit},
          {"cauchy_ok", r.cauchy_ok},
          {"final_measure", to_json(r.final_measure)}};
}

}  // namespace tropdeg::io
