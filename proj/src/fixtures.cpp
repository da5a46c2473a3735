#include "tropdeg/fixtures.hpp"

namespace tropdeg::fixtures {

namespace {

ComplexPtr make(std::size_t ambient, std::vector<Ray> rays, std::vector<std::vector<std::string>> cones) {
  ComplexDescription d;
  d.ambient_dim = ambient;
  d.rays = std::move(rays);
  d.cones = std::move(cones);
  return ConicalComplex::create(d);
}

}  // namespace

ComplexPtr p2() {
  static const ComplexPtr cx =
      make(2, {{"e1", {1, 0}}, {"e2", {0, 1}}, {"e3", {-1, -1}}}, {{"e1", "e2"}, {"e2", "e3"}, {"e1", "e3"}});
  return cx;
}

ComplexPtr p1xp1() {
  static const ComplexPtr cx = make(2, {{"e1", {1, 0}}, {"e2", {0, 1}}, {"-e1", {-1, 0}}, {"-e2", {0, -1}}},
                                    {{"e1", "e2"}, {"e2", "-e1"}, {"-e1", "-e2"}, {"-e2", "e1"}});
  return cx;
}

ComplexPtr hirzebruch1() {
  static const ComplexPtr cx = make(2, {{"e1", {1, 0}}, {"e12", {1, 1}}, {"e2", {0, 1}}, {"e3", {-1, -1}}},
                                    {{"e1", "e12"}, {"e12", "e2"}, {"e2", "e3"}, {"e3", "e1"}});
  return cx;
}

ComplexPtr p3() {
  static const ComplexPtr cx = make(3, {{"e1", {1, 0, 0}}, {"e2", {0, 1, 0}}, {"e3", {0, 0, 1}}, {"e4", {-1, -1, -1}}},
                                    {{"e1", "e2", "e3"}, {"e1", "e2", "e4"}, {"e1", "e3", "e4"}, {"e2", "e3", "e4"}});
  return cx;
}

ComplexPtr elliptic() {
  static const ComplexPtr cx = make(1, {{"O", {2}}, {"P", {-1}}, {"Q", {-1}}}, {{"O"}, {"P"}, {"Q"}});
  return cx;
}

std::vector<std::string> names() { return {"p2", "p1xp1", "hirzebruch1", "p3"}; }

ToricFixture by_name(std::string_view name) {
  if (name == "p2") return {"p2", p2()};
  if (name == "p1xp1") return {"p1xp1", p1xp1()};
  if (name == "hirzebruch1") return {"hirzebruch1", hirzebruch1()};
  if (name == "p3") return {"p3", p3()};
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

DivisorView divisor(const ComplexPtr& cx, const std::map<std::string, Rat>& mult) {
  DivisorView d{cx, RatVector(cx->ray_count())};
  for (const auto& [id, m] : mult) {
    auto r = cx->find_ray(id);
    if (!r) throw std::invalid_argument("unknown ray '" + id + "'");
    d.coefficients[*r] = m;
  }
  return d;
}

}  // namespace tropdeg::fixtures
