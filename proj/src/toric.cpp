#include "tropdeg/toric.hpp"

#include "tropdeg/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <functional>
#include <set>

// Oracle code: deliberately keeps its own small determinant and hull routines.

namespace tropdeg {

namespace {

using Pt = RatVector;

Rat det2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return a * d - b * c; }

Rat det3(const Pt& a, const Pt& b, const Pt& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Pt minus(const Pt& a, const Pt& b) {
  Pt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Rat inner(const Pt& a, const Pt& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat inner(const IntVector& a, const Pt& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Rat cross2(const Pt& o, const Pt& a, const Pt& b) { return det2(a[0] - o[0], a[1] - o[1], b[0] - o[0], b[1] - o[1]); }

// Andrew's monotone chain, counterclockwise, collinear points dropped.
std::vector<Pt> hull2(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Facet3 {
  std::vector<Pt> polygon;  // cyclically ordered
};

Pt cross3(const Pt& a, const Pt& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Brute-force facets of a 3D hull: supporting planes through point triples.
std::vector<Facet3> facets3(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::set<std::pair<Pt, Rat>> seen;
  std::vector<Facet3> out;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Pt nrm = cross3(minus(pts[j], pts[i]), minus(pts[k], pts[i]));
        if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
        Rat h = inner(nrm, pts[i]);
        bool above = false, below = false;
        for (const auto& p : pts) {
          const Rat v = inner(nrm, p);
          above = above || v > h;
          below = below || v < h;
        }
        if (above && below) continue;
        if (above) {
          for (auto& x : nrm) x = -x;
          h = -h;
        }
        // Canonical scale: first nonzero component has absolute value 1.
        std::size_t lead = 0;
        while (nrm[lead] == 0) ++lead;
        const Rat s = abs(nrm[lead]);
        for (auto& x : nrm) x /= s;
        h /= s;
        if (!seen.insert({nrm, h}).second) continue;
        std::vector<Pt> on;
        for (const auto& p : pts)
          if (inner(nrm, p) == h) on.push_back(p);
        // Project along the largest normal component, order there.
        std::size_t drop = 0;
        for (std::size_t c = 1; c < 3; ++c)
          if (abs(nrm[c]) > abs(nrm[drop])) drop = c;
        std::map<Pt, Pt> back;
        std::vector<Pt> flat;
        for (const auto& p : on) {
          Pt q;
          for (std::size_t c = 0; c < 3; ++c)
            if (c != drop) q.push_back(p[c]);
          back[q] = p;
          flat.push_back(q);
        }
        Facet3 f;
        for (const auto& q : hull2(flat)) f.polygon.push_back(back[q]);
        out.push_back(std::move(f));
      }
  return out;
}

std::vector<Pt> hull_vertices(std::size_t dim, std::vector<Pt> pts) {
  if (pts.empty()) return pts;
  if (dim == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    if (*lo == *hi) return {*lo};
    return {*lo, *hi};
  }
  if (dim == 2) return hull2(std::move(pts));
  std::set<Pt> vs;
  const auto fs = facets3(pts);
  for (const auto& f : fs) vs.insert(f.polygon.begin(), f.polygon.end());
  if (fs.empty()) {  // fewer than three affinely independent points
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() > 2) pts = {pts.front(), pts.back()};
    return pts;
  }
  return {vs.begin(), vs.end()};
}

// Solves the square system A x = b by Cramer's rule, n <= 3.
std::optional<Pt> cramer(const std::vector<IntVector>& rows, const Pt& rhs) {
  const std::size_t n = rows.size();
  auto matrix_det = [&](std::size_t replace) {
    std::vector<Pt> a(n, Pt(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = j == replace ? rhs[i] : Rat(rows[i][j]);
    if (n == 1) return a[0][0];
    if (n == 2) return det2(a[0][0], a[0][1], a[1][0], a[1][1]);
    return det3(a[0], a[1], a[2]);
  };
  const Rat d = matrix_det(n);
  if (d == 0) return std::nullopt;
  Pt x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = matrix_det(j) / d;
  return x;
}

Integer floor_rat(const Rat& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer q = numerator(r) / denominator(r);
  if (q * denominator(r) > numerator(r)) --q;
  return q;
}

Integer ceil_rat(const Rat& r) { return -floor_rat(-r); }

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

// True if some nonzero d has <d, v_i> >= 0 for every normal, i.e. {<m, v_i> >= c_i} is unbounded.
bool recedes(const std::vector<IntVector>& normals) {
  const std::size_t n = normals[0].size();
  auto feasible = [&](const Pt& d) {
    bool pos = true, neg = true;
    for (const auto& v : normals) {
      const Rat s = inner(v, d);
      pos = pos && s >= 0;
      neg = neg && s <= 0;
    }
    return pos || neg;
  };
  // Full rank: some n normals are independent.
  bool full = false;
  for (std::size_t i = 0; i < normals.size() && !full; ++i) {
    if (n == 1) full = normals[i][0] != 0;
    for (std::size_t j = i + 1; j < normals.size() && !full && n >= 2; ++j) {
      if (n == 2) full = normals[i][0] * normals[j][1] != normals[i][1] * normals[j][0];
      for (std::size_t k = j + 1; k < normals.size() && !full && n == 3; ++k)
        full = det3(to_rat(normals[i]), to_rat(normals[j]), to_rat(normals[k])) != 0;
    }
  }
  if (!full) return true;
  // Otherwise an extreme ray of the recession cone is cut out by n-1 tight normals.
  if (n == 1) return feasible(Pt{Rat(1)});
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (n == 2) {
      if (feasible(Pt{Rat(-normals[i][1]), Rat(normals[i][0])})) return true;
      continue;
    }
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const Pt d = cross3(to_rat(normals[i]), to_rat(normals[j]));
      if (d[0] != 0 || d[1] != 0 || d[2] != 0)
        if (feasible(d)) return true;
    }
  }
  return false;
}

}  // namespace

Polytope Polytope::from_inequalities(std::vector<IntVector> normals, RatVector offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw std::invalid_argument("polytope: need one offset per normal");
  Polytope p;
  p.dim_ = normals[0].size();
  if (p.dim_ < 1 || p.dim_ > 3) throw std::invalid_argument("polytope: dimension must be 1, 2 or 3");
  for (const auto& v : normals)
    if (v.size() != p.dim_) throw std::invalid_argument("polytope: inconsistent normal dimension");
  p.normals_ = std::move(normals);
  p.offsets_ = std::move(offsets);

  const std::size_t m = p.normals_.size(), n = p.dim_;
  std::vector<std::size_t> pick(n);
  std::vector<Pt> cand;
  // Enumerate n-subsets of facets.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<IntVector> rows;
      Pt rhs;
      for (auto i : pick) {
        rows.push_back(p.normals_[i]);
        rhs.push_back(-p.offsets_[i]);
      }
      auto x = cramer(rows, rhs);
      if (!x) return;
      for (std::size_t i = 0; i < m; ++i)
        if (inner(p.normals_[i], *x) < -p.offsets_[i]) return;
      cand.push_back(std::move(*x));
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  p.vertices_ = std::move(cand);

  if (recedes(p.normals_)) throw std::invalid_argument("polytope: unbounded");
  return p;
}

Polytope Polytope::from_vertices(std::size_t dim, std::vector<RatVector> points) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("polytope: dimension must be 1, 2 or 3");
  for (const auto& q : points)
    if (q.size() != dim) throw std::invalid_argument("polytope: inconsistent point dimension");
  Polytope p;
  p.dim_ = dim;
  p.vertices_ = hull_vertices(dim, std::move(points));
  std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

Polytope Polytope::from_divisor(const DivisorView& d) {
  const auto& cx = *d.complex;
  if (cx.dim() != cx.ambient_dim()) throw std::invalid_argument("polytope: divisor must live on a complete fan");
  if (d.coefficients.size() != cx.ray_count()) throw std::invalid_argument("polytope: one coefficient per ray");
  std::vector<IntVector> normals;
  for (const auto& r : cx.rays()) normals.push_back(r.image);
  return from_inequalities(std::move(normals), d.coefficients);
}

Polytope Polytope::scaled(const Rat& s) const {
  Polytope p = *this;
  for (auto& a : p.offsets_) a *= s;
  for (auto& v : p.vertices_)
    for (auto& x : v) x *= s;
  if (s < 0) std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

Rat polytope_volume(const Polytope& p) {
  if (p.empty()) throw std::invalid_argument("polytope_volume: empty polytope");
  const auto& vs = p.vertices();
  if (p.dim() == 1) {
    auto [lo, hi] = std::minmax_element(vs.begin(), vs.end());
    return (*hi)[0] - (*lo)[0];
  }
  if (p.dim() == 2) {
    const auto h = hull2(vs);
    Rat twice = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
  }
  Pt c(3);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < 3; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(vs.size());
  Rat six = 0;
  for (const auto& f : facets3(vs)) {
    const auto& poly = f.polygon;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
      six += abs(det3(minus(poly[0], c), minus(poly[i], c), minus(poly[i + 1], c)));
  }
  return six / 6;
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Pt> pts;
  for (const auto& x : a.vertices())
    for (const auto& y : b.vertices()) {
      Pt s(x.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
      pts.push_back(std::move(s));
    }
  return Polytope::from_vertices(a.dim(), std::move(pts));
}

Rat mixed_volume(const std::vector<Polytope>& ps) {
  const std::size_t n = ps.size();
  if (n == 0) throw std::invalid_argument("mixed_volume: no polytopes");
  for (const auto& p : ps)
    if (p.dim() != n) throw std::invalid_argument("mixed_volume: need as many polytopes as the dimension");
  Rat total = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::optional<Polytope> sum;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sum = sum ? minkowski_sum(*sum, ps[i]) : ps[i];
        ++count;
      }
    const Rat v = polytope_volume(*sum);
    total += ((n - count) % 2 == 0) ? v : Rat(-v);
  }
  return total;
}

Integer count_lattice_points(const Polytope& p, std::int64_t scale) {
  if (scale < 1) throw std::invalid_argument("count_lattice_points: scale must be >= 1");
  if (!p.has_inequalities()) throw std::invalid_argument("count_lattice_points: needs an H-description");
  if (p.empty()) return 0;
  const std::size_t n = p.dim();
  std::vector<std::int64_t> lo(n), hi(n);
  double box = 1;
  for (std::size_t c = 0; c < n; ++c) {
    Rat mn = p.vertices()[0][c], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = ceil_rat(mn * scale).convert_to<std::int64_t>();
    hi[c] = floor_rat(mx * scale).convert_to<std::int64_t>();
    box *= static_cast<double>(std::max<std::int64_t>(0, hi[c] - lo[c] + 1));
  }
  if (box > 1e7) throw std::invalid_argument("count_lattice_points: bounding box exceeds 1e7 points");
  // <m, v> >= -l a, with integer left side.
  std::vector<std::int64_t> bound;
  for (const auto& a : p.offsets()) bound.push_back(ceil_rat(-a * scale).convert_to<std::int64_t>());
  std::int64_t count = 0;
  std::vector<std::int64_t> m(lo);
  if (box == 0) return 0;
  while (true) {
    bool inside = true;
    for (std::size_t i = 0; i < p.normals().size() && inside; ++i) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < n; ++c) s += m[c] * p.normals()[i][c];
      inside = s >= bound[i];
    }
    count += inside;
    std::size_t c = 0;
    while (c < n && ++m[c] > hi[c]) {
      m[c] = lo[c];
      ++c;
    }
    if (c == n) break;
  }
  return count;
}

Rat facet_lattice_length(const Polytope& p, const IntVector& normal) {
  if (p.dim() != 2) throw std::invalid_argument("facet_lattice_length: polygons only");
  const auto& vs = p.vertices();
  if (vs.empty()) return 0;
  Rat best = inner(normal, vs[0]);
  for (const auto& v : vs) best = std::min(best, inner(normal, v));
  std::vector<Pt> face;
  for (const auto& v : vs)
    if (inner(normal, v) == best) face.push_back(v);
  if (face.size() < 2) return 0;
  const std::int64_t g = std::gcd(normal[0], normal[1]);
  const Pt e{Rat(-normal[1] / g), Rat(normal[0] / g)};
  std::sort(face.begin(), face.end());
  const Pt d = minus(face.back(), face.front());
  return abs(inner(d, e)) / inner(e, e);
}

DegreeComparison compare_degrees(const ToricFixture& fx, const std::vector<DivisorView>& divisors) {
  const std::size_t n = fx.fan->dim();
  if (divisors.size() != n) throw std::invalid_argument("compare_degrees: need one divisor per dimension");
  std::vector<PLFunction> fs;
  std::vector<Polytope> ps;
  for (const auto& d : divisors) {
    if (d.complex != fx.fan) throw std::invalid_argument("compare_degrees: divisor is not on the fixture fan");
    fs.push_back(from_divisor(d));
    ps.push_back(Polytope::from_divisor(d));
  }
  const BalancedSpace space(fx.fan);
  DegreeComparison r;
  r.tropical = top_number_lattice(fs, space);
  r.oracle = mixed_volume(ps);
  r.equal = r.tropical == r.oracle;
  return r;
}

HilbertSamuelReport hilbert_samuel(const Polytope& p, const std::vector<std::int64_t>& scales) {
  HilbertSamuelReport rep;
  const Integer nf = factorial(p.dim());
  rep.volume_times_factorial = polytope_volume(p) * Rat(nf);
  const double target = to_double(rep.volume_times_factorial);
  for (auto l : scales) {
    HilbertSamuelRow row{l, count_lattice_points(p, l), 0, 0};
    row.normalized = row.count.convert_to<double>() * nf.convert_to<double>() / std::pow(static_cast<double>(l), p.dim());
    row.error = std::abs(row.normalized - target);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

BrunnMinkowskiReport brunn_minkowski(const DivisorView& d, const DivisorView& f, double slack) {
  if (d.complex != f.complex) throw std::invalid_argument("brunn_minkowski: divisors on different fans");
  DivisorView sum{d.complex, d.coefficients};
  for (std::size_t i = 0; i < sum.coefficients.size(); ++i) sum.coefficients[i] += f.coefficients.at(i);
  const std::size_t n = d.complex->dim();
  const Rat nf(factorial(n));
  BrunnMinkowskiReport r;
  r.d_top = nf * polytope_volume(Polytope::from_divisor(d));
  r.f_top = nf * polytope_volume(Polytope::from_divisor(f));
  r.sum_top = nf * polytope_volume(Polytope::from_divisor(sum));
  const double inv = 1.0 / static_cast<double>(n);
  r.lhs = std::pow(to_double(r.sum_top), inv);
  r.rhs = std::pow(to_double(r.d_top), inv) + std::pow(to_double(r.f_top), inv);
  r.superadditive = r.lhs >= r.rhs - slack;
  r.strict = r.lhs > r.rhs + slack;
  r.stated_direction = r.rhs >= r.lhs - slack;
  return r;
}

}  // namespace tropdeg
