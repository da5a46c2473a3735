#include "tropdeg/measure.hpp"

#include <algorithm>

namespace tropdeg {

namespace {

// Exact square root when x is a rational square, else the dyadic upper bound.
Rat sqrt_at_least(const Rat& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer p = numerator(x), q = denominator(x);
  Integer sp = boost::multiprecision::sqrt(p), sq = boost::multiprecision::sqrt(q);
  if (sp * sp == p && sq * sq == q) return Rat(sp, sq);
  return sqrt_upper(x);
}

Rat apply(const RatVector& form, const RatVector& x) { return dot(form, x); }

// Bitmask of the forms attaining the minimum at x.
std::uint64_t argmin_mask(const std::vector<RatVector>& forms, const RatVector& x) {
  std::vector<Rat> vals;
  for (const auto& l : forms) vals.push_back(apply(l, x));
  const Rat m = *std::min_element(vals.begin(), vals.end());
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < vals.size(); ++j)
    if (vals[j] == m) mask |= std::uint64_t{1} << j;
  return mask;
}

}  // namespace

AuxiliaryConcave::AuxiliaryConcave(const InnerProduct& ip) {
  const std::size_t d = ip.dim();
  if (d == 0 || d > 62) throw std::invalid_argument("auxiliary function: unsupported dimension");
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < d; ++i) {
    RatVector b(d);
    b[i] = 1;
    const RatVector e = b;
    for (const auto& prev : basis) b = sub(b, scale(ip(e, prev) / ip(prev, prev), prev));
    basis.push_back(std::move(b));
  }
  // w_i(x) = s_i <b_i, x> / <b_i, b_i>, as a covector in standard coordinates.
  for (const auto& b : basis) {
    const Rat nn = ip(b, b);
    coords_.push_back(scale(sqrt_at_least(nn) / nn, ip.gram().apply(b)));
  }
  const Rat two_r(2 * static_cast<long>(d));
  RatVector total(d);
  for (const auto& c : coords_) total = add(total, c);
  forms_.push_back(scale(Rat(-1), total));
  for (const auto& c : coords_) forms_.push_back(sub(scale(two_r, c), total));
}

Rat AuxiliaryConcave::evaluate(const RatVector& x) const {
  Rat m = apply(forms_[0], x);
  for (std::size_t j = 1; j < forms_.size(); ++j) m = std::min(m, apply(forms_[j], x));
  return m;
}

bool AuxiliaryConcave::is_pl_on(const ConicalComplex& cx) const {
  std::vector<std::uint64_t> masks(cx.ray_count());
  for (std::size_t r = 0; r < cx.ray_count(); ++r) masks[r] = argmin_mask(forms_, cx.image(r));
  for (const auto& m : cx.maximal_cones()) {
    std::uint64_t common = ~std::uint64_t{0};
    for (auto r : m) common &= masks[r];
    if (common == 0) return false;
  }
  return true;
}

PLFunction AuxiliaryConcave::on(const ComplexPtr& cx) const {
  if (!is_pl_on(*cx)) throw std::invalid_argument("auxiliary function is not piecewise linear on this complex");
  RatVector v(cx->ray_count());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = evaluate(cx->image(r));
  return PLFunction(cx, std::move(v));
}

Subdivision AuxiliaryConcave::refine(const ComplexPtr& cx) const {
  if (is_pl_on(*cx)) return Subdivision::identity(cx);
  if (cx->dim() != 2) throw std::invalid_argument("auxiliary refinement is implemented for two-dimensional complexes only");

  RefinementBuilder b(cx);
  // A leaf of the Stern-Brocot descent inside one original cone (a, b):
  // rays u, v with integer coordinates cu, cv in the basis (a, b).
  struct Leaf {
    std::size_t slot, u, v;
    Integer cu0, cu1, cv0, cv1;
  };
  auto cross = [](const Integer& a0, const Integer& a1, const Integer& b0, const Integer& b1) { return a0 * b1 - a1 * b0; };

  const auto original = cx->maximal_cones();
  for (std::size_t slot = 0; slot < original.size(); ++slot) {
    const std::size_t a = original[slot][0], bb = original[slot][1];
    // Breakpoints: directions alpha a + beta b where two forms agree.
    std::vector<std::pair<Integer, Integer>> targets;
    for (std::size_t i = 0; i < forms_.size(); ++i)
      for (std::size_t j = i + 1; j < forms_.size(); ++j) {
        const RatVector diff = sub(forms_[i], forms_[j]);
        const Rat p = dot(diff, cx->image(a)), q = dot(diff, cx->image(bb));
        if (!((p > 0 && q < 0) || (p < 0 && q > 0))) continue;
        Rat alpha = q < 0 ? Rat(-q) : q, beta = p < 0 ? Rat(-p) : p;
        // Clear denominators, then divide by the gcd.
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        Integer l = boost::multiprecision::lcm(Integer(denominator(alpha)), Integer(denominator(beta)));
        Integer x = Integer(numerator(alpha)) * (l / Integer(denominator(alpha)));
        Integer y = Integer(numerator(beta)) * (l / Integer(denominator(beta)));
        Integer g = boost::multiprecision::gcd(x, y);
        targets.emplace_back(x / g, y / g);
      }
    std::vector<Leaf> leaves{{slot, a, bb, 1, 0, 0, 1}};
    for (const auto& [t0, t1] : targets) {
      // Find the leaf containing the target (cu, cv is positively oriented).
      std::size_t li = 0;
      for (; li < leaves.size(); ++li) {
        const Leaf& L = leaves[li];
        if (cross(L.cu0, L.cu1, t0, t1) >= 0 && cross(t0, t1, L.cv0, L.cv1) >= 0) break;
      }
      if (li == leaves.size()) throw std::logic_error("auxiliary refinement lost a breakpoint");
      while (true) {
        Leaf L = leaves[li];
        if (cross(L.cu0, L.cu1, t0, t1) == 0 || cross(t0, t1, L.cv0, L.cv1) == 0) break;
        const std::size_t w = b.split_maximal(L.slot);
        const Integer cw0 = L.cu0 + L.cv0, cw1 = L.cu1 + L.cv1;
        // The two new slots are the last two; find which holds u.
        std::size_t slot_u = b.slot_count() - 1, slot_v = b.slot_count() - 2;
        const Cone& su = b.slot(slot_u);
        if (std::find(su.begin(), su.end(), L.u) == su.end()) std::swap(slot_u, slot_v);
        Leaf left{slot_u, L.u, w, L.cu0, L.cu1, cw0, cw1};
        Leaf right{slot_v, w, L.v, cw0, cw1, L.cv0, L.cv1};
        leaves[li] = left;
        leaves.push_back(right);
        if (cross(t0, t1, cw0, cw1) == 0) break;
        if (cross(cw0, cw1, t0, t1) > 0) li = leaves.size() - 1;
      }
    }
  }
  Subdivision s = b.finish();
  if (!is_pl_on(*s.fine())) throw std::logic_error("auxiliary refinement did not linearize the function");
  return s;
}

}  // namespace tropdeg
