#include "tropdeg/bdivisor.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tropdeg {

BDivisorSequence::BDivisorSequence(std::vector<TowerLevel> levels, bool claimed_nef)
    : levels_(std::move(levels)), claimed_nef_(claimed_nef) {
  if (levels_.empty()) throw std::invalid_argument("b-divisor tower needs at least one level");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const auto& L = levels_[k];
    if (L.function.complex() != L.complex) throw std::invalid_argument("tower function is not on its level's complex");
    if (k == 0) continue;
    if (!L.from_previous) throw std::invalid_argument("tower level is missing its subdivision");
    if (L.from_previous->fine() != L.complex || L.from_previous->coarse() != levels_[k - 1].complex)
      throw std::invalid_argument("tower subdivision does not connect consecutive levels");
  }
}

TowerDiagnostics bdiv_validate(const BDivisorSequence& b, bool check_monotone, const std::optional<MonotoneShift>& shift) {
  TowerDiagnostics d;
  for (std::size_t k = 1; k < b.size(); ++k) {
    const auto& s = *b.level(k).from_previous;
    const PLFunction pushed = push_forward(b.level(k).function, s);
    const auto& prev = b.level(k - 1).function;
    for (std::size_t r = 0; r < prev.values().size(); ++r)
      if (pushed.at(r) != prev.at(r)) {
        d.compatible = false;
        d.level = k;
        d.ray = s.coarse()->ray(r).id;
        d.message = "value " + to_string(pushed.at(r)) + " on level " + std::to_string(k) + " differs from " +
                    to_string(prev.at(r));
        break;
      }
    if (!d.compatible) break;
  }
  if (!check_monotone) return d;

  if (shift && (shift->base.complex() != b.level(0).complex || shift->epsilon.size() < b.size()))
    throw std::invalid_argument("monotone shift does not match the tower");
  d.monotone = true;
  std::optional<PLFunction> a = shift ? std::optional<PLFunction>(shift->base) : std::nullopt;
  auto shifted = [&](std::size_t k, const PLFunction& f) { return a ? f + shift->epsilon[k] * *a : f; };
  PLFunction prev = shifted(0, b.level(0).function);
  for (std::size_t k = 1; k < b.size(); ++k) {
    const auto& s = *b.level(k).from_previous;
    if (a) a = pull_back(*a, s);
    const PLFunction lifted = pull_back(prev, s);
    const PLFunction cur = shifted(k, b.level(k).function);
    for (std::size_t r = 0; r < cur.values().size(); ++r)
      if (lifted.at(r) > cur.at(r)) {
        d.monotone = false;
        d.monotone_level = k;
        return d;
      }
    prev = cur;
  }
  return d;
}

namespace {

double cone_angle(const InnerProduct& ip, const IntVector& a, const IntVector& b) {
  const RatVector x = to_rat(a), y = to_rat(b);
  const Rat xy = ip(x, y);
  const Rat gd = ip(x, x) * ip(y, y) - xy * xy;
  return std::atan2(std::sqrt(to_double(gd)), to_double(xy));
}

}  // namespace

Ladder disk_ladder(const ComplexPtr& base, std::size_t steps) {
  if (base->dim() != 2) throw std::invalid_argument("disk ladder needs a two-dimensional complex");
  Ladder ladder;
  ladder.complexes.push_back(base);
  const auto& ip = base->inner_product();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double limit = std::numbers::pi / (3.0 * std::ldexp(1.0, static_cast<int>(k)));
    RefinementBuilder b(ladder.complexes.back());
    std::vector<std::size_t> work;
    for (std::size_t s = 0; s < b.slot_count(); ++s) work.push_back(s);
    while (!work.empty()) {
      const std::size_t s = work.back();
      work.pop_back();
      const Cone& c = b.slot(s);
      if (cone_angle(ip, b.image(c[0]), b.image(c[1])) <= limit) continue;
      b.split_maximal(s);
      work.push_back(b.slot_count() - 1);
      work.push_back(b.slot_count() - 2);
    }
    Subdivision step = b.finish();
    ladder.complexes.push_back(step.fine());
    ladder.steps.push_back(std::move(step));
  }
  return ladder;
}

BDivisorSequence neg_norm_tower(const Ladder& ladder) {
  std::vector<TowerLevel> levels;
  for (std::size_t k = 0; k < ladder.complexes.size(); ++k) {
    const auto& cx = ladder.complexes[k];
    RatVector v(cx->ray_count());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = -sqrt_upper(cx->inner_product()(cx->image(r), cx->image(r)), 60);
    std::optional<Subdivision> s;
    if (k > 0) s = ladder.steps[k - 1];
    levels.push_back({cx, std::move(s), PLFunction(cx, std::move(v))});
  }
  return BDivisorSequence(std::move(levels), true);
}

BDivisorSequence constant_tower(const Ladder& ladder, const PLFunction& f0) {
  if (f0.complex() != ladder.complexes.front()) throw std::invalid_argument("function is not on the ladder's base");
  std::vector<TowerLevel> levels{{f0.complex(), std::nullopt, f0}};
  for (std::size_t k = 1; k < ladder.complexes.size(); ++k) {
    const auto& s = ladder.steps[k - 1];
    levels.push_back({ladder.complexes[k], s, pull_back(levels.back().function, s)});
  }
  return BDivisorSequence(std::move(levels));
}

ConvergenceReport converge_degree(std::span<const BDivisorSequence> towers, double tol, std::size_t max_steps,
                                  const ConvergeOptions& opts) {
  if (towers.empty()) throw std::invalid_argument("converge_degree needs at least one tower");
  std::size_t levels = towers[0].size();
  for (const auto& t : towers) levels = std::min(levels, t.size());
  levels = std::min(levels, max_steps + 1);
  const std::size_t n = towers[0].level(0).complex->dim();
  if (towers.size() != n)
    throw std::invalid_argument("converge_degree needs " + std::to_string(n) + " towers, got " +
                                std::to_string(towers.size()));

  ConvergenceReport rep;
  double sup = 0;
  std::size_t below = 0;
  for (std::size_t k = 0; k < levels; ++k) {
    const ComplexPtr& cx = towers[0].level(k).complex;
    for (const auto& t : towers)
      if (t.level(k).complex != cx) throw std::invalid_argument("towers do not share a refinement ladder");
    const BalancedSpace space(cx);
    std::vector<PLFunction> fs;
    for (const auto& t : towers) fs.push_back(t.level(k).function);

    ConvergenceStep st;
    st.step = k;
    st.cones = cx->maximal_cones().size();
    EuclideanWeight z = space.normalized();
    for (std::size_t i = n; i-- > 1;) z = euclidean_product(fs[i], z);
    DiscreteMeasure mu = measure(z);
    st.degree = degree(euclidean_product(fs[0], z));
    st.pairing = pairing(fs[0], mu);
    st.naive_integral = naive_integral(fs[0], mu);
    st.total_variation = mu.total_variation();
    st.delta = k == 0 ? std::numeric_limits<double>::quiet_NaN() : std::abs(st.degree - rep.degrees.back());

    if (opts.slot_pairings) {
      for (std::size_t i = 0; i < n; ++i) {
        EuclideanWeight w = space.normalized();
        for (std::size_t j = n; j-- > 0;)
          if (j != i) w = euclidean_product(fs[j], w);
        st.slot_pairings.push_back(pairing(fs[i], measure(w)));
      }
    }
    if (opts.variation_bound) {
      for (std::size_t i = 1; i < n; ++i) sup = std::max(sup, sphere_range(fs[i]).sup_abs());
      st.sup_bound = sup;
      const AuxiliaryConcave aux(cx->inner_product());
      if (aux.is_pl_on(*cx)) {
        st.aux_size = size(space.normalized(), aux);
        st.variation_bound = std::pow(sup, static_cast<double>(n - 1)) * st.aux_size;
      } else {
        st.aux_size = st.variation_bound = std::numeric_limits<double>::quiet_NaN();
      }
    }

    rep.degrees.push_back(st.degree);
    rep.steps.push_back(std::move(st));
    rep.final_measure = std::move(mu);
    below = (k > 0 && rep.steps.back().delta < tol) ? below + 1 : 0;
    if (below >= 3) {
      rep.cauchy_ok = true;
      break;
    }
  }
  rep.limit = rep.degrees.back();
  return rep;
}

namespace {

bool products_positive(const std::vector<const PLFunction*>& fs, const BalancedSpace& space) {
  LatticeWeight c = space.cycle();
  for (const auto* f : fs) {
    c = lattice_product(*f, c);
    if (!is_positive(c)) return false;
  }
  return true;
}

// All multisets of indices of size r, each as a nondecreasing vector.
void multisets(std::size_t m, std::size_t r, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == r) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = cur.empty() ? 0 : cur.back(); i < m; ++i) {
    cur.push_back(i);
    multisets(m, r, cur, out);
    cur.pop_back();
  }
}

}  // namespace

AdmissibleReport admissible_check(std::span<const PLFunction> family, const BalancedSpace& space, std::size_t samples,
                                  std::uint64_t seed) {
  AdmissibleReport rep;
  if (family.empty()) return rep;
  for (const auto& f : family)
    if (f.complex() != space.complex()) throw std::invalid_argument("family member is not on the balanced space");
  const std::size_t n = space.complex()->dim();
  for (std::size_t r = 1; r <= n && rep.products_positive; ++r) {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur;
    multisets(family.size(), r, cur, sets);
    for (const auto& s : sets) {
      std::vector<const PLFunction*> fs;
      for (auto i : s) fs.push_back(&family[i]);
      if (!products_positive(fs, space)) {
        rep.products_positive = false;
        rep.witness = "product of members";
        for (auto i : s) rep.witness += " " + std::to_string(i);
        break;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, 5);
  for (std::size_t t = 0; t < samples && rep.cone_closed; ++t) {
    std::vector<PLFunction> combos;
    for (std::size_t r = 0; r < n; ++r) {
      PLFunction g(space.complex());
      for (const auto& f : family) g += Rat(coef(rng)) * f;
      combos.push_back(std::move(g));
    }
    std::vector<const PLFunction*> fs;
    for (const auto& g : combos) fs.push_back(&g);
    if (!products_positive(fs, space)) {
      rep.cone_closed = false;
      if (rep.witness.empty()) rep.witness = "random conic combination, sample " + std::to_string(t);
    }
  }
  return rep;
}

}  // namespace tropdeg
