#include "tropdeg/weights.hpp"

#include <cmath>

namespace tropdeg {

BalanceReport check_balanced(const LatticeWeight& w) {
  const auto& cx = *w.complex();
  if (w.dim() == 0) return {};
  const std::size_t k = w.dim() - 1;
  const auto& taus = cx.cones(k);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    RatVector sum(cx.ambient_dim());
    bool any = false;
    for (const auto& inc : cx.cofaces(k, t)) {
      const Rat& c = w[inc.sigma];
      if (c == 0) continue;
      any = true;
      const auto& v = cx.image(inc.extra);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c * v[j];
    }
    if (!any) continue;
    const auto basis = cx.images_of(taus[t]);
    if (!solve_in_span(basis, sum)) return {false, taus[t], 0.0};
  }
  return {};
}

BalanceReport check_balanced(const EuclideanWeight& w, double tol) {
  const auto& cx = *w.complex();
  if (w.dim() == 0) return {};
  const std::size_t k = w.dim() - 1;
  const auto& taus = cx.cones(k);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    std::vector<double> sum(cx.ambient_dim(), 0.0);
    double biggest = 0;
    for (const auto& inc : cx.cofaces(k, t)) {
      const double c = w[inc.sigma];
      if (c == 0) continue;
      biggest = std::max(biggest, std::abs(c));
      auto n = unit_normal(cx, taus[t], inc);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c * n[j];
    }
    if (biggest == 0) continue;
    const double residual = std::sqrt(std::max(0.0, cx.inner_product()(sum, sum)));
    if (residual > tol * biggest) return {false, taus[t], residual};
  }
  return {};
}

Rat degree(const LatticeWeight& w) {
  if (w.dim() != 0) throw std::invalid_argument("degree: weight is not zero-dimensional");
  return w[0];
}

double degree(const EuclideanWeight& w) {
  if (w.dim() != 0) throw std::invalid_argument("degree: weight is not zero-dimensional");
  return w[0];
}

EuclideanWeight normalize(const LatticeWeight& w) {
  const auto& cx = *w.complex();
  std::vector<double> values(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    values[i] = to_double(w[i]);
    if (w.dim() > 0 && w[i] != 0) values[i] *= std::sqrt(to_double(cx.gram_det(w.dim(), i)));
  }
  return EuclideanWeight(w.complex(), w.dim(), std::move(values));
}

LatticeWeight fundamental_cycle(const ComplexPtr& cx) {
  return LatticeWeight(cx, cx->dim(), std::vector<Rat>(cx->maximal_cones().size(), Rat(1)));
}

std::vector<LatticeWeight> balanced_basis(const ComplexPtr& cx, std::size_t k) {
  if (k > cx->dim()) throw std::invalid_argument("balanced_basis: dimension too large");
  const std::size_t unknowns = cx->cones(k).size();
  std::vector<RatVector> rows;
  if (k > 0) {
    const auto& taus = cx->cones(k - 1);
    for (std::size_t t = 0; t < taus.size(); ++t) {
      // Functionals vanishing on span(tau).
      std::vector<RatVector> annihilators;
      if (taus[t].empty()) {
        for (std::size_t j = 0; j < cx->ambient_dim(); ++j) {
          RatVector e(cx->ambient_dim());
          e[j] = 1;
          annihilators.push_back(std::move(e));
        }
      } else {
        annihilators = nullspace(RatMatrix::from_rows(cx->images_of(taus[t])));
      }
      for (const auto& m : annihilators) {
        RatVector row(unknowns);
        for (const auto& inc : cx->cofaces(k - 1, t)) row[inc.sigma] = dot(m, cx->image(inc.extra));
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<LatticeWeight> out;
  if (rows.empty()) {
    for (std::size_t i = 0; i < unknowns; ++i) {
      std::vector<Rat> v(unknowns);
      v[i] = 1;
      out.emplace_back(cx, k, std::move(v));
    }
    return out;
  }
  for (auto& v : nullspace(RatMatrix::from_rows(rows))) out.emplace_back(cx, k, std::move(v));
  return out;
}

BalancedSpace::BalancedSpace(ComplexPtr cx) : BalancedSpace(cx, fundamental_cycle(cx)) {}

BalancedSpace::BalancedSpace(ComplexPtr cx, LatticeWeight top)
    : cx_(std::move(cx)), cycle_(std::move(top)), hat_(normalize(cycle_)) {
  if (cycle_.complex() != cx_ || cycle_.dim() != cx_->dim())
    throw std::invalid_argument("balanced space needs a top-dimensional weight on its complex");
  for (const auto& v : cycle_.values())
    if (v <= 0) throw std::invalid_argument("balanced space weight must be strictly positive");
  if (!is_balanced(cycle_)) throw std::invalid_argument("balanced space weight is not balanced");
}

}  // namespace tropdeg
