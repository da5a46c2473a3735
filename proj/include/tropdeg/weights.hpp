#pragma once

#include "tropdeg/complex.hpp"

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace tropdeg {

enum class Flavor { lattice, euclidean };

/// A real weight on the k-dimensional cones of a complex. Rat values give the
/// lattice flavour, double values the Euclidean one.
template <class T>
class Weight {
 public:
  static constexpr Flavor flavor = std::is_same_v<T, Rat> ? Flavor::lattice : Flavor::euclidean;

  Weight(ComplexPtr cx, std::size_t k) : cx_(std::move(cx)), k_(k) {
    if (k_ > cx_->dim()) throw std::invalid_argument("weight dimension exceeds complex dimension");
    values_.assign(cx_->cones(k_).size(), T(0));
  }
  Weight(ComplexPtr cx, std::size_t k, std::vector<T> values) : Weight(std::move(cx), k) {
    if (values.size() != values_.size()) throw std::invalid_argument("weight value count mismatch");
    values_ = std::move(values);
  }

  const ComplexPtr& complex() const { return cx_; }
  std::size_t dim() const { return k_; }
  const std::vector<T>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  T at(const Cone& c) const {
    auto i = index(c);
    return values_[i];
  }
  void set(const Cone& c, T v) { values_[index(c)] = std::move(v); }

  Weight& operator+=(const Weight& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator*(const T& s, Weight a) {
    for (auto& v : a.values_) v *= s;
    return a;
  }
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.cx_ == b.cx_ && a.k_ == b.k_ && a.values_ == b.values_;
  }

 private:
  std::size_t index(const Cone& c) const {
    if (c.size() != k_) throw std::invalid_argument("cone has the wrong dimension for this weight");
    auto i = cx_->index_of(c);
    if (!i) throw std::invalid_argument("cone not in complex");
    return *i;
  }
  void check_same(const Weight& o) const {
    if (o.cx_ != cx_ || o.k_ != k_) throw std::invalid_argument("weights live on different complexes or dimensions");
  }

  ComplexPtr cx_;
  std::size_t k_;
  std::vector<T> values_;
};

using LatticeWeight = Weight<Rat>;
using EuclideanWeight = Weight<double>;

struct BalanceReport {
  bool balanced = true;
  std::optional<Cone> failing;  // first (k-1)-cone where the condition fails
  double residual = 0;          // Euclidean flavour: norm of the offending sum
};

/// Exact: sum of c(sigma) * lifting lies in span(tau).
BalanceReport check_balanced(const LatticeWeight& w);
/// Sum of c(sigma) * unit normal vanishes, tolerance 1e-9 times the largest |c(sigma)|.
BalanceReport check_balanced(const EuclideanWeight& w, double tol = 1e-9);
template <class T>
bool is_balanced(const Weight<T>& w) {
  return check_balanced(w).balanced;
}

template <class T>
bool is_positive(const Weight<T>& w) {
  for (const auto& v : w.values())
    if (v < 0) return false;
  return true;
}

/// Fine cone gets c(carrier) when dimensions agree, else 0.
template <class T>
Weight<T> pull_back(const Weight<T>& w, const Subdivision& s) {
  if (w.complex() != s.coarse()) throw std::invalid_argument("pull_back: weight is not on the coarse complex");
  const auto& fine = *s.fine();
  Weight<T> out(s.fine(), w.dim());
  const auto& cones = fine.cones(w.dim());
  for (std::size_t i = 0; i < cones.size(); ++i) {
    Cone car = s.carrier(cones[i]);
    if (car.size() == w.dim()) out[i] = w.at(car);
  }
  return out;
}

Rat degree(const LatticeWeight& w);
double degree(const EuclideanWeight& w);

/// c(sigma) * vol(sigma); 0-dimensional weights pass through unchanged.
EuclideanWeight normalize(const LatticeWeight& w);

/// All-ones top-dimensional weight.
LatticeWeight fundamental_cycle(const ComplexPtr& cx);

/// Basis of the lattice Minkowski weights of dimension k (exact nullspace of the balancing system).
std::vector<LatticeWeight> balanced_basis(const ComplexPtr& cx, std::size_t k);

/// A weight known to be balanced.
template <class T>
class TropicalCycle {
 public:
  explicit TropicalCycle(Weight<T> w) : w_(std::move(w)) {
    auto r = check_balanced(w_);
    if (!r.balanced) throw std::invalid_argument("weight is not balanced");
  }
  const Weight<T>& representative() const { return w_; }

 private:
  Weight<T> w_;
};

/// A complex with a strictly positive balanced top weight.
class BalancedSpace {
 public:
  /// Uses the fundamental cycle when no weight is given. Throws if not positive or unbalanced.
  explicit BalancedSpace(ComplexPtr cx);
  BalancedSpace(ComplexPtr cx, LatticeWeight top);

  const ComplexPtr& complex() const { return cx_; }
  const LatticeWeight& cycle() const { return cycle_; }
  const EuclideanWeight& normalized() const { return hat_; }

 private:
  ComplexPtr cx_;
  LatticeWeight cycle_;
  EuclideanWeight hat_;
};

}  // namespace tropdeg
