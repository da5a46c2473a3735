#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropdeg {

using Integer = boost::multiprecision::mpz_int;
// Expression templates off so `auto` behaves.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using RatVector = std::vector<Rat>;
using IntVector = std::vector<std::int64_t>;

/// Accepts "p/q", "p", or a decimal like "0.25" (converted exactly).
Rat parse_rat(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);
double to_double(const Rat& r);
/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

RatVector to_rat(const IntVector& v);
std::vector<double> to_double(const RatVector& v);

RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const Rat& s, const RatVector& a);
Rat dot(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  RatVector row(std::size_t i) const;
  RatVector apply(const RatVector& x) const;
  RatMatrix transpose() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

Rat determinant(RatMatrix m);
std::size_t rank(RatMatrix m);
/// Basis of {x : m x = 0}.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Symmetric positive definite Gram matrix on Q^d.
class InnerProduct {
 public:
  /// Throws std::invalid_argument unless square, symmetric and positive definite.
  explicit InnerProduct(RatMatrix gram);
  static InnerProduct identity(std::size_t d);

  std::size_t dim() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }
  bool is_identity() const { return identity_; }
  Rat operator()(const RatVector& a, const RatVector& b) const;
  double operator()(const std::vector<double>& a, const std::vector<double>& b) const;

  friend bool operator==(const InnerProduct&, const InnerProduct&) = default;

 private:
  RatMatrix gram_;
  bool identity_ = false;
};

/// Reason an InnerProduct candidate is rejected, empty if acceptable.
std::optional<std::string> check_gram(const RatMatrix& gram);

/// Coefficients of target in the basis, or nullopt when target is outside the span.
/// Throws on dimension mismatch or dependent basis.
std::optional<RatVector> solve_in_span(std::span<const RatVector> basis, const RatVector& target);

/// det(<v_i, v_j>); throws if the vectors are dependent.
Rat gram_det(std::span<const RatVector> vectors, const InnerProduct& ip);

/// v / gcd(v); throws on zero vector.
IntVector primitive(const IntVector& v);

/// Smallest dyadic q (denominator 2^bits) with q >= sqrt(x), x >= 0. Checked exactly.
Rat sqrt_upper(const Rat& x, int bits = 48);

}  // namespace tropdeg
