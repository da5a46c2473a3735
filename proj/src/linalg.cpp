#include "tropdeg/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace tropdeg {

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad number: " + std::string(s));
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad number: " + std::string(s));
  // Strip leading zeros: the string constructor reads "0..." as octal.
  std::size_t first = i;
  while (first + 1 < s.size() && s[first] == '0') ++first;
  Integer v(std::string(s.substr(first)));
  return s[0] == '-' ? Integer(-v) : v;
}

Integer pow10(std::size_t k) {
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    return Rat(parse_integer(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string whole(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) throw std::invalid_argument("bad number: " + std::string(text));
    Integer num = parse_integer(whole + frac);
    return Rat(num, pow10(frac.size()));
  }
  return Rat(parse_integer(text));
}

std::string to_string(const Rat& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_from_double(double x) { return Rat(x); }

RatVector to_rat(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

RatVector add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector scale(const Rat& s, const RatVector& a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::apply(const RatVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rat determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rat inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::string> check_gram(const RatMatrix& gram) {
  if (gram.rows() != gram.cols()) return "inner product matrix is not square";
  const std::size_t n = gram.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i)) return "inner product matrix is not symmetric";
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram(i, j);
    if (determinant(minor) <= 0) return "inner product matrix is not positive definite";
  }
  return std::nullopt;
}

InnerProduct::InnerProduct(RatMatrix gram) : gram_(std::move(gram)) {
  if (auto why = check_gram(gram_)) throw std::invalid_argument(*why);
  identity_ = gram_ == RatMatrix::identity(gram_.rows());
}

InnerProduct InnerProduct::identity(std::size_t d) { return InnerProduct(RatMatrix::identity(d)); }

Rat InnerProduct::operator()(const RatVector& a, const RatVector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw std::invalid_argument("dimension mismatch");
  if (is_identity()) return dot(a, b);
  return dot(a, gram_.apply(b));
}

double InnerProduct::operator()(const std::vector<double>& a, const std::vector<double>& b) const {
  if (a.size() != dim() || b.size() != dim()) throw std::invalid_argument("dimension mismatch");
  double s = 0;
  if (identity_) {
    for (std::size_t i = 0; i < dim(); ++i) s += a[i] * b[i];
    return s;
  }
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      if (gram_(i, j) == 0) continue;
      s += a[i] * to_double(gram_(i, j)) * b[j];
    }
  return s;
}

std::optional<RatVector> solve_in_span(std::span<const RatVector> basis, const RatVector& target) {
  const std::size_t k = basis.size();
  const std::size_t d = target.size();
  for (const auto& b : basis)
    if (b.size() != d) throw std::invalid_argument("dimension mismatch in solve_in_span");
  // Augmented system [b_1 ... b_k | target], d rows.
  RatMatrix m(d, k + 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i) m(i, j) = basis[j][i];
  for (std::size_t i = 0; i < d; ++i) m(i, k) = target[i];
  auto pivots = rref(m);
  std::size_t basis_pivots = 0;
  for (auto p : pivots) {
    if (p == k) return std::nullopt;
    ++basis_pivots;
  }
  if (basis_pivots != k) throw std::invalid_argument("solve_in_span: dependent basis");
  RatVector coeffs(k);
  for (std::size_t r = 0; r < k; ++r) coeffs[pivots[r]] = m(r, k);
  return coeffs;
}

Rat gram_det(std::span<const RatVector> vectors, const InnerProduct& ip) {
  const std::size_t k = vectors.size();
  RatMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g(i, j) = g(j, i) = ip(vectors[i], vectors[j]);
  Rat det = determinant(std::move(g));
  if (det == 0) throw std::invalid_argument("gram_det: dependent vectors");
  return det;
}

IntVector primitive(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Rat sqrt_upper(const Rat& x, int bits) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (x < 0) throw std::invalid_argument("sqrt_upper: negative input");
  Integer scale = Integer(1) << (2 * bits);
  Integer p = numerator(x) * scale;
  Integer q = denominator(x);
  Integer m = boost::multiprecision::sqrt(Integer(p / q));
  while (m * m * q < p) ++m;
  return Rat(m, Integer(1) << bits);
}

}  // namespace tropdeg
