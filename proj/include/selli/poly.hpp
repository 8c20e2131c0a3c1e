#pragma once

// Dense univariate polynomials over Z: resultants by fraction-free
// elimination, discriminants, and exact rational-root search.

#include <selli/arith.hpp>

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace selli {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  // coefficients[i] multiplies x^i
  explicit IntPolynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { normalize(); }
  IntPolynomial(std::initializer_list<long long> coefficients) {
    for (long long v : coefficients) c_.emplace_back(v);
    normalize();
  }

  static IntPolynomial monomial(BigInt coefficient, std::size_t exponent) {
    std::vector<BigInt> c(exponent + 1);
    c[exponent] = std::move(coefficient);
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return c_; }
  BigInt coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& leading() const {
    if (c_.empty()) throw error(errc::parameter, "zero polynomial has no leading coefficient");
    return c_.back();
  }

  BigInt operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // sum c_i p^i q^(deg-i) = q^deg * f(p/q); zero iff p/q is a root (q != 0).
  BigInt homogeneous_value(const BigInt& p, const BigInt& q) const {
    BigInt acc = 0;
    BigInt qpow = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * p + *it * qpow;
      qpow *= q;
    }
    return acc;
  }

  IntPolynomial derivative() const {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long long>(i));
    return IntPolynomial(std::move(d));
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& v : c_) g = gcd(g, v);
    return g;
  }

  IntPolynomial primitive_part() const {
    if (is_zero()) return *this;
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> c;
    for (const auto& v : c_) c.push_back(v / g);
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<BigInt> c;
    for (const auto& v : a.c_) c.push_back(-v);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  // e.g. "13*x^3 + x - 103"
  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const BigInt& v = c_[i];
      if (v == 0) continue;
      BigInt mag = abs(v);
      if (s.empty()) {
        if (v < 0) s += "-";
      } else {
        s += v < 0 ? " - " : " + ";
      }
      if (i == 0 || mag != 1) {
        s += mag.str();
        if (i > 0) s += "*";
      }
      if (i > 0) {
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational(BigInt num = 0, BigInt den = 1) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw error(errc::parameter, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  std::string to_string() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

 private:
  BigInt num_;
  BigInt den_;
};

// Fraction-free (Bareiss) determinant; the matrix is taken by value.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline std::vector<std::vector<BigInt>> sylvester_matrix(const IntPolynomial& f, const IntPolynomial& g) {
  const auto n = static_cast<std::size_t>(f.degree());
  const auto m = static_cast<std::size_t>(g.degree());
  const std::size_t size = n + m;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size));
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t i = 0; i <= n; ++i) s[row][row + i] = f.coefficient(n - i);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t i = 0; i <= m; ++i) s[m + row][row + i] = g.coefficient(m - i);
  return s;
}

// Res(f, g) = lc(f)^deg(g) * prod over roots r of f of g(r), i.e. the
// determinant of the Sylvester matrix with the rows of f first.
inline BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) throw error(errc::parameter, "resultant of the zero polynomial");
  if (f.degree() == 0) return ipow(f.leading(), static_cast<unsigned>(g.degree()));
  if (g.degree() == 0) return ipow(g.leading(), static_cast<unsigned>(f.degree()));
  return bareiss_determinant(sylvester_matrix(f, g));
}

// (-1)^(d(d-1)/2) * Res(f, f') / lc(f)
inline BigInt discriminant(const IntPolynomial& f) {
  if (f.degree() < 2) throw error(errc::parameter, "discriminant needs degree >= 2");
  const long long d = f.degree();
  BigInt r = resultant(f, f.derivative());
  BigInt q = r / f.leading();
  if (q * f.leading() != r) throw error(errc::non_integer_coefficient, "Res(f, f') not divisible by lc(f)");
  return ((d * (d - 1) / 2) % 2 == 0) ? q : BigInt(-q);
}

// Discriminant of a*x^3 + b*x^2 + c*x + d.
inline BigInt cubic_discriminant(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  if (a == 0) throw error(errc::parameter, "cubic_discriminant needs a != 0");
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

struct RationalRootSearch {
  std::vector<Rational> roots;  // ascending
  BigInt numerator_bound;       // candidate numerators divide this
  BigInt denominator_bound;     // candidate denominators divide this
  std::size_t candidates_tested = 0;
};

// Rational-root theorem over the primitive part, every candidate checked exactly.
inline RationalRootSearch rational_root_search(const IntPolynomial& f, const factor_budget& budget = {}) {
  if (f.is_zero()) throw error(errc::parameter, "rational roots of the zero polynomial");
  RationalRootSearch out;
  std::size_t shift = 0;
  while (f.coefficient(shift) == 0) ++shift;
  if (shift > 0) out.roots.emplace_back(0);
  IntPolynomial g(std::vector<BigInt>(f.coefficients().begin() + static_cast<std::ptrdiff_t>(shift), f.coefficients().end()));
  g = g.primitive_part();
  out.numerator_bound = abs(g.coefficient(0));
  out.denominator_bound = abs(g.leading());
  if (g.degree() >= 1) {
    const auto nums = divisors(out.numerator_bound, budget);
    const auto dens = divisors(out.denominator_bound, budget);
    for (const auto& q : dens) {
      for (const auto& p : nums) {
        if (gcd(p, q) != 1) continue;
        for (const BigInt& sp : {BigInt(p), BigInt(-p)}) {
          ++out.candidates_tested;
          if (g.homogeneous_value(sp, q) == 0) out.roots.emplace_back(sp, q);
        }
      }
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

inline std::vector<Rational> rational_roots(const IntPolynomial& f) { return rational_root_search(f).roots; }

}  // namespace selli
