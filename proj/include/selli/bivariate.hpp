#pragma once

// Sparse polynomials in x and y with integer coefficients, and a small
// parser for curve equations such as "y^2 = x^3 + 1".

#include <selli/poly.hpp>

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace selli {

class BivariatePolynomial {
 public:
  using exponents = std::pair<unsigned, unsigned>;  // (x, y)

  BivariatePolynomial() = default;

  void add_term(const BigInt& coefficient, unsigned x_exp, unsigned y_exp) {
    auto& slot = terms_[{x_exp, y_exp}];
    slot += coefficient;
    if (slot == 0) terms_.erase({x_exp, y_exp});
  }

  const std::map<exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt coefficient(unsigned x_exp, unsigned y_exp) const {
    auto it = terms_.find({x_exp, y_exp});
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  unsigned degree_x() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }
  unsigned degree_y() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }

  BigInt operator()(const BigInt& x, const BigInt& y) const {
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) acc += c * ipow(x, e.first) * ipow(y, e.second);
    return acc;
  }

  BivariatePolynomial operator-() const {
    BivariatePolynomial out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
  }
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(c, e.first, e.second);
    return a;
  }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a + (-b); }
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  IntPolynomial to_univariate() const {
    std::vector<BigInt> c(degree_x() + 1);
    for (const auto& [e, v] : terms_) {
      if (e.second != 0) throw error(errc::parse, "expected a polynomial in x only");
      c[e.first] = v;
    }
    return IntPolynomial(std::move(c));
  }

  // Terms by descending total degree, then x-degree.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<exponents, BigInt>> order(terms_.begin(), terms_.end());
    std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
      unsigned tl = l.first.first + l.first.second;
      unsigned tr = r.first.first + r.first.second;
      if (tl != tr) return tl > tr;
      return l.first.first > r.first.first;
    });
    std::string s;
    for (const auto& [e, v] : order) {
      BigInt mag = abs(v);
      if (s.empty()) {
        if (v < 0) s += "-";
      } else {
        s += v < 0 ? " - " : " + ";
      }
      std::string mono;
      auto put = [&](char var, unsigned k) {
        if (k == 0) return;
        if (!mono.empty()) mono += "*";
        mono += var;
        if (k > 1) mono += "^" + std::to_string(k);
      };
      put('x', e.first);
      put('y', e.second);
      if (mono.empty()) s += mag.str();
      else if (mag == 1) s += mono;
      else s += mag.str() + "*" + mono;
    }
    return s;
  }

 private:
  std::map<exponents, BigInt> terms_;
};

namespace detail {

class poly_parser {
 public:
  explicit poly_parser(std::string_view text) : s_(text) {}

  BivariatePolynomial expression() {
    BivariatePolynomial out;
    skip();
    bool first = true;
    while (pos_ < s_.size() && s_[pos_] != '=') {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      term(out, sign);
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return out;
  }

  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool done() {
    skip();
    return pos_ == s_.size();
  }

 private:
  void term(BivariatePolynomial& out, int sign) {
    BigInt coefficient = sign;
    unsigned ex = 0, ey = 0;
    bool any = false;
    while (true) {
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coefficient *= number();
      } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'y')) {
        char var = s_[pos_++];
        unsigned k = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          k = static_cast<unsigned>(number());
        }
        (var == 'x' ? ex : ey) += k;
      } else {
        fail("expected a number, x or y");
      }
      any = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (any) out.add_term(coefficient, ex, ey);
  }

  BigInt number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw error(errc::parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BivariatePolynomial parse_polynomial(std::string_view text) {
  detail::poly_parser p(text);
  auto out = p.expression();
  if (!p.done()) throw error(errc::parse, "trailing input in '" + std::string(text) + "'");
  return out;
}

// "lhs = rhs" becomes lhs - rhs; a bare expression is taken as "= 0".
inline BivariatePolynomial parse_curve(std::string_view text) {
  detail::poly_parser p(text);
  auto lhs = p.expression();
  if (p.done()) return lhs;
  p.expect('=');
  auto rhs = p.expression();
  if (!p.done()) throw error(errc::parse, "trailing input in '" + std::string(text) + "'");
  return lhs - rhs;
}

}  // namespace selli
