#pragma once

// Prime fields, extension fields F_{p^k} with table-driven arithmetic, and
// exhaustive affine point counting / smoothness tests for plane curves.

#include <selli/arith.hpp>
#include <selli/bivariate.hpp>
#include <selli/parallel.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace selli {

class PrimeField {
 public:
  static constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 31;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p > kMaxPrime) throw error(errc::unsupported_parameter, "prime field characteristic above 2^31");
    if (!is_prime(BigInt(p))) throw error(errc::parameter, std::to_string(p) + " is not prime");
  }

  std::uint64_t p() const { return p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// Dense polynomials over F_p, index = degree, normalized (no trailing zeros).
namespace fp_poly {

using poly = std::vector<std::uint64_t>;

inline void trim(poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p < 2^31, so products fit in 64 bits
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline poly sub(poly a, const poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline poly mod(poly a, const poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = a.back() * inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - factor * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline poly mulmod(const poly& a, const poly& b, const poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return mod(std::move(c), m, p);
}

inline poly powmod(poly base, std::uint64_t e, const poly& m, std::uint64_t p) {
  poly r{1};
  base = mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return mod(std::move(r), m, p);
}

inline poly gcd(poly a, poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Monic f of degree k is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2.
inline bool is_irreducible(const poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  poly h{0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = powmod(h, p, f, p);
    poly g = gcd(sub(h, poly{0, 1}, p), f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace fp_poly

struct enumeration_budget {
  // Upper bound on field-elements-per-axis products (q^2) for exhaustive scans.
  std::uint64_t max_pairs = 100'000'000;

  // Largest field order q with q^2 within budget.
  std::uint64_t max_field_order() const {
    std::uint64_t q = static_cast<std::uint64_t>(iroot(BigInt(max_pairs), 2));
    return q;
  }
};

// Smallest monic irreducible of degree k in lexicographic order, where
// x^k + c_{k-1} x^{k-1} + ... + c_0 is ranked by sum c_i p^i.
inline fp_poly::poly find_irreducible(const PrimeField& field, unsigned k) {
  if (k == 0) throw error(errc::parameter, "extension degree must be >= 1");
  const std::uint64_t p = field.p();
  for (std::uint64_t n = 0;; ++n) {
    fp_poly::poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t v = n;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = v % p;
      v /= p;
    }
    if (fp_poly::is_irreducible(f, p)) return f;
  }
}

// F_{p^k}. Elements are indices sum c_i p^i of their coefficient vectors
// against the modulus; multiplication goes through discrete-log tables.
class ExtField {
 public:
  using element = std::uint32_t;

  ExtField(PrimeField base, unsigned k, std::uint64_t max_order = 100'000'000)
      : ExtField(base, k, find_irreducible(base, k), max_order) {}

  ExtField(PrimeField base, unsigned k, fp_poly::poly modulus, std::uint64_t max_order = 100'000'000)
      : base_(base), k_(k), modulus_(std::move(modulus)) {
    const std::uint64_t p = base_.p();
    if (modulus_.size() != k + 1 || modulus_.back() != 1)
      throw error(errc::parameter, "modulus must be monic of degree k");
    if (!fp_poly::is_irreducible(modulus_, p)) throw error(errc::parameter, "modulus is reducible");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > max_order) throw error(errc::budget_exceeded, "field order above enumeration budget");
    }
    q_ = q;
    build_tables();
  }

  const PrimeField& base() const { return base_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return q_; }
  std::uint64_t characteristic() const { return base_.p(); }
  const fp_poly::poly& modulus() const { return modulus_; }

  element from_int(std::uint64_t residue) const { return static_cast<element>(residue % base_.p()); }

  // Zech logarithms: g^i + g^j = g^(i + Z(j - i)) with Z(n) = log(1 + g^n).
  element add(element a, element b) const {
    if (k_ == 1) return static_cast<element>((std::uint64_t{a} + b) % base_.p());
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint64_t n = q_ - 1;
    const std::uint32_t la = log_[a];
    const std::uint32_t z = zech_[(log_[b] + n - la) % n];
    return z == kNoLog ? 0 : exp_[la + z];
  }

  element neg(element a) const {
    const std::uint64_t p = base_.p();
    std::uint64_t out = 0, place = 1, x = a;
    for (unsigned i = 0; i < k_; ++i) {
      out += ((p - x % p) % p) * place;
      x /= p;
      place *= p;
    }
    return static_cast<element>(out);
  }

  element sub(element a, element b) const { return add(a, neg(b)); }

  element mul(element a, element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  element pow(element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  }

  element generator() const { return exp_.size() > 1 ? exp_[1] : 1; }

  std::vector<std::uint64_t> coefficients(element a) const {
    std::vector<std::uint64_t> c(k_);
    std::uint64_t x = a;
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % base_.p();
      x /= base_.p();
    }
    return c;
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  element add_digits(element a, element b) const {
    const std::uint64_t p = base_.p();
    std::uint64_t out = 0, place = 1;
    std::uint64_t x = a, y = b;
    for (unsigned i = 0; i < k_; ++i) {
      out += ((x % p + y % p) % p) * place;
      x /= p;
      y /= p;
      place *= p;
    }
    return static_cast<element>(out);
  }

  fp_poly::poly to_poly(std::uint64_t idx) const {
    fp_poly::poly c = coefficients(static_cast<element>(idx));
    fp_poly::trim(c);
    return c;
  }

  std::uint64_t to_index(const fp_poly::poly& c) const {
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
      out += (i < c.size() ? c[i] : 0) * place;
      place *= base_.p();
    }
    return out;
  }

  void build_tables() {
    const std::uint64_t p = base_.p();
    const std::uint64_t n = q_ - 1;
    log_.assign(q_, 0);
    exp_.assign(2 * n, 0);
    if (n == 1) {  // F_2
      exp_ = {1, 1};
      return;
    }
    std::vector<std::uint64_t> prime_factors;
    for (const auto& [r, e] : factorize(BigInt(n))) prime_factors.push_back(static_cast<std::uint64_t>(r));
    fp_poly::poly g;
    for (std::uint64_t cand = 2; cand < q_; ++cand) {
      g = to_poly(cand);
      bool primitive = true;
      for (std::uint64_t r : prime_factors) {
        if (fp_poly::powmod(g, n / r, modulus_, p) == fp_poly::poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
    fp_poly::poly cur{1};
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t idx = to_index(cur);
      exp_[i] = exp_[i + n] = static_cast<element>(idx);
      log_[idx] = static_cast<std::uint32_t>(i);
      cur = fp_poly::mulmod(cur, g, modulus_, p);
    }
    zech_.assign(n, kNoLog);
    for (std::uint64_t i = 0; i < n; ++i) {
      const element v = add_digits(1, exp_[i]);
      if (v != 0) zech_[i] = log_[v];
    }
  }

  PrimeField base_;
  unsigned k_;
  fp_poly::poly modulus_;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<element> exp_;
  std::vector<std::uint32_t> zech_;
};

// Plane curve F(x, y) = 0 with coefficients reduced into [0, p).
class CurveEquationModP {
 public:
  CurveEquationModP(const BivariatePolynomial& f, PrimeField field) : field_(field), source_(f) {
    const BigInt p(field.p());
    for (const auto& [e, c] : f.terms()) {
      BigInt r = c % p;
      if (r < 0) r += p;
      if (r != 0) terms_.push_back({e.first, e.second, static_cast<std::uint64_t>(r)});
    }
    degree_y_ = f.degree_y();
    degree_x_ = f.degree_x();
  }

  struct term {
    unsigned x_exp;
    unsigned y_exp;
    std::uint64_t coefficient;
  };

  const PrimeField& field() const { return field_; }
  const std::vector<term>& terms() const { return terms_; }
  const BivariatePolynomial& source() const { return source_; }
  unsigned degree_x() const { return degree_x_; }
  unsigned degree_y() const { return degree_y_; }

 private:
  PrimeField field_;
  BivariatePolynomial source_;
  std::vector<term> terms_;
  unsigned degree_x_ = 0;
  unsigned degree_y_ = 0;
};

namespace detail {

// Coefficient polynomials A_j(x) of F = sum_j A_j(x) y^j, dense in x.
inline std::vector<std::vector<std::uint64_t>> y_slices(const CurveEquationModP& curve) {
  std::vector<std::vector<std::uint64_t>> slices(curve.degree_y() + 1,
                                                 std::vector<std::uint64_t>(curve.degree_x() + 1, 0));
  for (const auto& t : curve.terms()) slices[t.y_exp][t.x_exp] = t.coefficient;
  return slices;
}

template <typename Field>
typename Field::element horner(const Field& field, const std::vector<typename Field::element>& coeffs,
                               typename Field::element at) {
  typename Field::element acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.add(field.mul(acc, at), *it);
  return acc;
}

}  // namespace detail

// Exact count of affine solutions over the field, partitioned over x.
inline std::uint64_t count_affine(const CurveEquationModP& curve, const ExtField& field, unsigned threads = 1,
                                  const enumeration_budget& budget = {}) {
  if (curve.field().p() != field.characteristic())
    throw error(errc::parameter, "curve and field characteristics differ");
  const std::uint64_t q = field.order();
  if (q > budget.max_pairs / q) throw error(errc::budget_exceeded, "q^2 above enumeration budget");

  const auto raw = detail::y_slices(curve);
  std::vector<std::vector<ExtField::element>> slices;
  for (const auto& s : raw) {
    std::vector<ExtField::element> e;
    for (auto c : s) e.push_back(field.from_int(c));
    slices.push_back(std::move(e));
  }

  const std::size_t chunks = std::min<std::uint64_t>(q, 256);
  auto partial = parallel_map(chunks, threads, [&](std::size_t chunk) {
    const std::uint64_t lo = q * chunk / chunks, hi = q * (chunk + 1) / chunks;
    std::vector<ExtField::element> in_y(slices.size());
    std::uint64_t found = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const auto xe = static_cast<ExtField::element>(x);
      for (std::size_t j = 0; j < slices.size(); ++j) in_y[j] = detail::horner(field, slices[j], xe);
      for (std::uint64_t y = 0; y < q; ++y) {
        if (detail::horner(field, in_y, static_cast<ExtField::element>(y)) == 0) ++found;
      }
    }
    return found;
  });
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

struct PointCount {
  unsigned k = 0;
  std::uint64_t affine = 0;
  std::uint64_t infinity = 0;
  std::uint64_t total() const { return affine + infinity; }
};

using PointCountTable = std::vector<PointCount>;

inline PointCount count_points(const CurveEquationModP& curve, const ExtField& field, std::uint64_t infinity_count = 1,
                               unsigned threads = 1, const enumeration_budget& budget = {}) {
  return {field.degree(), count_affine(curve, field, threads, budget), infinity_count};
}

// Counts N_1..N_kmax over the deterministic extension fields.
inline PointCountTable count_table(const CurveEquationModP& curve, unsigned k_max, std::uint64_t infinity_count = 1,
                                   unsigned threads = 1, const enumeration_budget& budget = {}) {
  PointCountTable table;
  for (unsigned k = 1; k <= k_max; ++k) {
    ExtField field(curve.field(), k, budget.max_field_order());
    table.push_back(count_points(curve, field, infinity_count, threads, budget));
  }
  return table;
}

// 2 * deg_y * deg_x * (coefficient of the pure x^deg_x term, or 1 if absent).
inline BigInt reduction_guard(const BivariatePolynomial& f) {
  BigInt lead = abs(f.coefficient(f.degree_x(), 0));
  if (lead == 0) lead = 1;
  return 2 * BigInt(f.degree_y()) * BigInt(f.degree_x()) * lead;
}

struct SmoothnessResult {
  bool smooth = false;
  std::string reason;  // empty, "characteristic-guard" or "singular-point"
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

// Affine-exhaustive singularity search over F_p plus the guard p | reduction_guard.
inline SmoothnessResult is_smooth_mod_p(const CurveEquationModP& curve, const enumeration_budget& budget = {}) {
  const std::uint64_t p = curve.field().p();
  if (p > budget.max_pairs / p) throw error(errc::budget_exceeded, "p^2 above enumeration budget");
  const BigInt guard = reduction_guard(curve.source());
  if (guard % p == 0) return {false, "characteristic-guard", std::nullopt};

  const BivariatePolynomial& f = curve.source();
  BivariatePolynomial fx, fy;
  for (const auto& [e, c] : f.terms()) {
    if (e.first > 0) fx.add_term(c * e.first, e.first - 1, e.second);
    if (e.second > 0) fy.add_term(c * e.second, e.first, e.second - 1);
  }
  const PrimeField field = curve.field();
  ExtField fp(field, 1);
  auto slices_of = [&](const BivariatePolynomial& g) {
    CurveEquationModP reduced(g, field);
    std::vector<std::vector<ExtField::element>> out;
    for (const auto& s : detail::y_slices(reduced)) {
      std::vector<ExtField::element> e;
      for (auto c : s) e.push_back(fp.from_int(c));
      out.push_back(std::move(e));
    }
    return out;
  };
  const auto sf = slices_of(f), sx = slices_of(fx), sy = slices_of(fy);
  auto in_y = [&](const auto& slices, ExtField::element x) {
    std::vector<ExtField::element> out;
    for (const auto& s : slices) out.push_back(detail::horner(fp, s, x));
    return out;
  };
  for (std::uint64_t x = 0; x < p; ++x) {
    const auto xe = static_cast<ExtField::element>(x);
    const auto a = in_y(sf, xe), b = in_y(sx, xe), c = in_y(sy, xe);
    for (std::uint64_t y = 0; y < p; ++y) {
      const auto ye = static_cast<ExtField::element>(y);
      if (detail::horner(fp, a, ye) == 0 && detail::horner(fp, b, ye) == 0 && detail::horner(fp, c, ye) == 0)
        return {false, "singular-point", std::make_pair(x, y)};
    }
  }
  return {true, "", std::nullopt};
}

}  // namespace selli
