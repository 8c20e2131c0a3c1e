#pragma once

// Jacobian orders of reduced curves: L-polynomials rebuilt from point counts
// via Newton's identities, exact Weil-interval checks, and the search for
// two good primes whose Jacobian orders are coprime.

#include <selli/ffield.hpp>

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace selli {

struct GenusSpec {
  enum class source_kind { formula_superelliptic, user_supplied };

  unsigned g = 1;
  source_kind source = source_kind::user_supplied;

  static GenusSpec user(unsigned g) {
    if (g < 1) throw error(errc::parameter, "genus must be >= 1");
    return {g, source_kind::user_supplied};
  }
};

inline const char* to_string(GenusSpec::source_kind s) {
  return s == GenusSpec::source_kind::formula_superelliptic ? "formula-superelliptic" : "user-supplied";
}

// Genus of y^n = f(x) with f separable of degree m (no mixed term).
inline GenusSpec genus_superelliptic(unsigned n, unsigned m) {
  if (n < 2 || m < 2) throw error(errc::parameter, "genus_superelliptic needs n, m >= 2");
  const unsigned g = ((n - 1) * (m - 1) + 1 - std::gcd(n, m)) / 2;
  if (g < 1) throw error(errc::unsupported_parameter, "curve has genus 0");
  return {g, GenusSpec::source_kind::formula_superelliptic};
}

// P(T) = sum c_i T^i with c_0 = 1 and c_{2g-i} = p^(g-i) c_i.
struct LPolynomial {
  std::uint64_t p = 0;
  unsigned g = 0;
  std::vector<BigInt> coefficients;

  BigInt value_at_one() const {
    BigInt s = 0;
    for (const auto& c : coefficients) s += c;
    return s;
  }

  bool satisfies_functional_equation() const {
    if (coefficients.size() != 2 * g + 1 || coefficients[0] != 1) return false;
    for (unsigned i = 0; i <= g; ++i) {
      if (coefficients[2 * g - i] != ipow(BigInt(p), g - i) * coefficients[i]) return false;
    }
    return true;
  }
};

// (p + 1 + 2 sqrt p)^g = A + B sqrt p and (p + 1 - 2 sqrt p)^g = A - B sqrt p.
struct WeilBounds {
  BigInt a;
  BigInt b;
};

inline WeilBounds weil_bounds(std::uint64_t p, unsigned g) {
  BigInt a = 1, b = 0;
  const BigInt u = p + 1, v = 2, pp = p;
  for (unsigned i = 0; i < g; ++i) {
    BigInt na = a * u + b * v * pp;
    BigInt nb = a * v + b * u;
    a = std::move(na);
    b = std::move(nb);
  }
  return {a, b};
}

// Exact test of (sqrt p - 1)^(2g) <= value <= (sqrt p + 1)^(2g):
//   value <= A + B sqrt p  iff  value - A <= 0  or  (value - A)^2 <= B^2 p
//   A - B sqrt p <= value  iff  A - value <= 0  or  (A - value)^2 <= B^2 p
inline bool within_weil_interval(const BigInt& value, std::uint64_t p, unsigned g) {
  const auto [a, b] = weil_bounds(p, g);
  const BigInt b2p = b * b * p;
  const BigInt above = value - a;
  const bool upper_ok = above <= 0 || above * above <= b2p;
  const BigInt below = a - value;
  const bool lower_ok = below <= 0 || below * below <= b2p;
  return upper_ok && lower_ok;
}

// counts[k-1] = N_k (including points at infinity) for k = 1..g.
inline LPolynomial l_polynomial_from_counts(std::uint64_t p, const GenusSpec& genus, const std::vector<BigInt>& counts) {
  const unsigned g = genus.g;
  if (counts.size() < g) throw error(errc::parameter, "need point counts N_1..N_g");
  std::vector<BigInt> s(g + 1);
  for (unsigned k = 1; k <= g; ++k) s[k] = ipow(BigInt(p), k) + 1 - counts[k - 1];

  LPolynomial L{p, g, std::vector<BigInt>(2 * g + 1)};
  auto& c = L.coefficients;
  c[0] = 1;
  for (unsigned k = 1; k <= g; ++k) {
    BigInt acc = 0;
    for (unsigned i = 1; i <= k; ++i) acc -= s[i] * c[k - i];
    if (acc % k != 0)
      throw error(errc::non_integer_coefficient, "Newton recursion gives c_" + std::to_string(k) + " = " + acc.str() +
                                                     "/" + std::to_string(k));
    c[k] = acc / k;
  }
  for (unsigned i = 0; i < g; ++i) c[2 * g - i] = ipow(BigInt(p), g - i) * c[i];

  const BigInt order = L.value_at_one();
  if (order <= 0 || !within_weil_interval(order, p, g)) {
    const auto [a, b] = weil_bounds(p, g);
    throw error(errc::weil_violation, "P(1) = " + order.str() + " outside [" + a.str() + " - " + b.str() + "*sqrt(" +
                                          std::to_string(p) + "), " + a.str() + " + " + b.str() + "*sqrt(" +
                                          std::to_string(p) + ")]");
  }
  return L;
}

inline LPolynomial l_polynomial_from_counts(std::uint64_t p, const GenusSpec& genus, const PointCountTable& table) {
  std::vector<BigInt> counts;
  for (const auto& e : table) counts.emplace_back(e.total());
  return l_polynomial_from_counts(p, genus, counts);
}

// N_k implied by L for k = 1..k_max.
inline std::vector<BigInt> predicted_counts(const LPolynomial& L, unsigned k_max) {
  auto coeff = [&](unsigned i) { return i < L.coefficients.size() ? L.coefficients[i] : BigInt(0); };
  std::vector<BigInt> s(k_max + 1), out;
  for (unsigned k = 1; k <= k_max; ++k) {
    BigInt acc = -BigInt(k) * coeff(k);
    for (unsigned i = 1; i < k; ++i) acc -= s[i] * coeff(k - i);
    s[k] = acc;
    out.push_back(ipow(BigInt(L.p), k) + 1 - acc);
  }
  return out;
}

inline BigInt jacobian_order(const LPolynomial& L) { return L.value_at_one(); }

// True iff n divides every order. A torsion point of order n injects into
// each reduction, so n | gcd(orders); gcd = 1 leaves only n = 1.
inline bool order_divisibility_filter(const BigInt& n, const std::vector<BigInt>& orders) {
  if (n <= 0) throw error(errc::parameter, "order must be positive");
  for (const auto& o : orders) {
    if (o <= 0) throw error(errc::parameter, "orders must be positive");
    if (o % n != 0) return false;
  }
  return true;
}

struct CertificateSearchOptions {
  std::uint64_t infinity_count = 1;
  unsigned threads = 1;
  enumeration_budget budget{};
};

struct PrimeRecord {
  std::uint64_t p = 0;
  std::string status;  // ok, bad-reduction, budget-exceeded, weil-violation, non-integer-coefficient
  std::string detail;
  PointCountTable counts;
  std::optional<LPolynomial> l_polynomial;
  BigInt order = 0;
};

struct CertificatePrimes {
  PrimeRecord first;
  PrimeRecord second;
  BigInt gcd_value;

  bool valid() const { return gcd_value == 1 && first.status == "ok" && second.status == "ok"; }
};

struct CertificateSearch {
  GenusSpec genus;
  std::uint64_t prime_bound = 0;
  std::uint64_t infinity_count = 1;
  std::vector<PrimeRecord> scanned;
  std::optional<CertificatePrimes> certificate;  // empty means NOT_FOUND
};

// Jacobian order at a single prime, with the failure reason when unusable.
inline PrimeRecord jacobian_order_at(const BivariatePolynomial& curve, const GenusSpec& genus, std::uint64_t p,
                                     const CertificateSearchOptions& options, unsigned threads = 1) {
  PrimeRecord rec;
  rec.p = p;
  CurveEquationModP reduced(curve, PrimeField(p));
  std::uint64_t q = 1;
  for (unsigned k = 0; k < genus.g; ++k) {
    q *= p;
    if (q > options.budget.max_field_order()) {
      rec.status = "budget-exceeded";
      rec.detail = "p^" + std::to_string(genus.g) + " above enumeration budget";
      return rec;
    }
  }
  const auto smooth = is_smooth_mod_p(reduced, options.budget);
  if (!smooth.smooth) {
    rec.status = "bad-reduction";
    rec.detail = smooth.reason;
    if (smooth.witness)
      rec.detail += " (" + std::to_string(smooth.witness->first) + ", " + std::to_string(smooth.witness->second) + ")";
    return rec;
  }
  rec.counts = count_table(reduced, genus.g, options.infinity_count, threads, options.budget);
  try {
    rec.l_polynomial = l_polynomial_from_counts(p, genus, rec.counts);
    rec.order = jacobian_order(*rec.l_polynomial);
    rec.status = "ok";
  } catch (const error& e) {
    rec.status = e.code() == errc::weil_violation ? "weil-violation" : "non-integer-coefficient";
    rec.detail = e.what();
  }
  return rec;
}

// Scans primes p <= prime_bound; returns the first good pair (p1 < p2, p1
// outermost, both ascending) with coprime Jacobian orders.
inline CertificateSearch find_certificate_primes(const BivariatePolynomial& curve, const GenusSpec& genus,
                                                 std::uint64_t prime_bound,
                                                 const CertificateSearchOptions& options = {}) {
  CertificateSearch out{genus, prime_bound, options.infinity_count, {}, std::nullopt};
  const auto primes = primes_in_range(2, prime_bound);
  out.scanned = parallel_map(primes.size(), options.threads,
                             [&](std::size_t i) { return jacobian_order_at(curve, genus, primes[i], options); });
  for (std::size_t i = 0; i < out.scanned.size() && !out.certificate; ++i) {
    if (out.scanned[i].status != "ok") continue;
    for (std::size_t j = i + 1; j < out.scanned.size(); ++j) {
      if (out.scanned[j].status != "ok") continue;
      BigInt g = gcd(out.scanned[i].order, out.scanned[j].order);
      if (g == 1) {
        out.certificate = CertificatePrimes{out.scanned[i], out.scanned[j], g};
        break;
      }
    }
  }
  return out;
}

}  // namespace selli
