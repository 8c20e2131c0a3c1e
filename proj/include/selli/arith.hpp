#pragma once

// Exact integer utilities: valuations, Legendre symbols, deterministic
// primality and budgeted trial-division factorization.

#include <selli/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace selli {

// Expression templates off: results bind cleanly to auto and std::max.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

inline std::string to_string(const BigInt& n) { return n.str(); }

inline BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw error(errc::parse, "empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw error(errc::parse, "malformed integer '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw error(errc::parse, "malformed integer '" + text + "'");
  }
  BigInt v(text.substr(i));
  return text[0] == '-' ? BigInt(-v) : v;
}

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

// Floor of the k-th root of n >= 0.
inline BigInt iroot(const BigInt& n, unsigned k) {
  if (n < 0) throw error(errc::parameter, "iroot of negative value");
  if (n < 2 || k == 1) return n;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / k + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (ipow(mid, k) <= n) lo = mid; else hi = mid - 1;
  }
  return lo;
}

// p-adic valuation; an input of zero has valuation +infinity.
class Valuation {
 public:
  static Valuation finite(BigInt prime, std::uint64_t e) { return Valuation(std::move(prime), e, false); }
  static Valuation infinity(BigInt prime) { return Valuation(std::move(prime), 0, true); }

  const BigInt& prime() const { return prime_; }
  bool is_infinite() const { return infinite_; }
  std::uint64_t exponent() const {
    if (infinite_) throw error(errc::parameter, "valuation of zero is infinite");
    return exponent_;
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(BigInt p, std::uint64_t e, bool inf) : prime_(std::move(p)), exponent_(e), infinite_(inf) {}

  BigInt prime_;
  std::uint64_t exponent_;
  bool infinite_;
};

namespace detail {

inline constexpr std::array<unsigned, 12> kMillerRabinBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool strong_probable_prime(const BigInt& n, unsigned base) {
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = boost::multiprecision::powm(BigInt(base), d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

// Strong-pseudoprime test to the first twelve prime bases is deterministic
// below 318665857834031151167461 (about 3.2e23). Larger inputs are refused.
inline const BigInt& primality_limit() {
  static const BigInt limit("318665857834031151167461");
  return limit;
}

inline bool is_prime(const BigInt& n) {
  if (n < 0) throw error(errc::parameter, "is_prime requires n >= 0");
  if (n < 2) return false;
  for (unsigned b : detail::kMillerRabinBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  if (n >= primality_limit()) {
    throw error(errc::budget_exceeded, "primality of " + n.str() + " is outside the deterministic range");
  }
  for (unsigned b : detail::kMillerRabinBases) {
    if (!detail::strong_probable_prime(n, b)) return false;
  }
  return true;
}

inline Valuation padic_valuation(const BigInt& n, const BigInt& p) {
  if (!is_prime(p)) throw error(errc::parameter, p.str() + " is not prime");
  if (n == 0) return Valuation::infinity(p);
  BigInt m = abs(n);
  std::uint64_t e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return Valuation::finite(p, e);
}

// Euler's criterion; returns -1, 0 or +1.
inline int legendre_symbol(const BigInt& a, const BigInt& p) {
  if (p == 2 || !is_prime(p)) throw error(errc::parameter, p.str() + " is not an odd prime");
  BigInt r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  BigInt e = boost::multiprecision::powm(r, BigInt((p - 1) / 2), p);
  return e == 1 ? 1 : -1;
}

struct factor_budget {
  // Largest trial divisor tried before the remaining cofactor must be prime.
  BigInt max_trial_divisor{10'000'000};
};

// Prime factorization of |n| by trial division, ascending primes.
inline std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n, const factor_budget& budget = {}) {
  if (n == 0) throw error(errc::parameter, "cannot factor zero");
  std::vector<std::pair<BigInt, unsigned>> out;
  BigInt m = abs(n);
  auto take = [&](const BigInt& p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (BigInt p = 5; p * p <= m; p += 6) {
    if (p > budget.max_trial_divisor) {
      if (is_prime(m)) break;
      throw error(errc::budget_exceeded, "factorization of " + n.str() + " exceeds the trial-division budget");
    }
    take(p);
    take(p + 2);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

inline std::vector<BigInt> divisors(const BigInt& n, const factor_budget& budget = {}) {
  if (n == 0) throw error(errc::parameter, "divisors of zero are undefined");
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factorize(n, budget)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All primes in [lo, hi], ascending.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

}  // namespace selli
