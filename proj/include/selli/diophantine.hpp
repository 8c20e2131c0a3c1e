#pragma once

// a x^{d1} - y^{d2} - z^2 + x y z - b = 0 with b = 2^{d1} a - 3 (or
// 2^{d1} a - 3^{m'}): bounded integer search, exhaustive residue-class
// obstructions, and the small congruence tables the insolubility argument
// rests on.

#include <selli/arith.hpp>
#include <selli/parallel.hpp>

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace selli {

enum class BMode { standard, corollary1 };

inline const char* to_string(BMode m) { return m == BMode::standard ? "standard" : "corollary1"; }

inline BMode parse_b_mode(const std::string& s) {
  if (s == "standard") return BMode::standard;
  if (s == "corollary1") return BMode::corollary1;
  throw error(errc::parameter, "unknown b-mode '" + s + "'");
}

struct RawDioParams {
  BigInt a;
  long long d1 = 0;
  long long d2 = 0;
  BMode mode = BMode::standard;
  long long m_prime = 1;
};

struct DioParams {
  BigInt a;
  BigInt b;
  unsigned d1 = 0;
  unsigned d2 = 0;
  BMode mode = BMode::standard;
  unsigned m_prime = 1;

  static DioParams unchecked(BigInt a, BigInt b, unsigned d1, unsigned d2) {
    return {std::move(a), std::move(b), d1, d2, BMode::standard, 1};
  }
};

inline DioParams validate_dio_params(const RawDioParams& raw) {
  std::vector<violation> v;
  BigInt a_mod = raw.a % 12;
  if (a_mod < 0) a_mod += 12;
  if (a_mod != 1) v.push_back({"D1", "a = " + raw.a.str() + " is not 1 mod 12"});
  if (raw.d1 < 3 || raw.d1 % 3 != 0) v.push_back({"D2", "d1 = " + std::to_string(raw.d1) + " must be >= 3 and divisible by 3"});
  if (raw.d2 < 2 || raw.d2 % 2 != 0) v.push_back({"D3", "d2 = " + std::to_string(raw.d2) + " must be even and >= 2"});
  if (raw.d1 > 0 && raw.d2 > 0 && std::gcd(raw.d1, raw.d2) != 1)
    v.push_back({"D4", "gcd(d1, d2) = " + std::to_string(std::gcd(raw.d1, raw.d2)) + " != 1"});
  if (raw.mode == BMode::corollary1 && (raw.m_prime < 1 || raw.m_prime % 2 == 0))
    v.push_back({"D5", "m' = " + std::to_string(raw.m_prime) + " must be odd and >= 1"});
  if (raw.d1 > 4096 || raw.d2 > 4096 || raw.m_prime > 4096) v.push_back({"D6", "exponents above 4096 are not supported"});
  if (!v.empty()) throw hypothesis_error(std::move(v));

  DioParams p;
  p.a = raw.a;
  p.d1 = static_cast<unsigned>(raw.d1);
  p.d2 = static_cast<unsigned>(raw.d2);
  p.mode = raw.mode;
  p.m_prime = raw.mode == BMode::corollary1 ? static_cast<unsigned>(raw.m_prime) : 1;
  p.b = ipow(BigInt(2), p.d1) * p.a - ipow(BigInt(3), p.m_prime);
  return p;
}

inline BigInt eval_equation(const DioParams& p, const BigInt& x, const BigInt& y, const BigInt& z) {
  return p.a * ipow(x, p.d1) - ipow(y, p.d2) - z * z + x * y * z - p.b;
}

using Triple = std::array<BigInt, 3>;

struct ResidueClass {
  std::int64_t r = 0;
  std::int64_t c = 1;

  bool contains(const BigInt& x) const {
    BigInt v = (x - r) % c;
    return v == 0;
  }
};

// All (x, y, z) in [-B, B]^3 solving the equation, lexicographic order.
inline std::vector<Triple> bounded_search(const DioParams& p, std::int64_t box, unsigned threads = 1,
                                          std::optional<ResidueClass> x_class = std::nullopt) {
  if (box < 1) throw error(errc::parameter, "box must be >= 1");
  const std::size_t width = static_cast<std::size_t>(2 * box + 1);
  std::vector<BigInt> x_part(width), y_part(width);
  for (std::size_t i = 0; i < width; ++i) {
    const BigInt v = static_cast<std::int64_t>(i) - box;
    x_part[i] = p.a * ipow(v, p.d1) - p.b;
    y_part[i] = ipow(v, p.d2);
  }
  BigInt magnitude = 0;
  for (std::size_t i = 0; i < width; ++i) magnitude = std::max(magnitude, abs(x_part[i]) + abs(y_part[i]));
  magnitude += 2 * BigInt(box) * box * box;
  const bool fast = magnitude < (BigInt(1) << 120);

  using wide = __int128;
  auto to_wide = [](const BigInt& v) {
    const BigInt m = abs(v);
    const auto lo = static_cast<unsigned long long>(m & BigInt(~0ULL));
    const auto hi = static_cast<unsigned long long>(m >> 64);
    const wide w = static_cast<wide>((static_cast<unsigned __int128>(hi) << 64) | lo);
    return v < 0 ? -w : w;
  };
  std::vector<wide> xf(width), yf(width);
  if (fast) {
    for (std::size_t i = 0; i < width; ++i) {
      xf[i] = to_wide(x_part[i]);
      yf[i] = to_wide(y_part[i]);
    }
  }

  auto per_x = parallel_map(width, threads, [&](std::size_t ix) {
    std::vector<Triple> found;
    const std::int64_t x = static_cast<std::int64_t>(ix) - box;
    if (x_class && !x_class->contains(x)) return found;
    for (std::size_t iy = 0; iy < width; ++iy) {
      const std::int64_t y = static_cast<std::int64_t>(iy) - box;
      for (std::int64_t z = -box; z <= box; ++z) {
        bool zero;
        if (fast) {
          zero = xf[ix] - yf[iy] - static_cast<wide>(z) * z + static_cast<wide>(x) * y * z == 0;
        } else {
          zero = x_part[ix] - y_part[iy] - BigInt(z) * z + BigInt(x) * y * z == 0;
        }
        if (zero) found.push_back({BigInt(x), BigInt(y), BigInt(z)});
      }
    }
    return found;
  });
  std::vector<Triple> out;
  for (auto& v : per_x) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Equation value reduced into [0, M).
inline std::uint64_t mod_eval(const DioParams& p, std::uint64_t modulus, std::uint64_t x, std::uint64_t y,
                              std::uint64_t z) {
  const BigInt M = modulus;
  auto red = [&](const BigInt& v) {
    BigInt r = v % M;
    if (r < 0) r += M;
    return static_cast<std::uint64_t>(r);
  };
  const std::uint64_t am = red(p.a), bm = red(p.b);
  auto pw = [&](std::uint64_t base, unsigned e) {
    std::uint64_t r = 1 % modulus;
    base %= modulus;
    while (e) {
      if (e & 1) r = r * base % modulus;
      base = base * base % modulus;
      e >>= 1;
    }
    return r;
  };
  x %= modulus;
  y %= modulus;
  z %= modulus;
  std::uint64_t v = am * pw(x, p.d1) % modulus;
  v = (v + modulus - pw(y, p.d2)) % modulus;
  v = (v + modulus - z * z % modulus) % modulus;
  v = (v + x * y % modulus * z) % modulus;
  v = (v + modulus - bm) % modulus;
  return v;
}

struct obstruction_budget {
  std::uint64_t max_modulus = 360;
};

struct ObstructionResult {
  std::uint64_t modulus = 0;
  ResidueClass x_class;
  bool certified = false;
  std::uint64_t tuples_checked = 0;
  std::optional<std::array<std::uint64_t, 3>> witness;  // first solution mod M when not certified
};

// Exhaustive search for (x, y, z) mod M with x = r (mod c) solving the
// congruence. No solution certifies that no integer solution has x = r (mod c).
inline ObstructionResult residue_obstruction(const DioParams& p, std::uint64_t modulus, ResidueClass x_class,
                                             unsigned threads = 1, const obstruction_budget& budget = {}) {
  if (modulus == 0) throw error(errc::parameter, "modulus must be positive");
  if (x_class.c <= 0 || modulus % static_cast<std::uint64_t>(x_class.c) != 0)
    throw error(errc::parameter, "class modulus " + std::to_string(x_class.c) + " does not divide " + std::to_string(modulus));
  if (modulus > budget.max_modulus)
    throw error(errc::budget_exceeded, "modulus " + std::to_string(modulus) + " above enumeration budget");

  const std::uint64_t M = modulus;
  // neg_ypow[y] = -y^{d2} mod M
  std::vector<std::uint64_t> neg_ypow(M), zsq(M);
  for (std::uint64_t v = 0; v < M; ++v) {
    std::uint64_t w = 1 % M;
    for (unsigned i = 0; i < p.d2; ++i) w = w * v % M;
    neg_ypow[v] = (M - w) % M;
    zsq[v] = v * v % M;
  }
  std::uint64_t r = static_cast<std::uint64_t>(((x_class.r % x_class.c) + x_class.c) % x_class.c);
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = r; x < M; x += static_cast<std::uint64_t>(x_class.c)) xs.push_back(x);

  struct per_x_result {
    std::uint64_t checked = 0;
    std::optional<std::array<std::uint64_t, 3>> witness;
  };
  auto results = parallel_map(xs.size(), threads, [&](std::size_t i) {
    per_x_result out;
    const std::uint64_t x = xs[i];
    const std::uint64_t base = mod_eval(p, M, x, 0, 0);  // a x^{d1} - b
    for (std::uint64_t y = 0; y < M; ++y) {
      const std::uint64_t t = (base + neg_ypow[y]) % M;
      const std::uint64_t xy = x * y % M;
      for (std::uint64_t z = 0; z < M; ++z) {
        ++out.checked;
        if ((t + M - zsq[z] + xy * z) % M == 0) {
          out.witness = std::array<std::uint64_t, 3>{x, y, z};
          return out;
        }
      }
    }
    return out;
  });

  ObstructionResult res;
  res.modulus = M;
  res.x_class = x_class;
  for (const auto& pr : results) {
    if (pr.witness) {
      res.witness = pr.witness;
      break;
    }
  }
  res.certified = !res.witness;
  if (res.certified) res.tuples_checked = static_cast<std::uint64_t>(xs.size()) * M * M;
  else for (const auto& pr : results) res.tuples_checked += pr.checked;
  return res;
}

struct SweepEntry {
  ResidueClass x_class;
  std::optional<ObstructionResult> certificate;  // smallest certifying modulus
  std::uint64_t moduli_tried = 0;
};

// Smallest multiple of the class modulus (up to bound) certifying the class.
inline SweepEntry certify_class(const DioParams& p, ResidueClass x_class, std::uint64_t modulus_bound,
                                unsigned threads = 1, const obstruction_budget& budget = {}) {
  SweepEntry e{x_class, std::nullopt, 0};
  const auto step = static_cast<std::uint64_t>(x_class.c);
  for (std::uint64_t M = step; M <= modulus_bound && M <= budget.max_modulus; M += step) {
    ++e.moduli_tried;
    auto res = residue_obstruction(p, M, x_class, threads, budget);
    if (res.certified) {
      e.certificate = res;
      break;
    }
  }
  return e;
}

// Per residue class mod 12: the smallest certifying modulus M = 12k <= bound.
inline std::vector<SweepEntry> obstruction_sweep(const DioParams& p, std::uint64_t modulus_bound, unsigned threads = 1,
                                                 const obstruction_budget& budget = {}) {
  std::vector<SweepEntry> out;
  for (std::int64_t r = 0; r < 12; ++r) out.push_back(certify_class(p, {r, 12}, modulus_bound, threads, budget));
  return out;
}

struct ResidueTable {
  std::uint64_t modulus = 0;
  std::vector<std::array<std::uint64_t, 3>> entries;  // (Y, Z, value)
  std::vector<std::uint64_t> attained;
};

// Y^2 + sign * Z^2 mod M over all (Y, Z).
inline ResidueTable square_form_table(int sign, std::uint64_t modulus) {
  ResidueTable t{modulus, {}, {}};
  std::set<std::uint64_t> seen;
  for (std::uint64_t Y = 0; Y < modulus; ++Y)
    for (std::uint64_t Z = 0; Z < modulus; ++Z) {
      const std::uint64_t z2 = Z * Z % modulus;
      const std::uint64_t v = sign > 0 ? (Y * Y + z2) % modulus : (Y * Y + modulus - z2) % modulus;
      t.entries.push_back({Y, Z, v});
      seen.insert(v);
    }
  t.attained.assign(seen.begin(), seen.end());
  return t;
}

inline bool attains(const ResidueTable& t, std::uint64_t target) {
  return std::find(t.attained.begin(), t.attained.end(), target % t.modulus) != t.attained.end();
}

struct Mod4Obstruction {
  ResidueTable sum;         // Y^2 + Z^2 mod 4
  ResidueTable difference;  // Y^2 - Z^2 mod 4
  bool sum_obstructs = false;         // 3 not attained by the sum
  bool difference_obstructs = false;  // 3 not attained by the difference
};

inline Mod4Obstruction mod4_obstruction() {
  Mod4Obstruction o{square_form_table(+1, 4), square_form_table(-1, 4)};
  o.sum_obstructs = !attains(o.sum, 3);
  o.difference_obstructs = !attains(o.difference, 3);
  return o;
}

struct ParityTable {
  unsigned s = 1;
  std::vector<std::array<std::uint64_t, 3>> entries;      // (y, z, value mod 2)
  std::vector<std::array<std::uint64_t, 2>> solutions;    // value = 0
  bool only_trivial = false;                               // solutions == {(0, 0)}
};

// y^{2s} + z^2 + y z mod 2 over (Z/2)^2.
inline ParityTable parity_table(unsigned s) {
  if (s < 1) throw error(errc::parameter, "s must be >= 1");
  ParityTable t;
  t.s = s;
  for (std::uint64_t y = 0; y < 2; ++y)
    for (std::uint64_t z = 0; z < 2; ++z) {
      std::uint64_t ys = 1;
      for (unsigned i = 0; i < 2 * s; ++i) ys = ys * y % 2;
      const std::uint64_t v = (ys + z * z + y * z) % 2;
      t.entries.push_back({y, z, v});
      if (v == 0) t.solutions.push_back({y, z});
    }
  t.only_trivial = t.solutions.size() == 1 && t.solutions[0] == std::array<std::uint64_t, 2>{0, 0};
  return t;
}

struct QrLawResult {
  std::uint64_t prime_bound = 0;
  std::uint64_t primes_checked = 0;
  std::vector<std::uint64_t> counterexamples;
  bool holds() const { return counterexamples.empty(); }
};

// legendre(3, p) = +1 iff p = +-1 (mod 12), for primes 5 <= p <= bound.
inline QrLawResult qr_law_check(std::uint64_t prime_bound) {
  if (prime_bound < 5) throw error(errc::parameter, "prime_bound must be >= 5");
  QrLawResult out{prime_bound, 0, {}};
  for (auto p : primes_in_range(5, prime_bound)) {
    ++out.primes_checked;
    const bool residue = legendre_symbol(3, p) == 1;
    const bool predicted = p % 12 == 1 || p % 12 == 11;
    if (residue != predicted) out.counterexamples.push_back(p);
  }
  return out;
}

}  // namespace selli
