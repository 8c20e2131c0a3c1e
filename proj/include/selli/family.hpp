#pragma once

// The superelliptic family y^{d2} = a x^{d1} + m x y - m^2 - b and its
// torsion pipeline: hypothesis checks, the discriminant Delta(f)(y) as a
// function of y, the finite candidate box for torsion y-coordinates, and
// elimination of rational points by the rational-root theorem.

#include <selli/jacobian.hpp>
#include <selli/parallel.hpp>
#include <selli/poly.hpp>

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace selli {

enum class Convention {
  standard,   // linear coefficient m*y
  paper_ex2,  // linear coefficient y, regardless of m
};

inline const char* to_string(Convention c) { return c == Convention::standard ? "standard" : "paper-ex2"; }

inline Convention parse_convention(const std::string& s) {
  if (s == "standard") return Convention::standard;
  if (s == "paper-ex2") return Convention::paper_ex2;
  throw error(errc::parameter, "unknown convention '" + s + "'");
}

struct RawFamilyParams {
  BigInt a;
  BigInt m;
  long long d1 = 0;
  long long d2 = 0;
  std::optional<BigInt> b_override;
};

struct FamilyParams {
  BigInt a;
  BigInt m;
  unsigned d1 = 0;
  unsigned d2 = 0;
  unsigned d = 0;
  BigInt b;
  // m' when b = 2^{d1} a - 3^{m'} was supplied explicitly
  std::optional<unsigned> b_power;

  // No hypothesis checks; for mutation tests and certificate re-checking.
  static FamilyParams unchecked(BigInt a, BigInt m, unsigned d1, unsigned d2, BigInt b) {
    return {std::move(a), std::move(m), d1, d2, d2 / 2, std::move(b), std::nullopt};
  }

  // m^2 + b, the negated constant term of f
  BigInt constant() const { return m * m + b; }
};

// Largest e with 3^e == value, if value is a power of three.
inline std::optional<unsigned> power_of_three(BigInt value) {
  if (value < 1) return std::nullopt;
  unsigned e = 0;
  while (value % 3 == 0) {
    value /= 3;
    ++e;
  }
  if (value != 1) return std::nullopt;
  return e;
}

// Delta(f)(y) = top * y^{d1} + constant for f = a x^{d1} + mu y x - (m^2 + b).
struct DiscriminantProfile {
  FamilyParams params;
  Convention convention = Convention::standard;
  BigInt top;       // coefficient of y^{d1} (c3 when d1 = 3)
  BigInt constant;  // Delta(f)(0)

  BigInt linear_multiplier() const { return convention == Convention::standard ? params.m : BigInt(1); }
};

// Trinomial discriminant: for A x^n + C x + D,
//   Delta = (-1)^{n(n-1)/2} A^{n-2} (n^n A D^{n-1} + (-1)^{n-1} (n-1)^{n-1} C^n).
inline DiscriminantProfile make_profile(const FamilyParams& params, Convention convention = Convention::standard) {
  DiscriminantProfile prof{params, convention, 0, 0};
  const unsigned n = params.d1;
  if (n < 2) throw error(errc::parameter, "d1 must be >= 2");
  const BigInt A = params.a;
  const BigInt D = -params.constant();
  const BigInt mu = prof.linear_multiplier();
  const int outer = ((static_cast<unsigned long long>(n) * (n - 1) / 2) % 2 == 0) ? 1 : -1;
  const int inner = (n - 1) % 2 == 0 ? 1 : -1;
  prof.top = outer * inner * ipow(A, n - 2) * ipow(BigInt(n - 1), n - 1) * ipow(mu, n);
  prof.constant = outer * ipow(A, n - 1) * ipow(BigInt(n), n) * ipow(D, n - 1);
  return prof;
}

// a x^{d1} + mu y x - (m^2 + b) with y fixed
inline IntPolynomial specialized_polynomial(const DiscriminantProfile& prof, const BigInt& y) {
  const auto& p = prof.params;
  std::vector<BigInt> c(p.d1 + 1);
  c[0] = -p.constant();
  c[1] = prof.linear_multiplier() * y;
  c[p.d1] += p.a;
  return IntPolynomial(std::move(c));
}

// Closed form for d1 = 3; resultant of the specialized polynomial otherwise.
inline BigInt delta_of_y(const DiscriminantProfile& prof, const BigInt& y) {
  if (prof.params.d1 == 3) return prof.top * y * y * y + prof.constant;
  return discriminant(specialized_polynomial(prof, y));
}

inline BigInt delta_closed_form(const DiscriminantProfile& prof, const BigInt& y) {
  return prof.top * ipow(y, prof.params.d1) + prof.constant;
}

inline FamilyParams validate_params(const RawFamilyParams& raw) {
  std::vector<violation> v;
  const long long d1 = raw.d1, d2 = raw.d2;
  if (d1 < 3 || d1 % 2 == 0 || d1 % 3 != 0)
    v.push_back({"H1", "d1 = " + std::to_string(d1) + " must be odd, >= 3 and divisible by 3"});
  const long long d = d2 / 2;
  if (d2 < 2 || d2 % 2 != 0 || !is_prime(BigInt(d)))
    v.push_back({"H2", "d2 = " + std::to_string(d2) + " must be 2d with d prime"});
  BigInt a_mod = raw.a % 12;
  if (a_mod < 0) a_mod += 12;
  if (a_mod != 1) v.push_back({"H3", "a = " + raw.a.str() + " is not 1 mod 12"});

  FamilyParams p;
  p.a = raw.a;
  p.m = raw.m;
  p.d1 = d1 > 0 ? static_cast<unsigned>(d1) : 0;
  p.d2 = d2 > 0 ? static_cast<unsigned>(d2) : 0;
  p.d = d > 0 ? static_cast<unsigned>(d) : 0;
  const BigInt base = d1 > 0 && d1 < 4096 ? ipow(BigInt(2), static_cast<unsigned>(d1)) * raw.a : BigInt(0);
  if (raw.b_override) {
    p.b = *raw.b_override;
    auto e = power_of_three(base - p.b);
    if (!e || *e % 2 == 0) {
      v.push_back({"H4", "b = " + p.b.str() + " is not 2^d1 a - 3^m' with m' odd"});
    } else {
      p.b_power = *e;
    }
  } else {
    p.b = base - 3;
  }
  if (d1 >= 2 && p.constant() == 0) v.push_back({"H5", "Delta(f) vanishes identically (m^2 + b = 0)"});
  if (d > 0 && d1 > 0 && std::gcd(d1, d) != 1)
    v.push_back({"H6", "gcd(d1, d) = " + std::to_string(std::gcd(d1, d)) + " != 1"});
  if (!v.empty()) throw hypothesis_error(std::move(v));
  return p;
}

// Integer y with Delta(f)(y) = 0, i.e. top * y^{d1} = -constant.
inline std::vector<BigInt> degenerate_ys(const DiscriminantProfile& prof) {
  std::vector<BigInt> out;
  if (prof.top == 0 || prof.constant % prof.top != 0) return out;
  const BigInt target = -prof.constant / prof.top;
  const unsigned n = prof.params.d1;
  const BigInt r = iroot(abs(target), n);
  for (const BigInt& cand : {BigInt(r), BigInt(-r)}) {
    if (cand != 0 && ipow(cand, n) == target && std::find(out.begin(), out.end(), cand) == out.end())
      out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// |y|^{d2} > |Delta(f)(y)| with Delta(f)(y) != 0 for both signs of t.
inline bool growth_excludes(const DiscriminantProfile& prof, const BigInt& t) {
  const BigInt lhs = ipow(t, prof.params.d2);
  for (const BigInt& y : {BigInt(t), BigInt(-t)}) {
    const BigInt delta = delta_closed_form(prof, y);
    if (delta == 0 || lhs <= abs(delta)) return false;
  }
  return true;
}

}  // namespace detail

// Smallest Y such that |y|^{d2} > |Delta(f)(y)| for all |y| > Y.
//
// With u(t) = t^{d2} - |top| t^{d1} - |constant|, u is nondecreasing once
// t^{d2-d1} >= |top|, and u(t) > 0 there bounds both signs. The first such t
// is located by doubling then bisection; below it every t is tested exactly.
inline BigInt y_bound(const DiscriminantProfile& prof) {
  const unsigned d1 = prof.params.d1, d2 = prof.params.d2;
  if (d2 <= 3) throw error(errc::unsupported_parameter, "y_bound needs d2 >= 4");
  if (d2 <= d1) throw error(errc::unsupported_parameter, "y_bound needs d2 > d1 for the growth comparison");
  const BigInt top = abs(prof.top), c0 = abs(prof.constant);
  auto settled = [&](const BigInt& t) {
    return ipow(t, d2 - d1) >= top && ipow(t, d2) > top * ipow(t, d1) + c0;
  };
  BigInt hi = 1;
  while (!settled(hi)) hi *= 2;
  BigInt lo = hi / 2;  // settled(lo) is false or lo == 0
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (settled(mid)) hi = mid; else lo = mid;
  }
  BigInt y_max = 0;
  for (BigInt t = hi - 1; t >= 1; --t) {
    if (!detail::growth_excludes(prof, t)) {
      y_max = t;
      break;
    }
  }
  for (const auto& y : degenerate_ys(prof)) y_max = std::max(y_max, abs(y));
  return y_max;
}

struct CandidateEntry {
  BigInt y;
  BigInt delta;
  bool passes_divisibility = false;
};

struct CandidateSet {
  BigInt y_max;
  std::vector<CandidateEntry> candidates;  // ascending y, y = 0 omitted
  std::vector<BigInt> surviving;
  std::vector<BigInt> degenerate;  // y with Delta(f)(y) = 0
  BigInt delta_at_zero;
  std::string zero_exclusion;
  // growth witness at |y| = y_max + 1
  BigInt witness_power;
  BigInt witness_delta_pos;
  BigInt witness_delta_neg;
};

inline bool power_divides(const BigInt& y, unsigned e, const BigInt& value) {
  if (y == 0) return value == 0;
  return value % ipow(y, e) == 0;
}

inline CandidateSet y_candidates(const DiscriminantProfile& prof, unsigned threads = 1) {
  CandidateSet out;
  out.y_max = y_bound(prof);
  out.delta_at_zero = delta_of_y(prof, 0);
  if (out.delta_at_zero == 0) throw error(errc::hypothesis, "H5 Delta(f)(0) = 0");
  out.zero_exclusion = "Delta(f)(0) = " + out.delta_at_zero.str() + " != 0 and 0^d2 divides only 0";

  const auto y_max = static_cast<long long>(out.y_max);
  std::vector<long long> ys;
  for (long long y = -y_max; y <= y_max; ++y)
    if (y != 0) ys.push_back(y);
  out.candidates = parallel_map(ys.size(), threads, [&](std::size_t i) {
    const BigInt y = ys[i];
    CandidateEntry e{y, delta_of_y(prof, y), false};
    e.passes_divisibility = power_divides(y, prof.params.d2, e.delta);
    return e;
  });
  for (const auto& e : out.candidates) {
    if (e.passes_divisibility) out.surviving.push_back(e.y);
    if (e.delta == 0) out.degenerate.push_back(e.y);
  }
  const BigInt t = out.y_max + 1;
  out.witness_power = ipow(t, prof.params.d2);
  out.witness_delta_pos = delta_of_y(prof, t);
  out.witness_delta_neg = delta_of_y(prof, -t);
  return out;
}

// Every y (both signs) with y^{d2} | delta, from the factorization of delta.
inline std::vector<BigInt> fixed_delta_candidates(const BigInt& delta, unsigned d2, const factor_budget& budget = {}) {
  if (delta == 0) throw error(errc::parameter, "fixed_delta_candidates needs delta != 0");
  if (d2 == 0) throw error(errc::parameter, "d2 must be positive");
  std::vector<BigInt> mags{1};
  for (const auto& [p, e] : factorize(delta, budget)) {
    const unsigned cap = e / d2;
    const std::size_t base = mags.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= cap; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) mags.push_back(mags[i] * pk);
    }
  }
  std::vector<BigInt> out;
  for (const auto& v : mags) {
    out.push_back(v);
    out.push_back(-v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct EliminationRecord {
  BigInt y0;
  IntPolynomial reduced;  // a x^{d1} + mu y0 x - (m^2 + b + y0^{d2})
  std::vector<Rational> rational_x;
  BigInt numerator_bound;
  BigInt denominator_bound;
  std::size_t candidates_tested = 0;
  bool eliminated = false;
};

inline IntPolynomial fiber_polynomial(const DiscriminantProfile& prof, const BigInt& y0) {
  const auto& p = prof.params;
  std::vector<BigInt> c(p.d1 + 1);
  c[0] = -(p.constant() + ipow(y0, p.d2));
  c[1] += prof.linear_multiplier() * y0;
  c[p.d1] += p.a;
  return IntPolynomial(std::move(c));
}

inline EliminationRecord eliminate_polynomial(const BigInt& y0, IntPolynomial reduced) {
  EliminationRecord rec;
  rec.y0 = y0;
  rec.reduced = std::move(reduced);
  auto search = rational_root_search(rec.reduced);
  rec.rational_x = std::move(search.roots);
  rec.numerator_bound = std::move(search.numerator_bound);
  rec.denominator_bound = std::move(search.denominator_bound);
  rec.candidates_tested = search.candidates_tested;
  rec.eliminated = rec.rational_x.empty();
  return rec;
}

inline std::vector<EliminationRecord> eliminate_points(const DiscriminantProfile& prof, const CandidateSet& candidates,
                                                       unsigned threads = 1) {
  return parallel_map(candidates.surviving.size(), threads, [&](std::size_t i) {
    const BigInt& y0 = candidates.surviving[i];
    return eliminate_polynomial(y0, fiber_polynomial(prof, y0));
  });
}

// F(x, y) = y^{d2} - mu x y - a x^{d1} + m^2 + b
inline BivariatePolynomial family_curve(const DiscriminantProfile& prof) {
  const auto& p = prof.params;
  BivariatePolynomial f;
  f.add_term(1, 0, p.d2);
  f.add_term(-prof.linear_multiplier(), 1, 1);
  f.add_term(-p.a, p.d1, 0);
  f.add_term(p.constant(), 0, 0);
  return f;
}

enum class Conclusion { trivial_by_point_elimination, trivial_by_coprime_orders, inconclusive };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::trivial_by_point_elimination: return "TRIVIAL_BY_POINT_ELIMINATION";
    case Conclusion::trivial_by_coprime_orders: return "TRIVIAL_BY_COPRIME_ORDERS";
    case Conclusion::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct Discrepancy {
  std::string id;
  std::string detail;
};

struct TorsionOptions {
  Convention convention = Convention::standard;
  std::optional<unsigned> genus;  // required for the coprime-order route when m != 0
  std::uint64_t prime_bound = 50;
  std::uint64_t infinity_count = 1;
  unsigned threads = 1;
  enumeration_budget budget{};
};

struct TorsionReport {
  DiscriminantProfile profile;
  TorsionOptions options;
  CandidateSet candidates;
  std::vector<EliminationRecord> eliminations;
  Conclusion conclusion = Conclusion::inconclusive;
  std::optional<CertificateSearch> search;
  std::vector<std::string> assumptions;
  std::vector<Discrepancy> discrepancies;
  std::string note;
};

// The two readings of the linear coefficient differ unless m = 1.
inline std::optional<Discrepancy> convention_discrepancy(const FamilyParams& params, Convention used) {
  if (params.m == 1) return std::nullopt;
  const auto other = make_profile(params, used == Convention::standard ? Convention::paper_ex2 : Convention::standard);
  return Discrepancy{"EX2-CONVENTION", std::string("linear coefficient read as ") +
                                           (used == Convention::standard ? "m*y" : "y") + "; the " +
                                           to_string(other.convention) + " reading gives Delta(f)(y) = " +
                                           (IntPolynomial::monomial(other.top, params.d1) + IntPolynomial(std::vector<BigInt>{other.constant}))
                                               .to_string('y')};
}

inline TorsionReport torsion_report(const FamilyParams& params, const TorsionOptions& options = {}) {
  TorsionReport r;
  r.options = options;
  r.profile = make_profile(params, options.convention);
  r.assumptions.push_back("NL-property-C1");
  if (auto d = convention_discrepancy(params, options.convention)) r.discrepancies.push_back(*d);

  r.candidates = y_candidates(r.profile, options.threads);
  r.eliminations = eliminate_points(r.profile, r.candidates, options.threads);
  const bool all_eliminated =
      std::all_of(r.eliminations.begin(), r.eliminations.end(), [](const auto& e) { return e.eliminated; });
  if (all_eliminated) {
    r.conclusion = Conclusion::trivial_by_point_elimination;
    return r;
  }

  std::optional<GenusSpec> genus;
  if (params.m == 0) {
    genus = genus_superelliptic(params.d2, params.d1);
  } else if (options.genus) {
    genus = GenusSpec::user(*options.genus);
  }
  if (!genus) {
    r.note = "rational points survive elimination and no genus was supplied for the coprime-order route";
    return r;
  }
  r.assumptions.push_back("INFINITY-MODEL");
  if (genus->source == GenusSpec::source_kind::user_supplied) r.assumptions.push_back("GENUS-USER");
  r.search = find_certificate_primes(family_curve(r.profile), *genus, options.prime_bound,
                                     {options.infinity_count, options.threads, options.budget});
  if (r.search->certificate && r.search->certificate->valid()) {
    r.conclusion = Conclusion::trivial_by_coprime_orders;
  } else {
    r.note = "no pair of good primes with coprime Jacobian orders up to " + std::to_string(options.prime_bound);
  }
  return r;
}

}  // namespace selli
