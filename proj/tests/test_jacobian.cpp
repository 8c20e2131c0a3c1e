#include "oracles.hpp"

#include <selli/jacobian.hpp>

#include <gtest/gtest.h>

#include <numeric>

using selli::BigInt;
using selli::CurveEquationModP;
using selli::GenusSpec;
using selli::PrimeField;

namespace {

std::int64_t elliptic_count(std::int64_t a, std::int64_t b, std::int64_t p) {
  return 1 + oracle::legendre_count({b, a, 0, 1}, p);
}

}  // namespace

TEST(Genus, Examples) {
  EXPECT_EQ(selli::genus_superelliptic(2, 3).g, 1u);
  EXPECT_EQ(selli::genus_superelliptic(2, 5).g, 2u);
  EXPECT_EQ(selli::genus_superelliptic(6, 5).g, 10u);
  EXPECT_EQ(selli::genus_superelliptic(10, 3).g, 9u);
  EXPECT_EQ(selli::genus_superelliptic(2, 3).source, GenusSpec::source_kind::formula_superelliptic);
}

TEST(Genus, RiemannHurwitz) {
  // y^n = f(x), deg f = m: 2g - 2 = n(-2) + m(n - 1) + (n - gcd(n, m)) over infinity
  for (unsigned n = 2; n <= 12; ++n)
    for (unsigned m = 3; m <= 15; ++m) {
      const int ramification = static_cast<int>(m * (n - 1) + n - std::gcd(n, m));
      const int two_g = -2 * static_cast<int>(n) + ramification + 2;
      if (two_g < 2) continue;
      EXPECT_EQ(static_cast<int>(selli::genus_superelliptic(n, m).g) * 2, two_g) << n << " " << m;
    }
}

TEST(LPolynomial, Examples) {
  const auto L = selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{6});
  EXPECT_EQ(L.coefficients, (std::vector<BigInt>{1, 0, 5}));
  EXPECT_EQ(selli::jacobian_order(L), 6);
  EXPECT_EQ(elliptic_count(0, 1, 5), 6);
}

TEST(LPolynomial, WeilViolation) {
  try {
    selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{12});
    FAIL();
  } catch (const selli::error& e) {
    EXPECT_EQ(e.code(), selli::errc::weil_violation);
  }
  // the interval edges: (sqrt5 - 1)^2 = 1.53, (sqrt5 + 1)^2 = 10.47
  EXPECT_NO_THROW(selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{10}));
  EXPECT_NO_THROW(selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{2}));
  EXPECT_THROW(selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{11}), selli::error);
  EXPECT_THROW(selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{1}), selli::error);
}

TEST(LPolynomial, NonIntegerCoefficient) {
  // g = 2, p = 3: s1 = 1, s2 = 0 gives c2 = -(s1 c1 + s2)/2 = -1/2
  try {
    selli::l_polynomial_from_counts(3, GenusSpec::user(2), std::vector<BigInt>{3, 10});
    FAIL();
  } catch (const selli::error& e) {
    EXPECT_EQ(e.code(), selli::errc::non_integer_coefficient);
  }
}

TEST(LPolynomial, WeilIntervalExact) {
  // (sqrt p - 1)^{2g} <= v <= (sqrt p + 1)^{2g} against long double for small cases
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (unsigned g = 1; g <= 3; ++g) {
      const long double lo = std::pow(std::sqrt(static_cast<long double>(p)) - 1, 2.0L * g);
      const long double hi = std::pow(std::sqrt(static_cast<long double>(p)) + 1, 2.0L * g);
      for (long long v = 0; v <= static_cast<long long>(hi) + 3; ++v)
        ASSERT_EQ(selli::within_weil_interval(v, p, g), v >= lo && v <= hi) << p << " " << g << " " << v;
    }
}

TEST(JacobianOrder, Examples) {
  EXPECT_EQ(selli::jacobian_order({5, 1, {1, 0, 5}}), 6);
  EXPECT_EQ(selli::jacobian_order({5, 1, {1, -2, 5}}), 4);
  // c1 = N1 - p - 1 = -2 means N1 = 4; find such a curve y^2 = x^3 + ax + b over F_5
  bool found = false;
  for (int a = 0; a < 5 && !found; ++a)
    for (int b = 0; b < 5 && !found; ++b) {
      if ((4 * a * a * a + 27 * b * b) % 5 == 0) continue;
      if (elliptic_count(a, b, 5) != 4) continue;
      found = true;
      const auto L = selli::l_polynomial_from_counts(5, GenusSpec::user(1), std::vector<BigInt>{4});
      EXPECT_EQ(L.coefficients, (std::vector<BigInt>{1, -2, 5}));
    }
  EXPECT_TRUE(found);
  // c1 = 0 for g = 2: P(T) = 1 + c2 T^2 + p^2 T^4, P(1) = 1 + c2 + p^2
  const auto L = selli::l_polynomial_from_counts(7, GenusSpec::user(2), std::vector<BigInt>{8, 50 + 2 * 3});
  EXPECT_EQ(L.coefficients[1], 0);
  EXPECT_EQ(selli::jacobian_order(L), 1 + L.coefficients[2] + 49);
}

TEST(JacobianOrder, GenusOneIdentity) {
  for (auto p : selli::primes_in_range(5, 60))
    for (std::int64_t a = 0; a < 3; ++a)
      for (std::int64_t b = 1; b < 4; ++b) {
        const auto ip = static_cast<std::int64_t>(p);
        if ((4 * a * a * a + 27 * b * b) % ip == 0) continue;
        const auto n = elliptic_count(a, b, ip);
        const auto L = selli::l_polynomial_from_counts(p, GenusSpec::user(1), std::vector<BigInt>{n});
        ASSERT_EQ(selli::jacobian_order(L), n);
        ASSERT_TRUE(L.satisfies_functional_equation());
      }
}

TEST(JacobianOrder, ThreeFieldConsistencyGenus2) {
  for (std::uint64_t p : {7, 11}) {
    const CurveEquationModP c(selli::parse_curve("y^2=x^5-x+1"), PrimeField(p));
    const auto table = selli::count_table(c, 3, 1, 4);
    const auto L = selli::l_polynomial_from_counts(p, GenusSpec::user(2), table);
    EXPECT_TRUE(L.satisfies_functional_equation());
    EXPECT_TRUE(selli::within_weil_interval(selli::jacobian_order(L), p, 2));
    const auto predicted = selli::predicted_counts(L, 3);
    for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(predicted[k], table[k].total()) << "p = " << p << " k = " << k + 1;
  }
  // N_1 over F_7 via the naive oracle
  EXPECT_EQ(oracle::count_affine({{1, 0, 2}, {-1, 5, 0}, {1, 1, 0}, {-1, 0, 0}}, 7, 1) + 1, 7u);
}

TEST(JacobianOrder, RoundTripFromLPolynomial) {
  // build P from arbitrary Weil-compatible middle coefficients, then recover it
  for (auto [p, c1, c2] : std::vector<std::array<long long, 3>>{{7, 0, 3}, {11, 2, 10}, {13, -3, 5}, {5, 1, -2}}) {
    selli::LPolynomial L{static_cast<std::uint64_t>(p), 2, {1, c1, c2, p * c1, p * p}};
    const auto counts = selli::predicted_counts(L, 2);
    const auto back = selli::l_polynomial_from_counts(L.p, GenusSpec::user(2), counts);
    EXPECT_EQ(back.coefficients, L.coefficients);
  }
}

TEST(DivisibilityFilter, Examples) {
  EXPECT_TRUE(selli::order_divisibility_filter(3, {6, 9}));
  EXPECT_FALSE(selli::order_divisibility_filter(3, {6, 7}));
  EXPECT_TRUE(selli::order_divisibility_filter(1, {6, 7, 100}));
  for (int n = 2; n <= 100; ++n) EXPECT_FALSE(selli::order_divisibility_filter(n, {6, 35}));
}

TEST(CertificatePrimes, EllipticSixTorsionHasNoCoprimePair) {
  // E(Q) for y^2 = x^3 + 1 is Z/6, so 6 divides every good-reduction order
  const auto curve = selli::parse_curve("y^2=x^3+1");
  const auto search = selli::find_certificate_primes(curve, GenusSpec::user(1), 20);
  for (const auto& r : search.scanned) {
    if (r.status != "ok") continue;
    const auto n = elliptic_count(0, 1, static_cast<std::int64_t>(r.p));
    EXPECT_EQ(r.order, n) << r.p;
    EXPECT_EQ(n % 6, 0);
  }
  EXPECT_FALSE(search.certificate.has_value());
  EXPECT_EQ(search.scanned[0].status, "bad-reduction");  // p = 2
  EXPECT_EQ(search.scanned[1].status, "bad-reduction");  // p = 3
}

TEST(CertificatePrimes, TooSmallBoundIsNotFound) {
  const auto search = selli::find_certificate_primes(selli::parse_curve("y^2=x^3+1"), GenusSpec::user(1), 2);
  EXPECT_FALSE(search.certificate);
}

TEST(CertificatePrimes, FindsFirstCoprimePair) {
  // y^2 = x^3 + x + 1: orders by the Legendre oracle, first pair with gcd 1
  const auto search = selli::find_certificate_primes(selli::parse_curve("y^2=x^3+x+1"), GenusSpec::user(1), 30);
  ASSERT_TRUE(search.certificate);
  std::vector<std::pair<std::uint64_t, std::int64_t>> good;
  for (auto p : selli::primes_in_range(5, 30)) {
    if ((4 + 27) % p == 0) continue;
    good.emplace_back(p, elliptic_count(1, 1, static_cast<std::int64_t>(p)));
  }
  std::pair<std::uint64_t, std::uint64_t> expect{0, 0};
  for (std::size_t i = 0; i < good.size() && !expect.first; ++i)
    for (std::size_t j = i + 1; j < good.size(); ++j)
      if (std::gcd(good[i].second, good[j].second) == 1) {
        expect = {good[i].first, good[j].first};
        break;
      }
  EXPECT_EQ(search.certificate->first.p, expect.first);
  EXPECT_EQ(search.certificate->second.p, expect.second);
  EXPECT_TRUE(search.certificate->valid());
  for (int n = 2; n <= 100; ++n)
    EXPECT_FALSE(selli::order_divisibility_filter(n, {search.certificate->first.order, search.certificate->second.order}));
}

TEST(CertificatePrimes, ThreadCountInvariant) {
  const auto curve = selli::parse_curve("y^2=x^5-x+1");
  selli::CertificateSearchOptions one, many;
  many.threads = 8;
  const auto a = selli::find_certificate_primes(curve, GenusSpec::user(2), 40, one);
  const auto b = selli::find_certificate_primes(curve, GenusSpec::user(2), 40, many);
  ASSERT_EQ(a.scanned.size(), b.scanned.size());
  for (std::size_t i = 0; i < a.scanned.size(); ++i) {
    EXPECT_EQ(a.scanned[i].status, b.scanned[i].status);
    EXPECT_EQ(a.scanned[i].order, b.scanned[i].order);
  }
  ASSERT_EQ(a.certificate.has_value(), b.certificate.has_value());
  if (a.certificate) EXPECT_EQ(a.certificate->first.p, b.certificate->first.p);
}

TEST(CertificatePrimes, BudgetSkipsPrimeWithReason) {
  selli::CertificateSearchOptions opt;
  opt.budget.max_pairs = 10'000;  // field order at most 100
  const auto search = selli::find_certificate_primes(selli::parse_curve("y^2=x^5-x+1"), GenusSpec::user(2), 13, opt);
  for (const auto& r : search.scanned)
    if (r.p > 10) EXPECT_EQ(r.status, "budget-exceeded") << r.p;
}
