#include "oracles.hpp"

#include <selli/diophantine.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using selli::BigInt;
using selli::DioParams;
using selli::ResidueClass;

namespace {

DioParams standard(long long a, long long d1, long long d2) {
  return selli::validate_dio_params({a, d1, d2, selli::BMode::standard, 1});
}

// Exhaustive box search in machine integers.
std::vector<std::array<long long, 3>> exhaustive(long long a, long long b, unsigned d1, unsigned d2, long long box) {
  std::vector<std::array<long long, 3>> out;
  for (long long x = -box; x <= box; ++x)
    for (long long y = -box; y <= box; ++y)
      for (long long z = -box; z <= box; ++z) {
        const oracle::i128 v = a * oracle::ipow(x, d1) - oracle::ipow(y, d2) - oracle::i128(z) * z + oracle::i128(x) * y * z - b;
        if (v == 0) out.push_back({x, y, z});
      }
  return out;
}

std::vector<std::array<long long, 3>> as_ll(const std::vector<selli::Triple>& v) {
  std::vector<std::array<long long, 3>> out;
  for (const auto& t : v) out.push_back({static_cast<long long>(t[0]), static_cast<long long>(t[1]), static_cast<long long>(t[2])});
  return out;
}

}  // namespace

TEST(DioParams, Validation) {
  EXPECT_EQ(standard(13, 3, 2).b, 101);
  EXPECT_EQ(selli::validate_dio_params({13, 3, 2, selli::BMode::corollary1, 3}).b, 104 - 27);
  EXPECT_THROW(standard(12, 3, 2), selli::hypothesis_error);
  EXPECT_THROW(standard(13, 4, 2), selli::hypothesis_error);
  EXPECT_THROW(standard(13, 3, 3), selli::hypothesis_error);
  EXPECT_THROW(standard(13, 3, 6), selli::hypothesis_error);
  EXPECT_THROW(selli::validate_dio_params({13, 3, 2, selli::BMode::corollary1, 2}), selli::hypothesis_error);
}

TEST(Eval, Examples) {
  const auto p13 = DioParams::unchecked(13, 101, 3, 2);
  EXPECT_EQ(selli::eval_equation(p13, 0, 0, 0), -101);
  EXPECT_EQ(selli::eval_equation(p13, 2, 0, 0), 3);
  EXPECT_EQ(selli::eval_equation(DioParams::unchecked(25, 197, 3, 4), 1, 1, 1), -173);
}

TEST(Eval, ModularAgreesWithExact) {
  std::mt19937_64 rng(59);
  const auto p = standard(37, 9, 4);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t M = 2 + rng() % 400;
    const long long x = static_cast<long long>(rng() % 2001) - 1000;
    const long long y = static_cast<long long>(rng() % 2001) - 1000;
    const long long z = static_cast<long long>(rng() % 2001) - 1000;
    BigInt exact = selli::eval_equation(p, x, y, z) % M;
    if (exact < 0) exact += M;
    auto red = [&](long long v) { return static_cast<std::uint64_t>(((v % static_cast<long long>(M)) + M) % M); };
    ASSERT_EQ(selli::mod_eval(p, M, red(x), red(y), red(z)), static_cast<std::uint64_t>(exact));
  }
}

TEST(BoundedSearch, EmptyForStandardB) {
  for (auto [a, d1, d2] : std::vector<std::array<long long, 3>>{{13, 3, 2}, {25, 3, 4}, {37, 3, 2}}) {
    const auto p = standard(a, d1, d2);
    const auto found = selli::bounded_search(p, 30, 4);
    EXPECT_TRUE(found.empty()) << a;
    EXPECT_TRUE(exhaustive(a, static_cast<long long>(p.b), d1, d2, 30).empty());
  }
}

TEST(BoundedSearch, PlantedRootFound) {
  // shift b so that (2, 1, 1) solves a x^3 - y^2 - z^2 + xyz - b = 0
  const BigInt b = BigInt(13) * 8 - 1 - 1 + 2;
  const auto p = DioParams::unchecked(13, b, 3, 2);
  const auto found = selli::bounded_search(p, 10, 2);
  EXPECT_NE(std::find(found.begin(), found.end(), selli::Triple{2, 1, 1}), found.end());
  EXPECT_EQ(as_ll(found), exhaustive(13, static_cast<long long>(b), 3, 2, 10));
  for (const auto& t : found) EXPECT_EQ(selli::eval_equation(p, t[0], t[1], t[2]), 0);
}

TEST(BoundedSearch, ClosedUnderSignFlip) {
  for (long long b : {3LL, 7LL, 104LL, -5LL, 60LL}) {
    const auto p = DioParams::unchecked(13, b, 3, 2);
    const auto found = selli::bounded_search(p, 15);
    std::set<std::array<long long, 3>> s;
    for (const auto& t : as_ll(found)) s.insert(t);
    for (const auto& t : s) EXPECT_TRUE(s.count({t[0], -t[1], -t[2]})) << b;
    EXPECT_EQ(as_ll(found), exhaustive(13, b, 3, 2, 15));
  }
}

TEST(BoundedSearch, WideFallbackMatchesFastPath) {
  // d1 = 51 pushes magnitudes past the 128-bit fast path
  const auto p = DioParams::unchecked(13, 8 * 13 - 3, 51, 2);
  EXPECT_TRUE(selli::bounded_search(p, 6).empty());
  const auto planted = DioParams::unchecked(1, 1 - 1 - 1 + 1, 51, 2);  // (1, 1, 1)
  const auto found = selli::bounded_search(planted, 6);
  EXPECT_NE(std::find(found.begin(), found.end(), selli::Triple{1, 1, 1}), found.end());
}

TEST(Residue, Examples) {
  const auto p = standard(13, 3, 2);
  // exhaustive 4^3 oracle for even x mod 4
  bool any = false;
  for (std::uint64_t x = 0; x < 4; x += 2)
    for (std::uint64_t y = 0; y < 4; ++y)
      for (std::uint64_t z = 0; z < 4; ++z) any = any || selli::mod_eval(p, 4, x, y, z) == 0;
  const auto r4 = selli::residue_obstruction(p, 4, {0, 2});
  EXPECT_EQ(r4.certified, !any);
  EXPECT_TRUE(r4.certified);
  EXPECT_FALSE(selli::residue_obstruction(p, 1, {0, 1}).certified);
  EXPECT_FALSE(selli::residue_obstruction(p, 12, {5, 12}).certified);
}

TEST(Residue, Errors) {
  const auto p = standard(13, 3, 2);
  try {
    selli::residue_obstruction(p, 10, {1, 4});
    FAIL();
  } catch (const selli::error& e) {
    EXPECT_EQ(e.code(), selli::errc::parameter);
  }
  try {
    selli::residue_obstruction(p, 720, {0, 12});
    FAIL();
  } catch (const selli::error& e) {
    EXPECT_EQ(e.code(), selli::errc::budget_exceeded);
  }
}

TEST(Residue, CertificatesAreSound) {
  for (long long a : {13LL, 25LL}) {
    const auto p = standard(a, 3, 2);
    for (std::int64_t r = 0; r < 12; ++r) {
      const auto e = selli::certify_class(p, {r, 12}, 48);
      if (!e.certificate) continue;
      EXPECT_TRUE(selli::bounded_search(p, 50, 4, ResidueClass{r, 12}).empty()) << a << " r=" << r;
    }
  }
}

TEST(Sweep, Shape) {
  const auto p = standard(13, 3, 2);
  const auto sweep = selli::obstruction_sweep(p, 360, 4);
  ASSERT_EQ(sweep.size(), 12u);
  for (const auto& e : sweep) {
    if (e.x_class.r == 5 || e.x_class.r == 9) {
      EXPECT_FALSE(e.certificate) << e.x_class.r;
      EXPECT_EQ(e.moduli_tried, 30u);
    } else {
      ASSERT_TRUE(e.certificate) << e.x_class.r;
      EXPECT_EQ(e.certificate->modulus, 12u);
    }
  }
  for (const auto& e : selli::obstruction_sweep(p, 11)) EXPECT_FALSE(e.certificate);
}

TEST(Sweep, EvenClassCorollaryMode) {
  const auto p = selli::validate_dio_params({13, 3, 2, selli::BMode::corollary1, 1});
  const auto e = selli::certify_class(p, {0, 2}, 360);
  ASSERT_TRUE(e.certificate);
  EXPECT_EQ(e.certificate->modulus, 4u);
}

TEST(Sweep, IndependentOfOrderAndThreads) {
  const auto p = standard(25, 3, 4);
  const auto base = selli::obstruction_sweep(p, 120, 1);
  std::vector<std::int64_t> order(12);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(61);
  for (int round = 0; round < 3; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    for (auto r : order) {
      const auto e = selli::certify_class(p, {r, 12}, 120, 1 + round * 3);
      ASSERT_EQ(e.certificate.has_value(), base[r].certificate.has_value());
      if (e.certificate) {
        EXPECT_EQ(e.certificate->modulus, base[r].certificate->modulus);
        EXPECT_EQ(e.certificate->tuples_checked, base[r].certificate->tuples_checked);
      } else {
        EXPECT_EQ(e.moduli_tried, base[r].moduli_tried);
      }
    }
  }
}

TEST(Tables, ModFour) {
  const auto o = selli::mod4_obstruction();
  EXPECT_EQ(o.sum.attained, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_TRUE(o.sum_obstructs);
  EXPECT_EQ(o.difference.attained, (std::vector<std::uint64_t>{0, 1, 3}));
  EXPECT_FALSE(o.difference_obstructs);
  EXPECT_EQ(o.sum.entries.size(), 16u);
  EXPECT_TRUE(selli::attains(o.sum, 0));
}

TEST(Tables, Parity) {
  for (unsigned s = 1; s <= 5; ++s) {
    const auto t = selli::parity_table(s);
    EXPECT_TRUE(t.only_trivial);
    EXPECT_EQ(t.entries.size(), 4u);
  }
}

TEST(QrLaw, Examples) {
  const auto r = selli::qr_law_check(10000);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.primes_checked, selli::primes_in_range(5, 10000).size());
  EXPECT_EQ(selli::legendre_symbol(3, 11), 1);
  EXPECT_EQ(11 % 12, 11);
  EXPECT_EQ(selli::legendre_symbol(3, 5), -1);
  EXPECT_THROW(selli::qr_law_check(4), selli::error);
  for (std::int64_t p : {5, 7, 11, 13, 23, 37}) EXPECT_EQ(oracle::legendre(3, p) == 1, p % 12 == 1 || p % 12 == 11);
}
