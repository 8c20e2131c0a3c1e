#include <selli/certificate.hpp>

#include <gtest/gtest.h>

using selli::FamilyParams;
using selli::json;

namespace {

json torsion(const FamilyParams& params, selli::TorsionOptions opt = {}) {
  return selli::to_json(selli::torsion_report(params, opt));
}

json coprime_certificate() {
  selli::TorsionOptions opt;
  opt.genus = 3;
  opt.prime_bound = 19;
  return torsion(FamilyParams::unchecked(13, 1, 3, 4, -2), opt);
}

bool keys_sorted(const json& j) {
  if (j.is_object()) {
    std::string prev;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first && !(prev < it.key())) return false;
      prev = it.key();
      first = false;
      if (!keys_sorted(it.value())) return false;
    }
  } else if (j.is_array()) {
    for (const auto& e : j)
      if (!keys_sorted(e)) return false;
  }
  return true;
}

bool failed(const selli::VerifyResult& v, const std::string& block) {
  return std::find(v.failures.begin(), v.failures.end(), block) != v.failures.end();
}

}  // namespace

TEST(Certificate, TorsionRoundTrip) {
  const auto j = torsion(selli::validate_params({13, 1, 3, 10, std::nullopt}));
  EXPECT_EQ(j["schema"], "selli-cert/1");
  EXPECT_EQ(j["conclusion"], "TRIVIAL_BY_POINT_ELIMINATION");
  EXPECT_EQ(j["y_max"], "5");
  EXPECT_EQ(j["surviving"], (json{"-1", "1"}));
  EXPECT_TRUE(selli::verify_certificate(j).ok());
  EXPECT_TRUE(selli::verify_certificate(json::parse(j.dump())).ok());
  EXPECT_TRUE(keys_sorted(j));
}

TEST(Certificate, CoprimeRoundTrip) {
  const auto j = coprime_certificate();
  EXPECT_EQ(j["conclusion"], "TRIVIAL_BY_COPRIME_ORDERS");
  const auto& c = j["certificate_primes"]["certificate"];
  EXPECT_EQ(c["p1"]["p"], 5);
  EXPECT_EQ(c["p2"]["p"], 19);
  EXPECT_EQ(c["gcd"], "1");
  EXPECT_TRUE(selli::verify_certificate(j).ok());
}

TEST(Certificate, DiophantineAndDiscriminantRoundTrip) {
  selli::DioOptions opt;
  opt.box = 8;
  opt.modulus_bound = 48;
  opt.qr_prime_bound = 500;
  const auto d = selli::to_json(selli::check_diophantine(selli::validate_dio_params({13, 3, 2, selli::BMode::standard, 1}), opt));
  EXPECT_EQ(d["kind"], "diophantine");
  EXPECT_TRUE(keys_sorted(d));
  EXPECT_TRUE(selli::verify_certificate(d).ok());
  const auto q = selli::to_json(selli::check_discriminant({1, -1, 0, 0, 0, 1}, selli::BigInt(14400), 2));
  EXPECT_EQ(q["discriminant"], "2869");
  EXPECT_FALSE(q["matches_expected"].get<bool>());
  EXPECT_TRUE(selli::verify_certificate(q).ok());
}

TEST(Tamper, GcdIsRejected) {
  auto j = coprime_certificate();
  j["certificate_primes"]["certificate"]["gcd"] = "7";
  EXPECT_TRUE(failed(selli::verify_certificate(j), "certificate_primes"));
  j = coprime_certificate();
  j["certificate_primes"]["certificate"]["p1"]["order"] = "333";
  EXPECT_TRUE(failed(selli::verify_certificate(j), "certificate_primes"));
}

TEST(Tamper, EliminationRecordIsRejected) {
  const auto good = torsion(selli::validate_params({13, 1, 3, 10, std::nullopt}));
  auto j = good;
  j["eliminations"][0]["rational_x"] = json{"2"};
  EXPECT_TRUE(failed(selli::verify_certificate(j), "eliminations"));
  j = good;
  j["eliminations"][0]["coefficients"][0] = "-102";
  EXPECT_TRUE(failed(selli::verify_certificate(j), "eliminations"));
  j = good;
  j["eliminations"][1]["eliminated"] = false;
  EXPECT_TRUE(failed(selli::verify_certificate(j), "eliminations"));
}

TEST(Tamper, OtherBlocks) {
  const auto good = torsion(selli::validate_params({13, 1, 3, 10, std::nullopt}));
  auto j = good;
  j["y_max"] = "4";
  EXPECT_FALSE(selli::verify_certificate(j).ok());
  j = good;
  j["candidates"][0]["passes"] = true;
  EXPECT_TRUE(failed(selli::verify_certificate(j), "candidates"));
  j = good;
  j["schema"] = "selli-cert/0";
  EXPECT_TRUE(failed(selli::verify_certificate(j), "schema"));
  j = good;
  j.erase("candidates");
  ASSERT_FALSE(selli::verify_certificate(j).ok());
  EXPECT_EQ(selli::verify_certificate(j).failures[0].rfind("format", 0), 0u);
  auto q = selli::to_json(selli::check_discriminant({1, -1, 0, 0, 0, 1}, std::nullopt, 0));
  q["discriminant"] = "2870";
  EXPECT_TRUE(failed(selli::verify_certificate(q), "discriminant"));
}

TEST(Determinism, ThreadCountDoesNotChangeBytes) {
  for (unsigned threads : {2u, 8u}) {
    selli::TorsionOptions one, many;
    many.threads = threads;
    const auto params = selli::validate_params({37, 1, 3, 10, std::nullopt});
    EXPECT_EQ(torsion(params, one).dump(2), torsion(params, many).dump(2));
  }
  selli::TorsionOptions one, many;
  one.genus = many.genus = 3;
  one.prime_bound = many.prime_bound = 19;
  many.threads = 8;
  const auto params = FamilyParams::unchecked(13, 1, 3, 4, -2);
  EXPECT_EQ(torsion(params, one).dump(), torsion(params, many).dump());
}
