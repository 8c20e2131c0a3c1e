#pragma once

// Self-contained JSON certificates ("selli-cert/1") for both pipelines and
// their independent re-verification.

#include <selli/diophantine.hpp>
#include <selli/family.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace selli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "selli-cert/1";
inline constexpr const char* kToolVersion = "0.1.0";

namespace cert_detail {

inline json big(const BigInt& v) { return v.str(); }

inline BigInt big(const json& j) {
  if (!j.is_string()) throw error(errc::verification, "expected an integer string");
  return parse_bigint(j.get<std::string>());
}

inline json bigs(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(r.to_string());
  return a;
}

inline json l_polynomial(const LPolynomial& L) { return bigs(L.coefficients); }

inline json prime_record(const PrimeRecord& r) {
  json j;
  j["p"] = r.p;
  j["status"] = r.status;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.counts.empty()) {
    json c = json::array();
    for (const auto& e : r.counts) c.push_back({{"k", e.k}, {"affine", e.affine}, {"infinity", e.infinity}, {"total", e.total()}});
    j["counts"] = c;
  }
  if (r.l_polynomial) j["l_polynomial"] = l_polynomial(*r.l_polynomial);
  if (r.status == "ok") j["order"] = big(r.order);
  return j;
}

}  // namespace cert_detail

inline json to_json(const FamilyParams& p) {
  using cert_detail::big;
  json j{{"a", big(p.a)}, {"m", big(p.m)}, {"d1", p.d1}, {"d2", p.d2}, {"d", p.d}, {"b", big(p.b)}};
  j["b_power"] = p.b_power ? json(*p.b_power) : json(nullptr);
  return j;
}

inline json to_json(const CertificateSearch& s) {
  json j;
  j["genus"] = s.genus.g;
  j["genus_source"] = to_string(s.genus.source);
  j["prime_bound"] = s.prime_bound;
  j["infinity_count"] = s.infinity_count;
  json scan = json::array();
  for (const auto& r : s.scanned) scan.push_back(cert_detail::prime_record(r));
  j["scan"] = scan;
  if (s.certificate) {
    j["certificate"] = {{"p1", cert_detail::prime_record(s.certificate->first)},
                        {"p2", cert_detail::prime_record(s.certificate->second)},
                        {"gcd", cert_detail::big(s.certificate->gcd_value)}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

inline json to_json(const TorsionReport& r) {
  using cert_detail::big;
  json j;
  j["schema"] = kSchema;
  j["kind"] = "torsion";
  j["tool_version"] = kToolVersion;
  j["params"] = to_json(r.profile.params);
  j["convention"] = to_string(r.profile.convention);
  j["discriminant_profile"] = {{"top_exponent", r.profile.params.d1}, {"top", big(r.profile.top)},
                               {"constant", big(r.profile.constant)}};
  j["options"] = {{"prime_bound", r.options.prime_bound},
                  {"infinity_count", r.options.infinity_count},
                  {"genus", r.options.genus ? json(*r.options.genus) : json(nullptr)}};
  const auto& c = r.candidates;
  j["y_max"] = big(c.y_max);
  j["y_zero"] = {{"delta", big(c.delta_at_zero)}, {"excluded_because", c.zero_exclusion}};
  j["boundary_witness"] = {{"abs_y", big(c.y_max + 1)},
                           {"power", big(c.witness_power)},
                           {"delta_pos", big(c.witness_delta_pos)},
                           {"delta_neg", big(c.witness_delta_neg)}};
  json cand = json::array();
  for (const auto& e : c.candidates) cand.push_back({{"y", big(e.y)}, {"delta", big(e.delta)}, {"passes", e.passes_divisibility}});
  j["candidates"] = cand;
  j["surviving"] = cert_detail::bigs(c.surviving);
  j["degenerate"] = cert_detail::bigs(c.degenerate);
  json elim = json::array();
  for (const auto& e : r.eliminations) {
    elim.push_back({{"y0", big(e.y0)},
                    {"polynomial", e.reduced.to_string()},
                    {"coefficients", cert_detail::bigs(e.reduced.coefficients())},
                    {"rational_x", cert_detail::rationals(e.rational_x)},
                    {"numerator_bound", big(e.numerator_bound)},
                    {"denominator_bound", big(e.denominator_bound)},
                    {"candidates_tested", e.candidates_tested},
                    {"eliminated", e.eliminated}});
  }
  j["eliminations"] = elim;
  j["conclusion"] = to_string(r.conclusion);
  j["certificate_primes"] = r.search ? to_json(*r.search) : json(nullptr);
  j["assumptions"] = r.assumptions;
  json disc = json::array();
  for (const auto& d : r.discrepancies) disc.push_back({{"id", d.id}, {"detail", d.detail}});
  j["discrepancies"] = disc;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// Diophantine side: search, obstruction sweep and the congruence tables.
struct DioOptions {
  std::int64_t box = 30;
  std::uint64_t modulus_bound = 360;
  std::uint64_t qr_prime_bound = 10'000;
  unsigned threads = 1;
  obstruction_budget budget{};
};

struct DioReport {
  DioParams params;
  DioOptions options;
  std::vector<Triple> solutions;
  std::vector<SweepEntry> sweep;
  SweepEntry even_class;
  Mod4Obstruction mod4;
  ParityTable parity;
  QrLawResult qr;
  std::vector<Discrepancy> discrepancies;
};

inline DioReport check_diophantine(const DioParams& p, const DioOptions& o = {}) {
  DioReport r;
  r.params = p;
  r.options = o;
  r.solutions = bounded_search(p, o.box, o.threads);
  r.sweep = obstruction_sweep(p, o.modulus_bound, o.threads, o.budget);
  r.even_class = certify_class(p, {0, 2}, o.modulus_bound, o.threads, o.budget);
  r.mod4 = mod4_obstruction();
  r.parity = parity_table(p.d2 / 2);
  r.qr = qr_law_check(o.qr_prime_bound);
  if (!r.mod4.sum_obstructs)
    r.discrepancies.push_back({"MOD4-SUM", "Y^2 + Z^2 attains 3 mod 4"});
  if (!r.mod4.difference_obstructs)
    r.discrepancies.push_back({"MOD4-DIFF", "Y^2 - Z^2 attains 3 mod 4 (e.g. Y even, Z odd), so it is not an obstruction"});
  if (!r.parity.only_trivial)
    r.discrepancies.push_back({"PARITY", "y^2s + z^2 + yz = 0 mod 2 has solutions other than y = z = 0"});
  if (!r.qr.holds())
    r.discrepancies.push_back({"QR-LAW", "legendre(3, p) disagrees with p = +-1 mod 12"});
  return r;
}

namespace cert_detail {

inline json residue_table(const ResidueTable& t, std::uint64_t target) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back({e[0], e[1], e[2]});
  return {{"modulus", t.modulus}, {"entries", entries}, {"attained", t.attained}, {"target", target},
          {"target_attained", attains(t, target)}};
}

inline json sweep_entry(const SweepEntry& e) {
  json j{{"r", e.x_class.r}, {"c", e.x_class.c}, {"moduli_tried", e.moduli_tried}};
  if (e.certificate) {
    j["modulus"] = e.certificate->modulus;
    j["tuples_checked"] = e.certificate->tuples_checked;
  } else {
    j["modulus"] = nullptr;
  }
  return j;
}

}  // namespace cert_detail

inline json to_json(const DioParams& p) {
  using cert_detail::big;
  return {{"a", big(p.a)}, {"b", big(p.b)}, {"d1", p.d1}, {"d2", p.d2}, {"b_mode", to_string(p.mode)}, {"m_prime", p.m_prime}};
}

inline json to_json(const DioReport& r) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "diophantine";
  j["tool_version"] = kToolVersion;
  j["params"] = to_json(r.params);
  json sols = json::array();
  for (const auto& t : r.solutions) sols.push_back({t[0].str(), t[1].str(), t[2].str()});
  j["bounded_search"] = {{"box", r.options.box}, {"solutions", sols}};
  j["modulus_bound"] = r.options.modulus_bound;
  json sweep = json::array();
  for (const auto& e : r.sweep) sweep.push_back(cert_detail::sweep_entry(e));
  j["obstructions"] = sweep;
  j["even_class"] = cert_detail::sweep_entry(r.even_class);
  json parity_entries = json::array();
  for (const auto& e : r.parity.entries) parity_entries.push_back({e[0], e[1], e[2]});
  json parity_solutions = json::array();
  for (const auto& s : r.parity.solutions) parity_solutions.push_back({s[0], s[1]});
  j["replication"] = {
      {"mod4_sum", cert_detail::residue_table(r.mod4.sum, 3)},
      {"mod4_diff", cert_detail::residue_table(r.mod4.difference, 3)},
      {"parity", {{"s", r.parity.s}, {"entries", parity_entries}, {"solutions", parity_solutions},
                  {"only_trivial", r.parity.only_trivial}}},
      {"qr_law", {{"prime_bound", r.qr.prime_bound}, {"primes_checked", r.qr.primes_checked},
                  {"counterexamples", r.qr.counterexamples}, {"holds", r.qr.holds()}}},
  };
  json disc = json::array();
  for (const auto& d : r.discrepancies) disc.push_back({{"id", d.id}, {"detail", d.detail}});
  j["discrepancies"] = disc;
  return j;
}

// Discriminant of a polynomial compared against an expected (e.g. quoted) value.
struct DiscriminantCheck {
  IntPolynomial polynomial;
  BigInt by_resultant;
  std::optional<BigInt> trinomial_closed_form;  // for A x^n + C x + D
  std::optional<BigInt> expected;
  unsigned d2 = 0;
  std::vector<BigInt> candidates;           // y^{d2} | computed discriminant
  std::vector<BigInt> expected_candidates;  // y^{d2} | expected value
  bool matches() const { return !expected || *expected == by_resultant; }
};

inline std::optional<BigInt> trinomial_discriminant(const IntPolynomial& f) {
  const int n = f.degree();
  if (n < 2) return std::nullopt;
  for (int i = 2; i < n; ++i)
    if (f.coefficient(static_cast<std::size_t>(i)) != 0) return std::nullopt;
  const BigInt A = f.leading(), C = f.coefficient(1), D = f.coefficient(0);
  const unsigned un = static_cast<unsigned>(n);
  const int outer = ((un * (un - 1) / 2) % 2 == 0) ? 1 : -1;
  const int inner = (un - 1) % 2 == 0 ? 1 : -1;
  return outer * ipow(A, un - 2) *
         (ipow(BigInt(un), un) * A * ipow(D, un - 1) + inner * ipow(BigInt(un - 1), un - 1) * ipow(C, un));
}

inline DiscriminantCheck check_discriminant(const IntPolynomial& f, std::optional<BigInt> expected, unsigned d2) {
  DiscriminantCheck c;
  c.polynomial = f;
  c.by_resultant = discriminant(f);
  c.trinomial_closed_form = trinomial_discriminant(f);
  c.expected = std::move(expected);
  c.d2 = d2;
  if (d2 > 0) {
    if (c.by_resultant != 0) c.candidates = fixed_delta_candidates(c.by_resultant, d2);
    if (c.expected && *c.expected != 0) c.expected_candidates = fixed_delta_candidates(*c.expected, d2);
  }
  return c;
}

inline json to_json(const DiscriminantCheck& c) {
  using cert_detail::big;
  json j;
  j["schema"] = kSchema;
  j["kind"] = "discriminant";
  j["tool_version"] = kToolVersion;
  j["polynomial"] = c.polynomial.to_string();
  j["coefficients"] = cert_detail::bigs(c.polynomial.coefficients());
  j["discriminant"] = big(c.by_resultant);
  j["closed_form"] = c.trinomial_closed_form ? big(*c.trinomial_closed_form) : json(nullptr);
  j["expected"] = c.expected ? big(*c.expected) : json(nullptr);
  j["matches_expected"] = c.matches();
  if (c.d2 > 0) {
    j["d2"] = c.d2;
    j["y_candidates"] = cert_detail::bigs(c.candidates);
    if (c.expected) j["y_candidates_from_expected"] = cert_detail::bigs(c.expected_candidates);
  }
  json disc = json::array();
  if (!c.matches())
    disc.push_back({{"id", "DISCRIMINANT-MISMATCH"},
                    {"detail", "computed " + c.by_resultant.str() + ", expected " + c.expected->str()}});
  j["discrepancies"] = disc;
  return j;
}

struct VerifyResult {
  std::vector<std::string> failures;  // names of evidence blocks that did not re-verify
  bool ok() const { return failures.empty(); }
};

namespace cert_detail {

inline void check(VerifyResult& v, bool cond, const std::string& block) {
  if (!cond && std::find(v.failures.begin(), v.failures.end(), block) == v.failures.end()) v.failures.push_back(block);
}

// Delta(f)(y) through the Sylvester resultant, independent of the closed form.
inline BigInt delta_by_resultant(const DiscriminantProfile& prof, const BigInt& y) {
  return discriminant(specialized_polynomial(prof, y));
}

inline void verify_prime(VerifyResult& v, const json& rec, const BivariatePolynomial& curve, const GenusSpec& genus,
                         std::uint64_t infinity_count, const std::string& block) {
  const auto p = rec.at("p").get<std::uint64_t>();
  CertificateSearchOptions opts;
  opts.infinity_count = infinity_count;
  const PrimeRecord fresh = jacobian_order_at(curve, genus, p, opts);
  check(v, fresh.status == "ok", block);
  if (fresh.status != "ok") return;
  check(v, rec.at("status") == "ok", block);
  check(v, big(rec.at("order")) == fresh.order, block);
  check(v, rec.at("l_polynomial") == l_polynomial(*fresh.l_polynomial), block);
  check(v, fresh.l_polynomial->satisfies_functional_equation(), block);
}

}  // namespace cert_detail

inline VerifyResult verify_torsion(const json& j) {
  using namespace cert_detail;
  VerifyResult v;
  const auto& pj = j.at("params");
  const auto params = FamilyParams::unchecked(big(pj.at("a")), big(pj.at("m")), pj.at("d1").get<unsigned>(),
                                              pj.at("d2").get<unsigned>(), big(pj.at("b")));
  const auto prof = make_profile(params, parse_convention(j.at("convention").get<std::string>()));

  const auto& dp = j.at("discriminant_profile");
  check(v, big(dp.at("top")) == prof.top && big(dp.at("constant")) == prof.constant, "discriminant_profile");
  check(v, delta_by_resultant(prof, 0) == prof.constant, "discriminant_profile");

  const BigInt y_max = big(j.at("y_max"));
  check(v, y_max == y_bound(prof), "y_max");
  const auto& w = j.at("boundary_witness");
  const BigInt t = y_max + 1;
  check(v, big(w.at("abs_y")) == t, "boundary_witness");
  const BigInt power = ipow(t, params.d2);
  const BigInt dpos = delta_by_resultant(prof, t), dneg = delta_by_resultant(prof, -t);
  check(v, big(w.at("power")) == power && big(w.at("delta_pos")) == dpos && big(w.at("delta_neg")) == dneg,
        "boundary_witness");
  check(v, dpos != 0 && dneg != 0 && power > abs(dpos) && power > abs(dneg), "boundary_witness");

  std::vector<BigInt> surviving;
  const auto& cand = j.at("candidates");
  check(v, cand.size() == static_cast<std::size_t>(2 * y_max), "candidates");
  BigInt expected_y = -y_max;
  for (const auto& e : cand) {
    if (expected_y == 0) expected_y = 1;
    const BigInt y = big(e.at("y"));
    check(v, y == expected_y, "candidates");
    const BigInt delta = delta_by_resultant(prof, y);
    check(v, big(e.at("delta")) == delta, "candidates");
    const bool passes = delta % ipow(y, params.d2) == 0;
    check(v, e.at("passes").get<bool>() == passes, "candidates");
    if (passes) surviving.push_back(y);
    expected_y += 1;
  }
  check(v, bigs(surviving) == j.at("surviving"), "surviving");

  const auto& elim = j.at("eliminations");
  check(v, elim.size() == surviving.size(), "eliminations");
  bool all_eliminated = true;
  for (std::size_t i = 0; i < elim.size() && i < surviving.size(); ++i) {
    const auto& e = elim[i];
    const BigInt y0 = big(e.at("y0"));
    check(v, y0 == surviving[i], "eliminations");
    const IntPolynomial fiber = fiber_polynomial(prof, y0);
    check(v, e.at("coefficients") == bigs(fiber.coefficients()), "eliminations");
    const auto roots = rational_roots(fiber);
    for (const auto& r : roots) check(v, fiber.homogeneous_value(r.numerator(), r.denominator()) == 0, "eliminations");
    check(v, e.at("rational_x") == rationals(roots), "eliminations");
    check(v, e.at("eliminated").get<bool>() == roots.empty(), "eliminations");
    all_eliminated = all_eliminated && roots.empty();
  }

  const std::string conclusion = j.at("conclusion");
  const auto& cp = j.at("certificate_primes");
  if (conclusion == "TRIVIAL_BY_POINT_ELIMINATION") {
    check(v, all_eliminated, "conclusion");
  } else if (conclusion == "TRIVIAL_BY_COPRIME_ORDERS") {
    check(v, !cp.is_null() && !cp.at("certificate").is_null(), "certificate_primes");
    if (!cp.is_null() && !cp.at("certificate").is_null()) {
      const auto& c = cp.at("certificate");
      const GenusSpec genus{cp.at("genus").get<unsigned>(),
                            cp.at("genus_source") == "formula-superelliptic"
                                ? GenusSpec::source_kind::formula_superelliptic
                                : GenusSpec::source_kind::user_supplied};
      const auto inf = cp.at("infinity_count").get<std::uint64_t>();
      const auto curve = family_curve(prof);
      verify_prime(v, c.at("p1"), curve, genus, inf, "certificate_primes");
      verify_prime(v, c.at("p2"), curve, genus, inf, "certificate_primes");
      const BigInt g = gcd(big(c.at("p1").at("order")), big(c.at("p2").at("order")));
      check(v, g == 1 && big(c.at("gcd")) == g, "certificate_primes");
      check(v, c.at("p1").at("p").get<std::uint64_t>() != c.at("p2").at("p").get<std::uint64_t>(), "certificate_primes");
    }
  } else if (conclusion != "INCONCLUSIVE") {
    check(v, false, "conclusion");
  }
  const auto& assumptions = j.at("assumptions");
  check(v, std::find(assumptions.begin(), assumptions.end(), "NL-property-C1") != assumptions.end(), "assumptions");
  return v;
}

inline VerifyResult verify_diophantine(const json& j) {
  using namespace cert_detail;
  VerifyResult v;
  const auto& pj = j.at("params");
  DioParams p = DioParams::unchecked(big(pj.at("a")), big(pj.at("b")), pj.at("d1").get<unsigned>(), pj.at("d2").get<unsigned>());
  p.mode = parse_b_mode(pj.at("b_mode").get<std::string>());
  p.m_prime = pj.at("m_prime").get<unsigned>();
  check(v, p.b == ipow(BigInt(2), p.d1) * p.a - ipow(BigInt(3), p.m_prime), "params");

  const auto& bs = j.at("bounded_search");
  const auto sols = bounded_search(p, bs.at("box").get<std::int64_t>());
  json fresh = json::array();
  for (const auto& t : sols) fresh.push_back({t[0].str(), t[1].str(), t[2].str()});
  check(v, fresh == bs.at("solutions"), "bounded_search");
  for (const auto& t : sols) check(v, eval_equation(p, t[0], t[1], t[2]) == 0, "bounded_search");

  const obstruction_budget budget{std::max<std::uint64_t>(360, j.at("modulus_bound").get<std::uint64_t>())};
  auto recheck = [&](const json& e, const std::string& block) {
    if (e.at("modulus").is_null()) return;
    const ResidueClass cls{e.at("r").get<std::int64_t>(), e.at("c").get<std::int64_t>()};
    const auto res = residue_obstruction(p, e.at("modulus").get<std::uint64_t>(), cls, 1, budget);
    check(v, res.certified && res.tuples_checked == e.at("tuples_checked").get<std::uint64_t>(), block);
  };
  for (const auto& e : j.at("obstructions")) recheck(e, "obstructions");
  recheck(j.at("even_class"), "even_class");

  const auto& rep = j.at("replication");
  const auto m4 = mod4_obstruction();
  check(v, rep.at("mod4_sum") == residue_table(m4.sum, 3), "mod4_sum");
  check(v, rep.at("mod4_diff") == residue_table(m4.difference, 3), "mod4_diff");
  const auto par = parity_table(rep.at("parity").at("s").get<unsigned>());
  check(v, rep.at("parity").at("only_trivial").get<bool>() == par.only_trivial, "parity");
  const auto qr = qr_law_check(rep.at("qr_law").at("prime_bound").get<std::uint64_t>());
  check(v, rep.at("qr_law").at("holds").get<bool>() == qr.holds() &&
               rep.at("qr_law").at("primes_checked").get<std::uint64_t>() == qr.primes_checked,
        "qr_law");
  return v;
}

inline VerifyResult verify_discriminant(const json& j) {
  using namespace cert_detail;
  VerifyResult v;
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.push_back(big(c));
  const IntPolynomial f(std::move(coeffs));
  const BigInt d = discriminant(f);
  check(v, big(j.at("discriminant")) == d, "discriminant");
  if (auto closed = trinomial_discriminant(f)) check(v, *closed == d, "closed_form");
  if (!j.at("expected").is_null()) check(v, j.at("matches_expected").get<bool>() == (big(j.at("expected")) == d), "expected");
  if (j.contains("d2") && d != 0) {
    check(v, j.at("y_candidates") == bigs(fixed_delta_candidates(d, j.at("d2").get<unsigned>())), "y_candidates");
  }
  return v;
}

// Dispatch on "kind"; malformed certificates fail the "format" block.
inline VerifyResult verify_certificate(const json& j) {
  try {
    if (j.at("schema") != kSchema) return {{"schema"}};
    const std::string kind = j.at("kind");
    if (kind == "torsion") return verify_torsion(j);
    if (kind == "diophantine") return verify_diophantine(j);
    if (kind == "discriminant") return verify_discriminant(j);
    return {{"kind"}};
  } catch (const std::exception& e) {
    return {{std::string("format: ") + e.what()}};
  }
}

}  // namespace selli
