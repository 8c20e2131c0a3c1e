// selli: torsion and Diophantine certificates for the superelliptic family
// y^{d2} = a x^{d1} + m x y - m^2 - b.
//
// Exit codes: 0 success, 1 invalid parameters, 2 inconclusive or
// discrepancy found, 3 certificate verification failure.

#include <selli/selli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInconclusive = 2;
constexpr int kVerifyFailed = 3;

void emit(const selli::json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw selli::error(selli::errc::parameter, "cannot write " + out_path);
  f << text;
}

struct CurveFlags {
  std::string a, m;
  long long d1 = 0, d2 = 0;
  std::string b_override;
  std::string convention = "standard";
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "leading coefficient a")->required();
    cmd->add_option("--m", m, "mixed-term coefficient m")->required();
    cmd->add_option("--d1", d1, "x-degree d1")->required();
    cmd->add_option("--d2", d2, "y-degree d2 = 2d")->required();
    cmd->add_option("--b-override", b_override, "explicit b = 2^d1 a - 3^m' (m' odd)");
    cmd->add_option("--convention", convention, "standard | paper-ex2")
        ->check(CLI::IsMember({"standard", "paper-ex2"}));
    cmd->add_option("--threads", threads, "worker threads (default: SELLI_CERT_THREADS or 1)");
  }

  selli::FamilyParams params() const {
    selli::RawFamilyParams raw{selli::parse_bigint(a), selli::parse_bigint(m), d1, d2, std::nullopt};
    if (!b_override.empty()) raw.b_override = selli::parse_bigint(b_override);
    return selli::validate_params(raw);
  }
};

int run_analyze(const CurveFlags& flags, std::optional<unsigned> genus, std::uint64_t prime_bound,
                std::uint64_t infinity_count, const std::string& out) {
  selli::TorsionOptions opt;
  opt.convention = selli::parse_convention(flags.convention);
  opt.genus = genus;
  opt.prime_bound = prime_bound;
  opt.infinity_count = infinity_count;
  opt.threads = selli::resolve_threads(flags.threads);
  const auto report = selli::torsion_report(flags.params(), opt);
  emit(selli::to_json(report), out);

  std::cerr << "conclusion: " << selli::to_string(report.conclusion) << "\n";
  std::cerr << "y_max: " << report.candidates.y_max << ", surviving:";
  for (const auto& y : report.candidates.surviving) std::cerr << " " << y;
  std::cerr << "\n";
  for (const auto& d : report.discrepancies) std::cerr << "discrepancy " << d.id << ": " << d.detail << "\n";
  if (!report.note.empty()) std::cerr << "note: " << report.note << "\n";
  return report.conclusion == selli::Conclusion::inconclusive ? kInconclusive : kOk;
}

int run_y_candidates(const CurveFlags& flags) {
  const auto prof = selli::make_profile(flags.params(), selli::parse_convention(flags.convention));
  const auto c = selli::y_candidates(prof, selli::resolve_threads(flags.threads));
  selli::json j;
  j["convention"] = flags.convention;
  j["top"] = prof.top.str();
  j["constant"] = prof.constant.str();
  j["y_max"] = c.y_max.str();
  selli::json cand = selli::json::array();
  for (const auto& e : c.candidates) cand.push_back({{"y", e.y.str()}, {"delta", e.delta.str()}, {"passes", e.passes_divisibility}});
  j["candidates"] = cand;
  selli::json surv = selli::json::array();
  for (const auto& y : c.surviving) surv.push_back(y.str());
  j["surviving"] = surv;
  emit(j, "");
  return kOk;
}

int run_check_diophantine(const std::string& a, long long d1, long long d2, const std::string& b_mode, long long m_prime,
                          std::int64_t box, std::uint64_t modulus_bound, std::uint64_t qr_bound, int threads,
                          const std::string& out) {
  const auto params = selli::validate_dio_params({selli::parse_bigint(a), d1, d2, selli::parse_b_mode(b_mode), m_prime});
  selli::DioOptions opt;
  opt.box = box;
  opt.modulus_bound = modulus_bound;
  opt.qr_prime_bound = qr_bound;
  opt.threads = selli::resolve_threads(threads);
  opt.budget.max_modulus = std::max<std::uint64_t>(opt.budget.max_modulus, modulus_bound);
  const auto report = selli::check_diophantine(params, opt);
  emit(selli::to_json(report), out);

  std::cerr << "b = " << params.b << "; solutions in box " << box << ": " << report.solutions.size() << "\n";
  for (const auto& e : report.sweep) {
    std::cerr << "  x = " << e.x_class.r << " mod 12: ";
    if (e.certificate) std::cerr << "obstructed mod " << e.certificate->modulus << "\n";
    else std::cerr << "no obstruction up to " << modulus_bound << "\n";
  }
  for (const auto& d : report.discrepancies) std::cerr << "discrepancy " << d.id << ": " << d.detail << "\n";
  return report.solutions.empty() && report.discrepancies.empty() ? kOk : kInconclusive;
}

int run_count_points(const std::string& curve_text, std::uint64_t p, unsigned k, std::uint64_t infinity_count,
                     int threads) {
  const auto curve = selli::parse_curve(curve_text);
  const selli::PrimeField field(p);
  const selli::CurveEquationModP reduced(curve, field);
  const selli::enumeration_budget budget;
  const selli::ExtField ext(field, k, budget.max_field_order());
  const auto count = selli::count_points(reduced, ext, infinity_count, selli::resolve_threads(threads), budget);
  selli::json j;
  j["curve"] = curve.to_string() + " = 0";
  j["p"] = p;
  j["k"] = k;
  j["field_modulus"] = ext.modulus();
  j["affine"] = count.affine;
  j["infinity"] = count.infinity;
  j["N"] = count.total();
  const auto smooth = selli::is_smooth_mod_p(reduced, budget);
  j["smooth_mod_p"] = smooth.smooth;
  if (!smooth.smooth) j["singular_reason"] = smooth.reason;
  if (smooth.witness) j["singular_point"] = {smooth.witness->first, smooth.witness->second};
  emit(j, "");
  return kOk;
}

int run_jacobian_order(std::uint64_t p, unsigned g, const std::vector<std::string>& counts_text,
                       const std::string& curve_text, std::uint64_t infinity_count, int threads) {
  std::vector<selli::BigInt> counts;
  if (!curve_text.empty()) {
    const selli::CurveEquationModP reduced(selli::parse_curve(curve_text), selli::PrimeField(p));
    for (const auto& e : selli::count_table(reduced, g, infinity_count, selli::resolve_threads(threads)))
      counts.emplace_back(e.total());
  } else {
    for (const auto& c : counts_text) counts.push_back(selli::parse_bigint(c));
  }
  if (counts.size() != g) throw selli::error(selli::errc::parameter, "need exactly g point counts N_1..N_g");
  const auto L = selli::l_polynomial_from_counts(p, selli::GenusSpec::user(g), counts);
  selli::json j;
  j["p"] = p;
  j["g"] = g;
  selli::json cj = selli::json::array();
  for (const auto& c : counts) cj.push_back(c.str());
  j["counts"] = cj;
  selli::json lj = selli::json::array();
  for (const auto& c : L.coefficients) lj.push_back(c.str());
  j["l_polynomial"] = lj;
  j["order"] = selli::jacobian_order(L).str();
  emit(j, "");
  return kOk;
}

int run_discriminant(const std::string& poly, const std::string& expect, unsigned d2, const std::string& out) {
  const auto f = selli::parse_polynomial(poly).to_univariate();
  std::optional<selli::BigInt> expected;
  if (!expect.empty()) expected = selli::parse_bigint(expect);
  const auto c = selli::check_discriminant(f, expected, d2);
  emit(selli::to_json(c), out);
  std::cerr << "discriminant(" << f.to_string() << ") = " << c.by_resultant << "\n";
  if (!c.matches()) {
    std::cerr << "discrepancy DISCRIMINANT-MISMATCH: expected " << *c.expected << "\n";
    return kInconclusive;
  }
  return kOk;
}

int run_verify(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw selli::error(selli::errc::parameter, "cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  selli::json j;
  try {
    j = selli::json::parse(text);
  } catch (const std::exception& e) {
    std::cerr << "verification failed: format (" << e.what() << ")\n";
    return kVerifyFailed;
  }
  const auto result = selli::verify_certificate(j);
  if (result.ok()) {
    std::cerr << "verified\n";
    return kOk;
  }
  for (const auto& b : result.failures) std::cerr << "verification failed: " << b << "\n";
  return kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion and Diophantine certificates for a superelliptic family"};
  app.require_subcommand(1);

  CurveFlags analyze_flags;
  std::optional<unsigned> genus;
  std::uint64_t prime_bound = 50, infinity_count = 1;
  std::string out;
  auto* analyze = app.add_subcommand("analyze-curve", "certify trivial rational torsion of Jac(C)");
  analyze_flags.attach(analyze);
  analyze->add_option("--genus", genus, "genus for the coprime-order route (required when m != 0)");
  analyze->add_option("--prime-bound", prime_bound, "largest prime scanned for certificate primes");
  analyze->add_option("--infinity-count", infinity_count, "points at infinity added to affine counts");
  analyze->add_option("--out", out, "write the certificate here instead of stdout");

  CurveFlags cand_flags;
  auto* ycand = app.add_subcommand("y-candidates", "torsion y-coordinate candidates");
  cand_flags.attach(ycand);

  std::string dio_a, b_mode = "standard";
  long long dio_d1 = 0, dio_d2 = 0, m_prime = 1;
  std::int64_t box = 30;
  std::uint64_t modulus_bound = 360, qr_bound = 10'000;
  int dio_threads = 0;
  auto* dio = app.add_subcommand("check-diophantine", "certify a x^d1 - y^d2 - z^2 + xyz - b = 0 has no solutions");
  dio->add_option("--a", dio_a, "coefficient a")->required();
  dio->add_option("--d1", dio_d1, "x exponent")->required();
  dio->add_option("--d2", dio_d2, "y exponent")->required();
  dio->add_option("--b-mode", b_mode, "standard | corollary1")->check(CLI::IsMember({"standard", "corollary1"}));
  dio->add_option("--m-prime", m_prime, "odd m' for b = 2^d1 a - 3^m' (corollary1 mode)");
  dio->add_option("--box", box, "bounded search radius");
  dio->add_option("--modulus-bound", modulus_bound, "largest modulus tried by the obstruction sweep");
  dio->add_option("--qr-bound", qr_bound, "prime bound for the quadratic-residue law check");
  dio->add_option("--threads", dio_threads, "worker threads");
  dio->add_option("--out", out, "write the certificate here instead of stdout");

  std::string curve_text;
  std::uint64_t cp_p = 0, cp_inf = 1;
  unsigned cp_k = 1;
  int cp_threads = 0;
  auto* count = app.add_subcommand("count-points", "count points of F(x, y) = 0 over F_{p^k}");
  count->add_option("--curve", curve_text, "curve equation, e.g. \"y^2=x^3+1\"")->required();
  count->add_option("--p", cp_p, "characteristic")->required();
  count->add_option("--k", cp_k, "extension degree");
  count->add_option("--infinity-count", cp_inf, "points at infinity");
  count->add_option("--threads", cp_threads, "worker threads");

  std::uint64_t jo_p = 0, jo_inf = 1;
  unsigned jo_g = 1;
  std::vector<std::string> jo_counts;
  std::string jo_curve;
  int jo_threads = 0;
  auto* jac = app.add_subcommand("jacobian-order", "Jacobian order from point counts N_1..N_g");
  jac->add_option("--p", jo_p, "characteristic")->required();
  jac->add_option("--g", jo_g, "genus")->required();
  jac->add_option("--counts", jo_counts, "N_1 .. N_g");
  jac->add_option("--curve", jo_curve, "count N_1..N_g of this curve instead");
  jac->add_option("--infinity-count", jo_inf, "points at infinity when counting --curve");
  jac->add_option("--threads", jo_threads, "worker threads");

  std::string poly, expect;
  unsigned disc_d2 = 0;
  auto* disc = app.add_subcommand("discriminant", "discriminant of a polynomial in x");
  disc->add_option("--poly", poly, "e.g. \"x^5-x+1\"")->required();
  disc->add_option("--expect", expect, "expected value; a mismatch exits 2");
  disc->add_option("--d2", disc_d2, "also list y with y^d2 | discriminant");
  disc->add_option("--out", out, "write the report here instead of stdout");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "re-check a certificate from its stated inputs");
  verify->add_option("certificate", cert_path, "certificate file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*analyze) return run_analyze(analyze_flags, genus, prime_bound, infinity_count, out);
    if (*ycand) return run_y_candidates(cand_flags);
    if (*dio) return run_check_diophantine(dio_a, dio_d1, dio_d2, b_mode, m_prime, box, modulus_bound, qr_bound, dio_threads, out);
    if (*count) return run_count_points(curve_text, cp_p, cp_k, cp_inf, cp_threads);
    if (*jac) return run_jacobian_order(jo_p, jo_g, jo_counts, jo_curve, jo_inf, jo_threads);
    if (*disc) return run_discriminant(poly, expect, disc_d2, out);
    if (*verify) return run_verify(cert_path);
  } catch (const selli::hypothesis_error& e) {
    for (const auto& v : e.violations()) std::cerr << "violation " << v.code << ": " << v.message << "\n";
    return kInvalid;
  } catch (const selli::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
