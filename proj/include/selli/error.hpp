#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selli {

enum class errc {
  parameter,
  budget_exceeded,
  unsupported_parameter,
  hypothesis,
  weil_violation,
  non_integer_coefficient,
  parse,
  verification,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::parameter: return "PARAMETER";
    case errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case errc::unsupported_parameter: return "UNSUPPORTED_PARAMETER";
    case errc::hypothesis: return "HYPOTHESIS";
    case errc::weil_violation: return "WEIL_VIOLATION";
    case errc::non_integer_coefficient: return "NON_INTEGER_COEFFICIENT";
    case errc::parse: return "PARSE";
    case errc::verification: return "VERIFICATION";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// One violated hypothesis, e.g. {"H3", "a = 14 is not 1 mod 12"}.
struct violation {
  std::string code;
  std::string message;
};

class hypothesis_error : public error {
 public:
  explicit hypothesis_error(std::vector<violation> v)
      : error(errc::hypothesis, summarize(v)), violations_(std::move(v)) {}

  const std::vector<violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<violation>& v) {
    std::string s;
    for (const auto& item : v) {
      if (!s.empty()) s += "; ";
      s += item.code + " " + item.message;
    }
    return s;
  }

  std::vector<violation> violations_;
};

}  // namespace selli
