#include "hscale/report.hpp"

#include <stdexcept>

namespace hscale {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::PassProved:
      return "PASS-PROVED";
    case Verdict::PassEmpirical:
      return "PASS-EMPIRICAL";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case Verdict::Undefined:
      return "UNDEFINED";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "PASS-PROVED") return Verdict::PassProved;
  if (s == "PASS-EMPIRICAL") return Verdict::PassEmpirical;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  if (s == "UNDEFINED") return Verdict::Undefined;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (c.verdict == Verdict::Fail) return false;
  return true;
}

}  // namespace hscale
