#ifndef HSCALE_REPORT_HPP
#define HSCALE_REPORT_HPP

#include <string>
#include <vector>

namespace hscale {

enum class Verdict { Pass, PassProved, PassEmpirical, Fail, Inconclusive, Undefined };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// One entry of the verification report: a check id, the section anchor of
/// the claim it audits, a verdict and its numeric margin, plus an optional
/// witness description.
struct CheckResult {
  std::string id;
  std::string anchor;
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
  std::string witness;

  bool operator==(const CheckResult&) const = default;
};

struct Report {
  std::vector<CheckResult> checks;

  bool all_pass() const;  // no FAIL entries
  bool operator==(const Report&) const = default;
};

}  // namespace hscale

#endif
