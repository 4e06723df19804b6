#ifndef HSCALE_VERIFY_HPP
#define HSCALE_VERIFY_HPP

#include "hscale/ofamily.hpp"
#include "hscale/report.hpp"
#include "hscale/system.hpp"

namespace hscale {

struct VerifyOptions {
  std::uint64_t seed = 42;
  int samples = 200;
  double tol = 1e-9;  // generic class-equality tolerance; claim-specific
                      // thresholds are pinned per check
};

/// Runs the full claim-by-claim suite on one system: axioms, duality,
/// separation, the isometry biconditional, conditions (A)/(C), the
/// parallelogram audit, H0 and the reconstruction round trip, the
/// uniqueness intertwiner, and the operator-algebra laws. Math failures
/// become FAIL entries, never exceptions. Entries are ordered by check id.
/// When the system was built from an operator family, pass it to also audit
/// the closed-form linking map and the Theta factorization.
Report run_verification(const ContractiveSystem& s, const VerifyOptions& options = {},
                        const OFamily* family = nullptr);

}  // namespace hscale

#endif
