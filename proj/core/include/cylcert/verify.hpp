#pragma once

#include <optional>

#include "cylcert/certificate.hpp"
#include "cylcert/pullback.hpp"
#include "cylcert/report.hpp"
#include "cylcert/surgery.hpp"

namespace cylcert {

/// Standard fiber numerics of a P^1-fibration: F.F = 0 and F.K = -2.
bool check_fiber_class(const DivisorExpr& f, const CurveConfig& cfg);

/// One singular fiber: class-equal to the reference fiber, every component
/// pairs to zero with the fiber, and the support graph is connected.
bool check_singular_fiber(const std::map<std::string, int>& fiber, const DivisorExpr& f_ref,
                          const CurveConfig& cfg);

/// The section meets the common fiber class once and lies in no fiber.
bool check_section(const std::string& s, const FibrationClaim& fib, const CurveConfig& cfg);

/// Fiber-list completeness via the Euler count: sum(components - 1) over the
/// declared singular fibers must equal (rho + 2) - 4 on the final surface.
bool euler_completeness(const FibrationClaim& fib, const CurveConfig& final_cfg);

struct AmpleLint {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Necessary positivity of the pulled-back ample class against every listed
/// curve (a lint: ampleness on the singular surface is only partially visible
/// in the listed curves).
AmpleLint ample_necessary_check(const Certificate& cert);

struct HirzebruchReport {
    int n = 0;
    std::vector<std::string> contracted;  // in contraction order
};

/// Greedily contract (-1)-curve fiber components away from the section until
/// every declared fiber is irreducible, then validate the relatively minimal
/// picture: 0-curve fibers, pairwise disjoint, section meeting each once.
HirzebruchReport contract_fibration(const FibrationClaim& fib, const CurveConfig& final_cfg,
                                    unsigned tie_break_seed = 0);

/// Full pipeline over one certificate; failures are verdicts, not exceptions.
VerificationReport verify_certificate(const Certificate& cert);

}  // namespace cylcert
