#pragma once

#include "cylcert/certificate.hpp"

namespace cylcert {

/// Blow up the common point of the curves in `at` (pairwise intersections
/// must all be >= 1 there). Exact bookkeeping: the named curves each drop one
/// self-intersection and one mutual intersection per pair, the new (-1)-curve
/// meets each of them once, k_self drops by one and rho grows by one.
CurveConfig blow_up(const CurveConfig& cfg, const std::vector<std::string>& at,
                    const std::string& new_name);

/// Contract a (-1)-curve: inter(C,D) += inter(C,e)*inter(D,e) and
/// self(C) += inter(C,e)^2 for the remaining curves.
CurveConfig blow_down(const CurveConfig& cfg, const std::string& e);

/// Left-fold of blow_up; a failing step reports its index.
CurveConfig apply_script(const CurveConfig& cfg, const std::vector<SurgeryStep>& steps);

}  // namespace cylcert
