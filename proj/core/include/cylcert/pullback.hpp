#pragma once

#include "cylcert/certificate.hpp"

namespace cylcert {

/// Pullback of a non-exceptional curve under the minimal resolution: the
/// curve plus, per singular point, the unique non-negative rational
/// correction making the class orthogonal to every exceptional curve.
DivisorExpr pullback_curve(const std::string& c, const CurveConfig& cfg,
                           const std::vector<SingularityDecl>& sings);

/// -K plus the pulled-back ample summands (du Val resolutions are crepant,
/// so the -K part carries no correction).
DivisorExpr pullback_ample(const Certificate& cert);

}  // namespace cylcert
