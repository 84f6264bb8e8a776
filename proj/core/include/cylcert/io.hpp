#pragma once

#include <string>

#include "cylcert/certificate.hpp"
#include "cylcert/report.hpp"

namespace cylcert {

/// Parse and structurally validate a certificate document. Diagnostics name
/// the path of the offending field; unknown fields are rejected.
Certificate parse_certificate(const std::string& bytes);

/// Canonical serialization: sorted keys, canonical rationals, curves in
/// declaration order, single trailing newline. Byte-identical across runs.
std::string serialize_certificate(const Certificate& cert);

Certificate load_certificate(const std::string& path);

/// Machine-readable report (schema_version 1); deterministic for identical
/// inputs, witnesses included.
std::string report_to_json(const VerificationReport& report);

}  // namespace cylcert
