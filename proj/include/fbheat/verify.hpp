#pragma once

#include "fbheat/report.hpp"

namespace fbheat {

/// Scale knobs for the invariant suite; defaults run in under a minute.
struct VerifyConfig {
    double epsilon = 0.5;
    int truncation = 64;   // A_+ section size for spectral checks
    int mesh_elements = 1024;
    Precision precision = Precision::standard;
};

/// Run every module invariant at the configured desk scale and collect one
/// pass/fail row per check.
VerifyReport run_verification(const VerifyConfig& cfg);

} // namespace fbheat
