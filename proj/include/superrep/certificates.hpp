#pragma once

#include "superrep/lp.hpp"

#include <string>
#include <vector>

namespace superrep {

struct CertificateCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CertificateReport {
    std::vector<CertificateCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }
};

/// Re-derives every certificate condition implied by outcome.status against
/// lp, with exact arithmetic. A failing condition is reported, not thrown.
CertificateReport verify_certificate(const LinearProgram& lp, const LpOutcome& outcome);

}  // namespace superrep
