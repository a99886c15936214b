#pragma once

#include "dyndeg/oracle.hpp"

namespace dyndeg {

/// Self-validation of an oracle against the exchange/sandwich/submultiplicative
/// inequalities that every genuine mixed-degree family satisfies. Any violation
/// is a defect in the backend, never in the map.
struct ValidationIssue {
    std::string check;    // "sandwich" | "exchange" | "submultiplicative"
    std::string witness;  // the sampled parameters, with both exact sides
};

struct ValidationReport {
    long trials_requested = 0;
    long checks_run = 0;
    long skipped_unsupported = 0;
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
};

ValidationReport validate_oracle(MixedDegreeOracle& oracle, long trials, std::uint64_t seed);

}  // namespace dyndeg
