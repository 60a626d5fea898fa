#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace biharm {

/// Options for the self-verification suites behind `biharm verify`.
struct VerifyOptions {
    std::uint64_t seed = 0;
    /// Empty means "all suites".  Valid names: partials, gradient,
    /// hessian, oracle, closed_form, energy, sampson.
    std::vector<std::string> suites;
    /// Deliberate fault injection for mutation testing; "partials"
    /// corrupts the analytic first partials fed to the FD comparison.
    std::string inject_fault;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst measured value vs bound
};

std::vector<std::string> all_suite_names();

/// Runs the selected oracle suites.  Throws ConfigError for unknown
/// suite or fault names.
std::vector<SuiteResult> run_verification(const VerifyOptions& opt);

} // namespace biharm
