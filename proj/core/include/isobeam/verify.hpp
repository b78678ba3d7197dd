#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isobeam/families.hpp"

namespace isobeam {

struct SuiteResult {
    std::string name;
    std::map<std::string, double> residuals;  // per-check max residual
    double tolerance = 1e-9;
    bool pass = false;
};

/// Named verification suites orchestrating the identity checks.  A Lie or
/// Chazy family spec narrows the principal suite to that family; the other
/// suites ignore it.
struct VerifyOptions {
    double lo = 0.0;
    double hi = 1.0;
    int samples = 41;
    double tol_identity = 1e-9;
    std::optional<LieFamilySpec> lie;
    std::optional<ChazyFamilySpec> chazy;
    std::string symmetry_case = "both";  // "I", "II", or "both"
};

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

std::vector<std::string> suite_names();

} // namespace isobeam
