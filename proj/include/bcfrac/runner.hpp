#pragma once

#include "bcfrac/config.hpp"

#include <string>
#include <vector>

namespace bcfrac {

struct IdentityOutcome {
    std::string identity;
    double tolerance = 0.0;
    ConvergenceResult study;
    bool pass = false;  // finest-level residual within tolerance
};

struct SuiteSummary {
    std::string name;
    std::vector<IdentityOutcome> outcomes;  // in config order

    [[nodiscard]] bool pass() const;
};

// Residual of one identity at resolution r.
ResidualReport run_identity(const Experiment& e, const std::string& identity, const Resolution& r);

// levels <= 0 takes the config value; identities run on up to `jobs` threads.
SuiteSummary run_suite(const ExperimentConfig& config, int levels = 0, unsigned jobs = 1);

struct ReportOptions {
    bool timing = true;  // false writes 0 in the seconds column
};

// One CSV per identity: identity,m,k,n,res_l1,res_l2,order,seconds
std::string report_csv(const IdentityOutcome& o, const ReportOptions& opt = {});
std::string summary_json(const SuiteSummary& s);

// Writes <dir>/<identity>.csv and <dir>/summary.json, creating dir. Throws IOError.
std::vector<std::string> emit_report(const SuiteSummary& s, const std::string& dir, const ReportOptions& opt = {});

} // namespace bcfrac
