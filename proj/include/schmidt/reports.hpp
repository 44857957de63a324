#pragma once

#include <string>

#include "schmidt/pipeline.hpp"
#include "schmidt/symbols.hpp"

namespace schmidt {

/// Report-level configuration echoed into every emitted JSON document.
struct ReportConfig {
  std::string spec_path;
  std::string command;
  RunOptions options;
};

/// schmidt.json: one entry per retained cluster plus the kernel-side count.
std::string schmidt_json(const VerificationRun& run, const ReportConfig& cfg);

/// singular_values.csv: "s,multiplicity" rows, s descending.
std::string singular_values_csv(const VerificationRun& run);

/// verify.json: identities plus per-cluster structure and action reports.
/// Deterministic: clusters sorted by s descending, checks by name.
std::string verify_json(const VerificationRun& run, const ReportConfig& cfg,
                        bool dump_theta = false);

}  // namespace schmidt
