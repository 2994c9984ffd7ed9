#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mrext/verify.hpp"

namespace mrext {

struct CommandOptions {
  std::string object;          // tensor: curvature|ricci|scalar|weyl|projective|connection|metric-connection
  std::string frame = "adapted";
  std::string format = "text";  // text|json
  std::vector<double> x0, v0, p0, q0;
  double step = 1e-3;
  int steps = 1000;
  std::string out_path;
  unsigned long seed = 0;
};

// Dispatches one CLI command against a spec file. Returns the process exit code:
// 0 iff every executed check passed (not-applicable does not fail a run).
int run_command(const std::string& command, const std::string& spec_path,
                const CommandOptions& opts, std::ostream& out, std::ostream& err);

// Report (de)serialization; re-reading an emitted report reproduces all verdicts
// and witnesses.
std::string report_to_json(const std::vector<CheckReport>& reports);
std::vector<CheckReport> report_from_json(const std::string& text);

}  // namespace mrext
