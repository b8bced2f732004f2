#pragma once

#include "lfc/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lfc {

struct CheckOptions {
  bool force = false;           // lift the oracle size guards
  std::uint64_t seed = 1;       // for sampled checks
  OracleLimits limits;
};

struct CheckResult {
  std::string name;
  bool ok = false;
  json witness = json::object();
  double seconds = 0;
};

/// cocycle, order, h2, compositum, restriction, residuals, truncation, serial, symmetry, unramified-exact
const std::vector<std::string> &check_names();
/// Empty if the check applies to r, otherwise the reason it is skipped.
std::string check_skip_reason(const std::string &name, const LfcResult &r);
/// Comma separated names, or "all".
std::vector<std::string> parse_checks(const std::string &csv);

/// Runs one named check on u_{L/Q_p} (already computed as r, at level r.cocycle.k).
/// OracleTooLarge propagates unless opt.force.
CheckResult run_check(const std::string &name, const GaloisGroup &G, const LfcResult &r, const CheckOptions &opt);

json to_json(const CheckResult &c);

/// The direct linear-algebra path for S3-sized comparisons: H^2(G, L^x/U^(k))
/// plus identification of the fundamental class by inflation to Gal(F/Q_p).
struct OraclePathResult {
  std::vector<std::int64_t> invariants;
  std::int64_t class_order = 0;
  bool identified = false;
  double seconds = 0;
};
OraclePathResult oracle_class_path(const GaloisGroup &G, const LfcResult &r, OracleLimits lim);

} // namespace lfc
