#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgl2/model.hpp"

namespace pgl2 {

/// Parameters of one verification run.  Empty grids select the claim's
/// documented defaults; n_rel / m_int of 0 select the level defaults.
struct VerifyConfig {
  std::vector<int> ps;
  std::vector<int> ks;
  std::vector<int> ns;
  int n_rel = 0;
  int m_int = 0;
  int n_rel_bump = 0;  // added on top of the resolved n_rel (stability sweeps)
  int m_int_bump = 0;
  int trials = 0;  // 0 = claim default
  std::uint64_t seed = 1;
  int chi_sigma = +1;
  int scan_depth = 0;  // 0 = claim default
};

struct ClaimReport {
  std::string claim;
  std::string params_json;  // rendered {...} object, stable field order
  std::string status;       // pass | fail | pass-with-deviation
  std::vector<std::string> witnesses;
  std::string notes;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

/// Identifiers of every verification suite, in canonical order.
const std::vector<std::string>& claim_ids();

/// Runs one claim suite.  Deterministic given (claim, config): the
/// status and witness list depend only on exact comparisons.
ClaimReport run_claim_suite(const std::string& claim, const VerifyConfig& config);

/// Reruns a suite at (n_rel + 2, m_int + 2) and under chi(sigma) = -1,
/// asserting identical verdicts and witness values.
ClaimReport stability_sweep(const std::string& claim, const VerifyConfig& config);

std::vector<ClaimReport> run_all(const VerifyConfig& config);

enum class ReportFormat { Json, Table };
std::string emit_report(const std::vector<ClaimReport>& reports, ReportFormat format);

bool all_passed(const std::vector<ClaimReport>& reports);

}  // namespace pgl2
