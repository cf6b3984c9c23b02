#pragma once

#include <array>
#include <chrono>
#include <span>
#include <string>
#include <vector>

#include "symspread/spread.hpp"

namespace symspread {

struct Caps {
  u64 max_group_order = kDefaultGroupOrderCap;
  u64 max_subgroup_search = kDefaultSubgroupSearchCap;
  u64 field_size_cap = Tower::kDefaultFieldCap;
};

enum class CheckStatus { pass, fail, skipped };

/// Structured outcome of one named check at one parameter triple. A fail
/// always carries at least one witness line; a skip always carries a reason.
struct VerifyReport {
  std::string check_id;
  int p = 0, a = 0, m = 0;
  CheckStatus status = CheckStatus::skipped;
  std::string skip_reason;
  std::vector<std::string> witnesses;
  std::chrono::milliseconds elapsed{0};
};

/// Registered check ids, in fixed execution order.
const std::vector<std::string>& check_registry();

/// Runs one named check. Throws std::invalid_argument on an unknown id;
/// cap overruns inside a check degrade to skipped status instead.
VerifyReport run_check(const std::string& id, const Tower& t, const Caps& caps = {});

/// Runs the full registry against every parameter triple, in registry order
/// per triple. Construction failures propagate.
std::vector<VerifyReport> run_all(std::span<const std::array<int, 3>> ctxs,
                                  const Caps& caps = {});

bool any_fail(std::span<const VerifyReport> reports);

/// "pass", "fail", or "skipped: <reason>".
std::string status_to_string(const VerifyReport& r);

/// Schema version "1": {"version","params","checks"}; each check carries
/// {id,p,a,m,status,witnesses,elapsed_ms}. elapsed_ms is emitted as 0 unless
/// include_timings is set, so identical runs serialize byte-identically.
std::string reports_to_json(std::span<const VerifyReport> reports,
                            std::span<const std::array<int, 3>> params,
                            bool include_timings = false);

/// The default desk-scale parameter matrix.
std::vector<std::array<int, 3>> default_ctx_matrix();

}  // namespace symspread
