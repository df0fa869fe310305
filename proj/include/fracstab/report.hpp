#pragma once

#include <ostream>
#include <string>

#include "fracstab/problem.hpp"

namespace fracstab {

inline constexpr const char* kToolName = "fracstab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Structured (JSON) stability report, byte-identical for identical inputs.
std::string render_check_json(const CheckOutcome& outcome);
/// Human summary shaped like one row of a results table.
std::string render_check_text(const CheckOutcome& outcome);

std::string render_zeros_json(const CheckOutcome& outcome);
/// One zero per line, "re +im i" with four decimals.
std::string render_zeros_text(const CheckOutcome& outcome);

std::string render_oracle_json(const OracleOutcome& outcome, double tolerance);
std::string render_oracle_text(const OracleOutcome& outcome, double tolerance);

/// CSV with header t,x1,...,xd; values in shortest round-trip form.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace fracstab
