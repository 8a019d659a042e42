#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "condense/config.hpp"

namespace condense {

// Exit statuses: 0 success, 1 failed certificate / violations / underflow,
// 2 configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

// Writes <out>/trace.json, <out>/certificate.json, <out>/growth.csv.
int cmd_run(const RunConfig& config, std::ostream& log, std::ostream& err);

// Writes <out>/hypotheses.json and <out>/hypotheses.csv.
int cmd_check(const RunConfig& config, std::ostream& log, std::ostream& err);

// Writes <out>/lebesgue.csv.
int cmd_lebesgue(std::int64_t n_max, std::int64_t quadrature_order, const std::string& out,
                 std::ostream& log, std::ostream& err);

// Writes <out>/schedule.csv.
int cmd_schedule(double p, double L, double C, double cap, int K, const std::string& out,
                 std::ostream& log, std::ostream& err);

}  // namespace condense
