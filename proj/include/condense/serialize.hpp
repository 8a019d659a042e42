#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "condense/glide.hpp"
#include "condense/hypotheses.hpp"

namespace condense {

using Json = nlohmann::ordered_json;

inline constexpr int kTraceVersion = 1;
inline constexpr int kCertificateVersion = 1;

// Shortest round-trip decimal form ("%.17g").
std::string format_double(double x);

Json to_json(const Point& x);
Point point_from_json(const Json& j);

Json to_json(const WitnessTrace& trace);
WitnessTrace trace_from_json(const Json& j);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const HypothesisReport& report);

struct GrowthRow {
  std::int64_t k = 0;
  int m = 0;
  Index n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double op_norm = 0.0;
  double image_at_xk = 0.0;
  double image_at_xK = 0.0;
  std::int64_t target = 0;
  bool pass = false;
};

inline constexpr std::string_view kGrowthHeader =
    "k,m,n_k,beta_k,gamma_k,op_norm,image_norm_at_xk,image_norm_at_xK,final_bound_target_k,pass";

std::vector<GrowthRow> growth_rows(const OperatorFamily& family, const WitnessTrace& trace,
                                   const Certificate& cert);
std::string growth_csv(const std::vector<GrowthRow>& rows);
// Throws std::invalid_argument on a malformed table.
std::vector<GrowthRow> parse_growth_csv(std::string_view text);

std::string schedule_csv(const BetaSchedule& schedule);
std::string lebesgue_csv(const std::vector<double>& table);
std::string hypothesis_summary_csv(const HypothesisReport& report);

}  // namespace condense
