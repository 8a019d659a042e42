#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "condense/families.hpp"
#include "condense/parallel.hpp"

namespace condense {

struct SampleConfig {
  std::size_t samples = 10000;
  Index n_hi = 64;  // n drawn from [max N_m, n_hi]
  int m_hi = 4;     // m drawn from [1, m_hi], capped by the family's rows
  std::uint64_t seed = 1;
};

// Enough to replay a sample: (seed, sample) regenerates (n, m, x, y).
struct Violation {
  std::string condition;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  Index n = 0;
  int m = 0;
  Point x;
  Point y;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConditionReport {
  std::string condition;
  std::size_t tested = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // the first few, in sample order
  double worst_margin = 0.0;          // min over samples of (rhs - lhs) / scale
};

struct TrendPoint {
  Index n = 0;
  double f = 0.0;
  double c = 0.0;
  double op_norm = 0.0;
};

struct TrendCurve {
  std::size_t x_sample = 0;
  int m = 0;
  std::vector<TrendPoint> checkpoints;  // n_max/4, n_max/2, n_max
  double max_f = 0.0;                   // max over 1 <= n <= n_max
  bool f_bounded = false;
  bool c_decays = false;
  bool op_norm_grows = false;
};

struct TrendReport {
  std::size_t x_samples = 0;
  Index n_max = 0;
  double blowup_floor = 0.0;
  std::vector<TrendCurve> curves;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // "x=<i> m=<m>: <which witness>"
};

struct HypothesisReport {
  std::string family_id;
  std::uint64_t seed = 0;
  ConditionReport condition_i;
  ConditionReport condition_iii;
  TrendReport trends;

  std::size_t violation_count() const {
    return condition_i.violation_count + condition_iii.violation_count + trends.violation_count;
  }
};

// ||T(x + y)|| <= C_m (||Tx|| + ||T|| ||y|| + f_nm(x)) for sampled x, ||y|| <= 1,
// n >= N_m.
ConditionReport check_condition_i(const OperatorFamily& family, const SampleConfig& config,
                                  Exec exec = Exec::parallel);

// ||Ty|| <= L_m (||T(x + y)|| + ||Tx|| + c_nm(x) ||T||) for sampled x, ||y|| <= 1.
ConditionReport check_condition_iii(const OperatorFamily& family, const SampleConfig& config,
                                    Exec exec = Exec::parallel);

// Finite surrogates for (ii), (iv) and (+): f stays within its early
// envelope, c decreases strictly across n_max/4, n_max/2, n_max (or is
// already zero), and ||T_nm|| increases strictly across the same checkpoints
// and ends above blowup_floor.
TrendReport check_trends(const OperatorFamily& family, std::size_t x_samples, const Index& n_max,
                         int m_hi, std::uint64_t seed, double blowup_floor = 2.0,
                         Exec exec = Exec::parallel);

struct DrawnSample {
  Index n;
  int m;
  Point x;
  Point y;
};

// The exact (n, m, x, y) that sample `index` of `condition` ("i" or "iii")
// tests under `config`.
DrawnSample draw_sample(const OperatorFamily& family, const SampleConfig& config,
                        const std::string& condition, std::size_t index);

HypothesisReport check_hypotheses(const OperatorFamily& family, const SampleConfig& config,
                                  std::size_t x_samples, const Index& trend_n_max,
                                  double blowup_floor, Exec exec = Exec::parallel);

}  // namespace condense
