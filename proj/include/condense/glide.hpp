#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "condense/families.hpp"
#include "condense/parallel.hpp"

namespace condense {

// Diagonal enumeration 1, 1, 2, 1, 2, 3, 1, 2, 3, 4, ...: with t the smallest
// integer such that t(t + 1)/2 >= k, psi(k) = k - t(t - 1)/2.
int psi(std::int64_t k);

// The first `count` indices k with psi(k) = m, ascending.
std::vector<std::int64_t> psi_hits(int m, int count);

class ScheduleUnderflow : public std::runtime_error {
 public:
  ScheduleUnderflow(int offending_n, int max_safe_K);
  int offending_n() const { return offending_n_; }
  int max_safe_K() const { return max_safe_K_; }

 private:
  int offending_n_;
  int max_safe_K_;
};

// Positive b_1..b_K with b_n <= cap and, for every m < K,
//   b_{m+1} + ... + b_K < alpha_m b_m / 2.
// b_1 = cap; b_n = min(cap, min_{m<n} slack_m(n) / 2) with
// slack_m(n) = alpha_m b_m / 2 - (b_{m+1} + ... + b_{n-1}).
// Throws std::invalid_argument for nonpositive alpha, ScheduleUnderflow when
// a value leaves the normal double range.
std::vector<double> beta_lemma(std::span<const double> alpha, double cap, int K);

// sum_{i>m} b_i < alpha_m b_m for every m < b.size().
bool lemma_inequality_holds(std::span<const double> alpha, std::span<const double> b);

struct BetaSchedule {
  int K = 0;
  double p = 1.0;
  double cap = 0.5;
  std::vector<int> m;                 // psi(k)
  std::vector<double> L, C;           // L_{psi(k)}, C_{psi(k)}
  std::vector<double> alpha;          // 1 / (8 L C)^p
  std::vector<double> beta_tilde;
  std::vector<double> log_beta_tilde;
  std::vector<double> beta;           // beta_tilde^(1/p)
  std::vector<double> gamma;          // beta / (8 L C) - (sum_{i>k} beta_i^p)^(1/p)
};

// Finite-horizon schedule. Tails run to K, so every gamma dominates its
// infinite-horizon counterpart.
BetaSchedule build_schedule(double p, const std::function<double(int)>& L,
                            const std::function<double(int)>& C, double cap, int K);

// p of the p-norm a run works with: the space's own exponent (ell^p) or 1.
double working_exponent(const SpaceDescriptor& space);

BetaSchedule schedule_for(const OperatorFamily& family, double cap, int K);

// (r ||T|| / L_m - c_nm(x) ||T||) / 2, clamped at zero: a lower bound for
// sup_{y in B_r(x)} ||T_nm y|| whenever condition (iii) holds.
double ball_sup_lower_bound(const OperatorFamily& family, const Index& n, int m, const Point& x,
                            double r);

class HorizonExhausted : public std::runtime_error {
 public:
  HorizonExhausted(std::int64_t k, int m, double required, Index horizon, double largest_op_norm);
  double required() const { return required_; }
  const Index& horizon() const { return horizon_; }
  double largest_op_norm() const { return largest_op_norm_; }

 private:
  double required_;
  Index horizon_;
  double largest_op_norm_;
};

// Smallest n with n > n_prev, n >= N_m, c_nm(x_prev) <= beta_k / (2 L_m) and
// ||T_nm|| >= k / gamma_k, searched up to min(n_max, family index limit).
// The qualifying set is assumed upward closed in n (op norms nondecreasing,
// c decreasing), which holds for every shipped family; the search gallops
// and then bisects.
Index select_index(const OperatorFamily& family, int m, std::int64_t k, const Point& x_prev,
                   double beta_k, double gamma_k, const Index& n_prev, const Index& n_max);

class ThresholdUnreachable : public std::runtime_error {
 public:
  ThresholdUnreachable(double achieved, double required);
  double achieved() const { return achieved_; }
  double required() const { return required_; }

 private:
  double achieved_;
  double required_;
};

struct HumpResult {
  Point point;      // x_k
  Point increment;  // x_k - x_prev
  int sigma = 1;    // sign used on the norming direction; 0 for a sampled hump
  double achieved = 0.0;
  double required = 0.0;
};

// Moves from x_prev by at most beta_k so that ||T_nm x_k|| >= beta_k ||T_nm|| / (8 L_m).
// Tries x_prev +- beta_k y along the norming direction first; if neither
// clears the threshold, samples the ball (4 retries of 256 draws, seeded).
HumpResult hump_step(const OperatorFamily& family, const Index& n, int m, const Point& x_prev,
                     double beta_k, std::uint64_t seed);

struct RunParams {
  int K = 0;
  double cap = 0.5;
  Index n_max = 0;
  std::uint64_t seed = 0;
};

struct TraceStep {
  std::int64_t k = 0;
  int m = 0;
  Index n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double op_norm = 0.0;
  double image_norm = 0.0;  // ||T_nm x_k||
  Point increment;          // x_k - x_{k-1}
  int sigma = 0;
};

struct WitnessTrace {
  std::string family_id;
  RunParams params;
  std::vector<TraceStep> steps;
  Point final_point;  // x_K
  std::map<std::string, std::string> config;
};

struct StepFlags {
  std::int64_t k = 0;
  bool schedule = false;           // beta, gamma, psi agree with the schedule
  bool selection = false;          // n_k > n_{k-1}, n_k >= N, c bound
  bool step_distance = false;      // ||x_k - x_{k-1}|| <= beta_k
  bool image_threshold = false;    // ||T x_k|| >= beta_k ||T|| / (8 L)
  bool op_norm_threshold = false;  // ||T|| >= k / gamma_k
  bool tail = false;               // ||x_K - x_k||^p <= sum_{i>k} beta_i^p, and <= 1
  bool final_bound = false;        // ||T x_K|| + f(x_K) >= k
  double final_value = 0.0;
  double final_margin = 0.0;

  bool accepted() const {
    return schedule && selection && step_distance && image_threshold && op_norm_threshold &&
           tail && final_bound;
  }
  bool operator==(const StepFlags&) const = default;
};

struct Certificate {
  bool complete = true;  // trace reaches the schedule horizon
  std::vector<StepFlags> steps;

  bool accepted() const;
  // 1-based step of the first rejected flag set, if any.
  std::optional<std::int64_t> first_failure() const;
  bool operator==(const Certificate&) const = default;
};

// Re-derives every inequality from fresh family calls. x_k is rebuilt from
// the recorded increments; x_K is the recorded final point, so any edit to
// an increment also breaks the tail at that step.
Certificate verify_certificate(const OperatorFamily& family, const BetaSchedule& schedule,
                               const WitnessTrace& trace, Exec exec = Exec::parallel);

struct StepFailure {
  std::int64_t k = 0;
  std::string reason;
};

struct RunOutcome {
  BetaSchedule schedule;
  WitnessTrace trace;
  Certificate certificate;
  std::optional<StepFailure> failure;

  bool accepted() const { return !failure && certificate.accepted(); }
};

// x_0 = 0; for k = 1..K: m = psi(k), n_k = select_index, x_k = hump_step.
// A failing step stops the loop and the partial trace is returned with the
// failure. Schedule underflow and inconsistent configuration throw.
RunOutcome run_condensation(const OperatorFamily& family, int K, double cap, const Index& n_max,
                            std::uint64_t seed);

}  // namespace condense
