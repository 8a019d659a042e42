#include "condense/glide.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "condense/renorm.hpp"
#include "condense/sampling.hpp"

namespace condense {

int psi(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("psi: k must be >= 1");
  // Smallest t with t(t + 1)/2 >= k; start from the real root and correct.
  auto t = static_cast<std::int64_t>(std::floor((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0));
  while (t * (t + 1) / 2 < k) ++t;
  while (t > 1 && (t - 1) * t / 2 >= k) --t;
  return static_cast<int>(k - t * (t - 1) / 2);
}

std::vector<std::int64_t> psi_hits(int m, int count) {
  if (m < 1) throw std::invalid_argument("psi_hits: m must be >= 1");
  std::vector<std::int64_t> hits;
  for (std::int64_t t = m; static_cast<int>(hits.size()) < count; ++t) hits.push_back(t * (t - 1) / 2 + m);
  return hits;
}

ScheduleUnderflow::ScheduleUnderflow(int offending_n, int max_safe_K)
    : std::runtime_error("schedule underflow at n = " + std::to_string(offending_n) +
                         "; maximal safe K = " + std::to_string(max_safe_K)),
      offending_n_(offending_n),
      max_safe_K_(max_safe_K) {}

std::vector<double> beta_lemma(std::span<const double> alpha, double cap, int K) {
  if (K < 0) throw std::invalid_argument("beta_lemma: K must be >= 0");
  if (!(cap > 0.0) || !std::isfinite(cap)) throw std::invalid_argument("beta_lemma: cap must be > 0");
  if (static_cast<int>(alpha.size()) < K) throw std::invalid_argument("beta_lemma: alpha shorter than K");
  for (int n = 0; n < K; ++n)
    if (!(alpha[static_cast<std::size_t>(n)] > 0.0) || !std::isfinite(alpha[static_cast<std::size_t>(n)]))
      throw std::invalid_argument("beta_lemma: alpha_" + std::to_string(n + 1) + " must be > 0");

  std::vector<double> beta;
  beta.reserve(static_cast<std::size_t>(K));
  // slack[m] = alpha_m beta_m / 2 - (beta_{m+1} + ... + beta_{n-1}), kept
  // current as n advances.
  std::vector<double> slack;
  for (int n = 1; n <= K; ++n) {
    double b = cap;
    for (double s : slack) b = std::min(b, s / 2.0);
    if (!(b >= DBL_MIN)) throw ScheduleUnderflow(n, n - 1);
    for (double& s : slack) s -= b;
    beta.push_back(b);
    slack.push_back(alpha[static_cast<std::size_t>(n - 1)] * b / 2.0);
  }
  return beta;
}

bool lemma_inequality_holds(std::span<const double> alpha, std::span<const double> b) {
  if (alpha.size() < b.size()) throw std::invalid_argument("lemma_inequality_holds: alpha too short");
  double tail = 0.0;
  for (std::size_t i = b.size(); i-- > 0;) {
    if (!(tail < alpha[i] * b[i])) return false;
    tail += b[i];
  }
  return true;
}

double working_exponent(const SpaceDescriptor& space) {
  return space.kind() == SpaceKind::finite_ell_p ? space.p() : 1.0;
}

namespace {

BetaSchedule build_schedule_once(double p, const std::function<double(int)>& L,
                                 const std::function<double(int)>& C, double cap, int K) {
  BetaSchedule s;
  s.K = K;
  s.p = p;
  s.cap = cap;
  for (int k = 1; k <= K; ++k) {
    const int m = psi(k);
    const double l = L(m);
    const double c = C(m);
    if (!(l >= 1.0) || !(c >= 1.0)) throw std::invalid_argument("build_schedule: L and C must be >= 1");
    s.m.push_back(m);
    s.L.push_back(l);
    s.C.push_back(c);
    s.alpha.push_back(1.0 / std::pow(8.0 * l * c, p));
  }
  s.beta_tilde = beta_lemma(s.alpha, cap, K);
  for (int k = 0; k < K; ++k) {
    const double bt = s.beta_tilde[static_cast<std::size_t>(k)];
    const double b = std::pow(bt, 1.0 / p);
    if (!(b >= DBL_MIN)) throw ScheduleUnderflow(k + 1, k);
    s.log_beta_tilde.push_back(std::log(bt));
    s.beta.push_back(b);
  }
  s.gamma.assign(static_cast<std::size_t>(K), 0.0);
  double tail = 0.0;  // sum_{i>k} beta_i^p
  for (int k = K - 1; k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    const double g = s.beta[i] / (8.0 * s.L[i] * s.C[i]) - std::pow(tail, 1.0 / p);
    if (!(g >= DBL_MIN)) throw ScheduleUnderflow(k + 1, k);
    s.gamma[i] = g;
    tail += std::pow(s.beta[i], p);
  }
  return s;
}

}  // namespace

BetaSchedule build_schedule(double p, const std::function<double(int)>& L,
                            const std::function<double(int)>& C, double cap, int K) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("build_schedule: p must lie in (0, 1]");
  if (!(cap > 0.0 && cap <= 1.0)) throw std::invalid_argument("build_schedule: cap must lie in (0, 1]");
  try {
    return build_schedule_once(p, L, C, cap, K);
  } catch (const ScheduleUnderflow& first) {
    // beta is prefix-stable, but gamma sees the whole tail: walk down until
    // a shorter horizon builds.
    int safe = first.max_safe_K();
    while (safe > 0) {
      try {
        build_schedule_once(p, L, C, cap, safe);
        break;
      } catch (const ScheduleUnderflow& e) {
        safe = std::min(safe - 1, e.max_safe_K());
      }
    }
    throw ScheduleUnderflow(first.offending_n(), safe);
  }
}

BetaSchedule schedule_for(const OperatorFamily& family, double cap, int K) {
  return build_schedule(working_exponent(family.domain()), family.constants().L,
                        family.constants().C, cap, K);
}

double ball_sup_lower_bound(const OperatorFamily& family, const Index& n, int m, const Point& x,
                            double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("ball radius must lie in (0, 1]");
  const auto& k = family.constants();
  if (n < k.N(m)) throw std::invalid_argument("ball_sup_lower_bound: n below N_m");
  const double op = family.op_norm(n, m).value;
  const double bound = (r * op / k.L(m) - k.c(n, m, x) * op) / 2.0;
  return std::max(0.0, bound);
}

namespace {

std::string describe_horizon(std::int64_t k, int m, double required, const Index& horizon,
                             double largest) {
  std::ostringstream out;
  out.precision(17);
  out << "horizon exhausted at step " << k << " (m = " << m << "): need op_norm >= " << required
      << ", largest op_norm seen " << largest << " at n = " << to_string(horizon);
  return out.str();
}

}  // namespace

HorizonExhausted::HorizonExhausted(std::int64_t k, int m, double required, Index horizon,
                                   double largest_op_norm)
    : std::runtime_error(describe_horizon(k, m, required, horizon, largest_op_norm)),
      required_(required),
      horizon_(std::move(horizon)),
      largest_op_norm_(largest_op_norm) {}

Index select_index(const OperatorFamily& family, int m, std::int64_t k, const Point& x_prev,
                   double beta_k, double gamma_k, const Index& n_prev, const Index& n_max) {
  const auto& consts = family.constants();
  const double required = static_cast<double>(k) / gamma_k;
  const double c_bound = beta_k / (2.0 * consts.L(m));

  Index horizon = n_max;
  if (auto limit = family.index_limit()) horizon = std::min(horizon, *limit);
  const Index lo = std::max<Index>(n_prev + 1, consts.N(m));
  if (lo > horizon) {
    const double largest = horizon >= 1 ? family.op_norm(horizon, m).value : 0.0;
    throw HorizonExhausted(k, m, required, horizon, largest);
  }

  auto qualifies = [&](const Index& n) {
    return family.op_norm(n, m).value >= required && consts.c(n, m, x_prev) <= c_bound;
  };
  if (qualifies(lo)) return lo;

  Index bad = lo;
  Index good;
  Index step = 1;
  for (;;) {
    Index probe = lo + step;
    if (probe > horizon) probe = horizon;
    if (qualifies(probe)) {
      good = probe;
      break;
    }
    if (probe == horizon) throw HorizonExhausted(k, m, required, horizon, family.op_norm(horizon, m).value);
    bad = probe;
    step *= 2;
  }
  while (good - bad > 1) {
    const Index mid = (good + bad) / 2;
    if (qualifies(mid))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

ThresholdUnreachable::ThresholdUnreachable(double achieved, double required)
    : std::runtime_error("hump threshold unreachable: achieved " + std::to_string(achieved) +
                         ", required " + std::to_string(required)),
      achieved_(achieved),
      required_(required) {}

HumpResult hump_step(const OperatorFamily& family, const Index& n, int m, const Point& x_prev,
                     double beta_k, std::uint64_t seed) {
  const SpaceDescriptor& space = family.domain();
  const double required = beta_k * family.op_norm(n, m).value / (8.0 * family.constants().L(m));

  const Point y = family.norming_direction(n, m);
  HumpResult best;
  best.required = required;
  best.achieved = -1.0;
  for (int sigma : {1, -1}) {
    Point increment = y.scaled(sigma * beta_k);
    Point candidate = x_prev + increment;
    const double value = family.image_norm(n, m, candidate);
    if (value > best.achieved) {
      best = HumpResult{std::move(candidate), std::move(increment), sigma, value, required};
    }
  }
  if (best.achieved >= required) return best;

  const Point hot[] = {y};
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  for (int retry = 0; retry < 4; ++retry) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(retry)));
    for (int draw = 0; draw < 256; ++draw) {
      Point increment = rescale_to(space, random_point(space, rng, hot), beta_k * (1.0 - radius(rng)));
      if (quasi_norm(space, increment) > beta_k) continue;
      Point candidate = x_prev + increment;
      const double value = family.image_norm(n, m, candidate);
      if (value > best.achieved) best = HumpResult{std::move(candidate), std::move(increment), 0, value, required};
    }
    if (best.achieved >= required) return best;
  }
  throw ThresholdUnreachable(best.achieved, required);
}

bool Certificate::accepted() const {
  if (!complete) return false;
  return std::all_of(steps.begin(), steps.end(), [](const StepFlags& s) { return s.accepted(); });
}

std::optional<std::int64_t> Certificate::first_failure() const {
  for (const StepFlags& s : steps)
    if (!s.accepted()) return s.k;
  return std::nullopt;
}

namespace {

bool at_most(double lhs, double rhs, double tol) { return lhs <= rhs + tol * std::abs(rhs); }
bool at_least(double lhs, double rhs, double tol) { return lhs >= rhs - tol * std::abs(rhs); }
bool agrees(double recorded, double fresh, double tol) {
  return std::abs(recorded - fresh) <= tol * std::max(std::abs(recorded), std::abs(fresh));
}

}  // namespace

Certificate verify_certificate(const OperatorFamily& family, const BetaSchedule& schedule,
                               const WitnessTrace& trace, Exec exec) {
  const SpaceDescriptor& space = family.domain();
  const auto& consts = family.constants();
  const double p = working_exponent(space);
  const double tol = family.tolerance();
  const double tail_tol = std::max(tol, kRelTol);
  const std::size_t count = trace.steps.size();

  Certificate cert;
  cert.complete = static_cast<int>(count) == schedule.K;
  cert.steps.resize(count);

  // Rebuild x_0 .. x_count from the increments.
  std::vector<Point> xs;
  xs.reserve(count + 1);
  xs.push_back(Point::zero(space));
  for (const TraceStep& s : trace.steps) xs.push_back(xs.back() + s.increment);

  // Schedule tails sum_{i>k} beta_i^p over the schedule horizon.
  std::vector<double> tails(static_cast<std::size_t>(schedule.K) + 1, 0.0);
  std::vector<double> tilde_tails(static_cast<std::size_t>(schedule.K) + 1, 0.0);
  for (int k = schedule.K - 1; k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    tails[i] = tails[i + 1] + std::pow(schedule.beta[i], p);
    tilde_tails[i] = tilde_tails[i + 1] + schedule.beta_tilde[i];
  }

  for_each_index(count, exec, [&](std::size_t i) {
    const TraceStep& s = trace.steps[i];
    StepFlags f;
    f.k = s.k;
    const Point& x_prev = xs[i];
    const Point& x_k = xs[i + 1];

    const bool in_horizon = s.k == static_cast<std::int64_t>(i + 1) && i < static_cast<std::size_t>(schedule.K);
    if (!in_horizon) {
      cert.steps[i] = f;
      return;
    }

    const double alpha = schedule.alpha[i];
    const double bt = schedule.beta_tilde[i];
    const bool lemma_strict = alpha * bt - tilde_tails[i + 1] >= kRelTol * alpha * bt;
    f.schedule = s.m == psi(s.k) && s.m == schedule.m[i] && s.beta == schedule.beta[i] &&
                 s.gamma == schedule.gamma[i] && schedule.gamma[i] > 0.0 && lemma_strict;

    const double L = consts.L(s.m);
    const Index n_prev = i == 0 ? Index(0) : trace.steps[i - 1].n;
    f.selection = s.n > n_prev && s.n >= consts.N(s.m) &&
                  at_most(consts.c(s.n, s.m, x_prev), s.beta / (2.0 * L), tol);

    f.step_distance = at_most(quasi_norm(space, x_k - x_prev), s.beta, tol);

    const double op = family.op_norm(s.n, s.m).value;
    const double image = family.image_norm(s.n, s.m, x_k);
    f.image_threshold = at_least(image, s.beta * op / (8.0 * L), tol) && agrees(s.image_norm, image, tol);
    f.op_norm_threshold = at_least(op, static_cast<double>(s.k) / s.gamma, tol) && agrees(s.op_norm, op, tol);

    const double gap = quasi_norm(space, trace.final_point - x_k);
    f.tail = at_most(std::pow(gap, p), tails[i + 1], tail_tol) && gap <= 1.0;

    f.final_value = family.image_norm(s.n, s.m, trace.final_point) + consts.f(s.n, s.m, trace.final_point);
    f.final_margin = f.final_value - static_cast<double>(s.k);
    f.final_bound = at_least(f.final_value, static_cast<double>(s.k), tol);
    cert.steps[i] = f;
  });
  return cert;
}

RunOutcome run_condensation(const OperatorFamily& family, int K, double cap, const Index& n_max,
                            std::uint64_t seed) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  RunOutcome out;
  out.schedule = schedule_for(family, cap, K);

  int rows_needed = 0;
  for (int k = 1; k <= K; ++k) rows_needed = std::max(rows_needed, psi(k));
  if (auto rows = family.row_count(); rows && rows_needed > *rows)
    throw std::invalid_argument("K = " + std::to_string(K) + " visits row " +
                                std::to_string(rows_needed) + " but the family has " +
                                std::to_string(*rows) + " rows");
  const SpaceDescriptor& space = family.domain();
  if (space.kind() == SpaceKind::finite_ell_p && K > 0) {
    const Index bound = family.touched_coordinate_bound(n_max, rows_needed);
    if (bound > space.dimension())
      throw std::invalid_argument("truncation dimension " + to_string(space.dimension()) +
                                  " below planned coordinate bound " + to_string(bound));
  }

  out.trace.family_id = family.id();
  out.trace.params = RunParams{K, cap, n_max, seed};
  Point x = Point::zero(space);
  Index n_prev = 0;
  for (int k = 1; k <= K; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const int m = out.schedule.m[i];
    const double beta = out.schedule.beta[i];
    const double gamma = out.schedule.gamma[i];
    try {
      const Index n = select_index(family, m, k, x, beta, gamma, n_prev, n_max);
      HumpResult hump = hump_step(family, n, m, x, beta, mix_seed(seed, static_cast<std::uint64_t>(k)));
      TraceStep step;
      step.k = k;
      step.m = m;
      step.n = n;
      step.beta = beta;
      step.gamma = gamma;
      step.op_norm = family.op_norm(n, m).value;
      step.image_norm = hump.achieved;
      step.increment = std::move(hump.increment);
      step.sigma = hump.sigma;
      out.trace.steps.push_back(std::move(step));
      x = std::move(hump.point);
      n_prev = n;
    } catch (const std::exception& e) {
      out.failure = StepFailure{k, e.what()};
      break;
    }
  }
  out.trace.final_point = x;
  out.certificate = verify_certificate(family, out.schedule, out.trace);
  return out;
}

}  // namespace condense
