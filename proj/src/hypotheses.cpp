#include "condense/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "condense/renorm.hpp"
#include "condense/sampling.hpp"

namespace condense {

namespace {

constexpr std::size_t kKeptViolations = 8;
constexpr std::uint64_t kSaltI = 0x1111;
constexpr std::uint64_t kSaltIII = 0x3333;
constexpr std::uint64_t kSaltTrend = 0x7777;

int row_limit(const OperatorFamily& family, int m_hi) {
  int rows = std::max(1, m_hi);
  if (auto r = family.row_count()) rows = std::min(rows, *r);
  return rows;
}

Index index_ceiling(const OperatorFamily& family, const Index& n_hi) {
  Index hi = n_hi;
  if (auto limit = family.index_limit()) hi = std::min(hi, *limit);
  return hi;
}

Index uniform_index(Rng& rng, const Index& lo, const Index& hi) {
  if (hi < lo) throw std::invalid_argument("empty index range for sampling");
  if (hi > Index(std::numeric_limits<std::int64_t>::max() / 2))
    throw std::invalid_argument("sampling range for n too large");
  std::uniform_int_distribution<std::int64_t> d(lo.convert_to<std::int64_t>(), hi.convert_to<std::int64_t>());
  return Index(d(rng));
}

struct Outcome {
  double lhs = 0.0;
  double rhs = 0.0;
};

ConditionReport aggregate(const OperatorFamily& family, const SampleConfig& config,
                          const std::string& condition, const std::vector<Outcome>& outcomes) {
  const double tol = std::max(family.tolerance(), kRelTol);
  ConditionReport report;
  report.condition = condition;
  report.tested = outcomes.size();
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto [lhs, rhs] = outcomes[i];
    const double scale = std::max({std::abs(lhs), std::abs(rhs), kAbsFloor});
    report.worst_margin = std::min(report.worst_margin, (rhs - lhs) / scale);
    if (lhs > rhs + tol * scale + kAbsFloor) {
      ++report.violation_count;
      if (report.violations.size() < kKeptViolations) {
        DrawnSample s = draw_sample(family, config, condition, i);
        report.violations.push_back(
            Violation{condition, config.seed, i, s.n, s.m, std::move(s.x), std::move(s.y), lhs, rhs});
      }
    }
  }
  if (outcomes.empty()) report.worst_margin = 0.0;
  return report;
}

}  // namespace

DrawnSample draw_sample(const OperatorFamily& family, const SampleConfig& config,
                        const std::string& condition, std::size_t index) {
  const bool first = condition == "i";
  if (!first && condition != "iii") throw std::invalid_argument("unknown condition '" + condition + "'");
  const auto& consts = family.constants();
  const SpaceDescriptor& space = family.domain();
  Rng rng(mix_seed(config.seed ^ (first ? kSaltI : kSaltIII), index));

  const int rows = row_limit(family, config.m_hi);
  Index lo = 1;
  if (first)
    for (int m = 1; m <= rows; ++m) lo = std::max(lo, consts.N(m));
  const Index n = uniform_index(rng, lo, index_ceiling(family, config.n_hi));
  const int m = std::uniform_int_distribution<int>(1, rows)(rng);
  const Point hot[] = {family.norming_direction(n, m)};
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DrawnSample s{n, m, Point::zero(space), Point::zero(space)};
  if (first) {
    s.x = random_point(space, rng, hot);
    s.y = rescale_to(space, random_point(space, rng, hot), 1.0 - unit(rng));
  } else {
    s.y = rescale_to(space, random_point(space, rng, hot), 1.0 - unit(rng));
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: s.x = random_point(space, rng, hot); break;
      case 1: s.x = -random_part(s.y, rng); break;
      default: s.x = -random_part(s.y, rng) + random_point(space, rng, hot).scaled(1e-3); break;
    }
  }
  return s;
}

ConditionReport check_condition_i(const OperatorFamily& family, const SampleConfig& config, Exec exec) {
  const auto& consts = family.constants();
  std::vector<Outcome> outcomes(config.samples);
  for_each_index(config.samples, exec, [&](std::size_t i) {
    const DrawnSample s = draw_sample(family, config, "i", i);
    const double op = family.op_norm(s.n, s.m).value;
    const double y_norm = quasi_norm(family.domain(), s.y);
    outcomes[i].lhs = family.image_norm(s.n, s.m, s.x + s.y);
    outcomes[i].rhs = consts.C(s.m) * (family.image_norm(s.n, s.m, s.x) + op * y_norm + consts.f(s.n, s.m, s.x));
  });
  return aggregate(family, config, "i", outcomes);
}

ConditionReport check_condition_iii(const OperatorFamily& family, const SampleConfig& config, Exec exec) {
  const auto& consts = family.constants();
  std::vector<Outcome> outcomes(config.samples);
  for_each_index(config.samples, exec, [&](std::size_t i) {
    const DrawnSample s = draw_sample(family, config, "iii", i);
    const double op = family.op_norm(s.n, s.m).value;
    outcomes[i].lhs = family.image_norm(s.n, s.m, s.y);
    outcomes[i].rhs = consts.L(s.m) * (family.image_norm(s.n, s.m, s.x + s.y) + family.image_norm(s.n, s.m, s.x) +
                                       consts.c(s.n, s.m, s.x) * op);
  });
  return aggregate(family, config, "iii", outcomes);
}

TrendReport check_trends(const OperatorFamily& family, std::size_t x_samples, const Index& n_max,
                         int m_hi, std::uint64_t seed, double blowup_floor, Exec exec) {
  if (n_max < 16) throw std::invalid_argument("check_trends: n_max must be >= 16");
  const Index top = index_ceiling(family, n_max);
  if (top < 16) throw std::invalid_argument("check_trends: family cannot evaluate n = 16");
  const auto& consts = family.constants();
  const SpaceDescriptor& space = family.domain();
  const int rows = row_limit(family, m_hi);
  const double tol = std::max(family.tolerance(), kRelTol);
  const Index checkpoints[] = {top / 4, top / 2, top};

  // Every n up to 1024, then a geometric grid, always including the checkpoints.
  std::vector<Index> grid;
  for (Index n = 1; n <= top && n <= 1024; ++n) grid.push_back(n);
  for (Index n = 1025; n <= top; n = n + n / 4) grid.push_back(n);
  for (const Index& c : checkpoints) grid.push_back(c);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  TrendReport report;
  report.x_samples = x_samples;
  report.n_max = top;
  report.blowup_floor = blowup_floor;
  report.curves.resize(x_samples * static_cast<std::size_t>(rows));

  for_each_index(report.curves.size(), exec, [&](std::size_t slot) {
    const std::size_t xi = slot / static_cast<std::size_t>(rows);
    const int m = static_cast<int>(slot % static_cast<std::size_t>(rows)) + 1;
    Rng rng(mix_seed(seed ^ kSaltTrend, xi));
    const Point hot[] = {family.norming_direction(1, 1)};
    const Point x = random_point(space, rng, hot);

    TrendCurve curve;
    curve.x_sample = xi;
    curve.m = m;
    double early_f = 0.0;
    for (const Index& n : grid) {
      const double f = consts.f(n, m, x);
      curve.max_f = std::max(curve.max_f, f);
      if (n <= checkpoints[0]) early_f = std::max(early_f, f);
    }
    for (const Index& n : checkpoints)
      curve.checkpoints.push_back(TrendPoint{n, consts.f(n, m, x), consts.c(n, m, x), family.op_norm(n, m).value});
    const auto& cp = curve.checkpoints;
    curve.f_bounded = cp[2].f <= early_f * (1.0 + tol) + kAbsFloor;
    const bool nonincreasing = cp[0].c >= cp[1].c && cp[1].c >= cp[2].c;
    curve.c_decays = (cp[0].c > cp[1].c && cp[1].c > cp[2].c) || (nonincreasing && cp[2].c == 0.0);
    curve.op_norm_grows = cp[0].op_norm < cp[1].op_norm && cp[1].op_norm < cp[2].op_norm &&
                          cp[2].op_norm >= blowup_floor;
    report.curves[slot] = std::move(curve);
  });

  for (const TrendCurve& c : report.curves) {
    const std::string where = "x=" + std::to_string(c.x_sample) + " m=" + std::to_string(c.m) + ": ";
    if (!c.f_bounded) report.violations.push_back(where + "f grows (condition ii)");
    if (!c.c_decays) report.violations.push_back(where + "c does not decay (condition iv)");
    if (!c.op_norm_grows) report.violations.push_back(where + "op norm does not blow up (condition +)");
  }
  report.violation_count = report.violations.size();
  return report;
}

HypothesisReport check_hypotheses(const OperatorFamily& family, const SampleConfig& config,
                                  std::size_t x_samples, const Index& trend_n_max,
                                  double blowup_floor, Exec exec) {
  HypothesisReport r;
  r.family_id = family.id();
  r.seed = config.seed;
  r.condition_i = check_condition_i(family, config, exec);
  r.condition_iii = check_condition_iii(family, config, exec);
  r.trends = check_trends(family, x_samples, trend_n_max, config.m_hi, config.seed, blowup_floor, exec);
  return r;
}

}  // namespace condense
