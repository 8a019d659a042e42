// Acceptance checks 1-9. `acceptance` runs all of them, `acceptance N` runs
// one; each prints a single "criterion N: PASS|FAIL ..." line.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "condense/commands.hpp"
#include "condense/dirichlet.hpp"
#include "condense/glide.hpp"
#include "condense/hypotheses.hpp"
#include "condense/renorm.hpp"
#include "condense/sampling.hpp"
#include "condense/serialize.hpp"

using namespace condense;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

const Index kHorizon = parse_index("1e60");

int rows_for(int K) {
  int r = 1;
  for (int k = 1; k <= K; ++k) r = std::max(r, psi(k));
  return r;
}

bool all_flags(const Certificate& c, std::size_t K) {
  if (!c.complete || c.steps.size() != K) return false;
  for (const StepFlags& s : c.steps)
    if (!s.accepted()) return false;
  return true;
}

Result criterion1() {
  const auto t0 = Clock::now();
  const int K = 15;
  const auto family = coordinate_family(0.5, plan_dimension(kHorizon, rows_for(K)));
  const auto run = run_condensation(*family, K, 0.5, kHorizon, 1);
  const double elapsed = seconds_since(t0);
  bool exact = run.trace.steps.size() == static_cast<std::size_t>(K);
  for (std::size_t i = 0; exact && i < run.trace.steps.size(); ++i) {
    const TraceStep& s = run.trace.steps[i];
    exact = family->image_norm(s.n, s.m, run.trace.final_point) >= static_cast<double>(i + 1);
  }
  const bool ok = run.accepted() && all_flags(run.certificate, K) && exact && elapsed < 5.0;
  return {ok, "coordinate l^1/2, K=15: accepted=" + std::to_string(run.accepted()) +
                  ", exact final bounds=" + std::to_string(exact) + ", " + fmt(elapsed, 3) + "s"};
}

Result criterion2() {
  const auto t0 = Clock::now();
  const int K = 12;
  const auto family = nonlinear_gal_family(0.5, plan_dimension(kHorizon, rows_for(K)));
  const auto run = run_condensation(*family, K, 0.5, kHorizon, 1);
  const double elapsed = seconds_since(t0);
  double min_margin = INFINITY;
  for (const StepFlags& s : run.certificate.steps) min_margin = std::min(min_margin, s.final_margin);
  const bool ok = run.accepted() && all_flags(run.certificate, K) && min_margin >= 0.0 && elapsed < 10.0;
  return {ok, "nonlinear-gal l^1/2, K=12: accepted=" + std::to_string(run.accepted()) +
                  ", min f-inclusive margin=" + fmt(min_margin) + ", " + fmt(elapsed, 3) + "s"};
}

Result criterion3() {
  const auto t0 = Clock::now();
  const int K = 9;
  FourierOptions o;
  o.points = {-2.0, 0.0, 2.0};
  const auto family = fourier_family(o);
  for (int m = 1; m <= 3; ++m) {
    int hits = 0;
    for (int k = 1; k <= K; ++k) hits += psi(k) == m;
    if (hits < 2) return {false, "psi hits row " + std::to_string(m) + " fewer than twice"};
  }
  const auto run = run_condensation(*family, K, 0.5, kHorizon, 1);
  const double elapsed = seconds_since(t0);
  bool growth = run.trace.steps.size() == static_cast<std::size_t>(K);
  for (const GrowthRow& r : growth_rows(*family, run.trace, run.certificate))
    growth = growth && r.image_at_xK >= static_cast<double>(r.target) - 1e-6;
  const bool ok = run.accepted() && all_flags(run.certificate, K) && growth &&
                  family->tolerance() <= 1e-8 && elapsed < 60.0;
  std::string detail = "fourier, 3 points, K=9: steps completed " + std::to_string(run.trace.steps.size()) +
                       "/9, " + fmt(elapsed, 3) + "s";
  if (run.failure) detail += "; step " + std::to_string(run.failure->k) + ": " + run.failure->reason;
  return {ok, detail};
}

// Fejer: L_n = 1/(2n+1) + (2/pi) sum_{k=1}^n tan(k pi/(2n+1))/k.
double fejer(int n) {
  long double s = 0.0L;
  const long double pi = 3.14159265358979323846264338L;
  for (int k = 1; k <= n; ++k) s += std::tan(k * pi / (2.0L * n + 1.0L)) / k;
  return static_cast<double>(1.0L / (2.0L * n + 1.0L) + 2.0L / pi * s);
}

Result criterion4() {
  const auto table = lebesgue_table(100, 65536);
  const bool l0 = table[0] == 1.0;
  const double l1_err = std::abs(table[1] - (1.0 / 3.0 + 2.0 * std::sqrt(3.0) / kPi));
  bool monotone = true;
  for (int n = 2; n <= 100; ++n) monotone = monotone && table[n] >= table[n - 1];
  double lo = INFINITY, hi = -INFINITY, oracle_err = 0.0;
  for (int n = 20; n <= 100; ++n) {
    const double r = table[n] - 4.0 / (kPi * kPi) * std::log(n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  for (int n = 1; n <= 100; ++n) oracle_err = std::max(oracle_err, std::abs(table[n] - fejer(n)));
  const bool ok = l0 && l1_err < 1e-6 && monotone && hi - lo < 0.05 && oracle_err < 1e-9;
  return {ok, "L_0=" + fmt(table[0]) + ", |L_1 - closed form|=" + fmt(l1_err, 3) +
                  ", monotone=" + std::to_string(monotone) + ", width=" + fmt(hi - lo, 4) +
                  ", max |L_n - oracle|=" + fmt(oracle_err, 3)};
}

Result criterion5() {
  Rng rng(20261015);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int K = 1 + static_cast<int>(rng() % 16);
    std::vector<double> alpha;
    for (int i = 0; i < K; ++i) alpha.push_back(std::pow(10.0, -4.0 * u(rng)));
    const double cap = 1e-3 + u(rng);
    const auto b = beta_lemma(alpha, cap, K);
    for (int m = 0; m < K; ++m) {
      double tail = 0.0;
      for (int i = m + 1; i < K; ++i) tail += b[i];
      if (!(tail < alpha[m] * b[m])) ++bad;
    }
  }
  const std::vector<double> eighth(3, 0.125);
  const bool example = beta_lemma(eighth, 1.0, 3) == std::vector<double>{1.0, 1.0 / 32.0, 1.0 / 1024.0};

  int schedules = 0, nonpositive = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double p = 0.25 + 0.75 * u(rng);
    const double L = 1.0 + 4.0 * u(rng), C = 1.0 + 4.0 * u(rng);
    const int K = 1 + static_cast<int>(rng() % 10);
    try {
      const auto s = build_schedule(p, [L](int) { return L; }, [C](int) { return C; }, 0.01 + 0.99 * u(rng), K);
      ++schedules;
      for (double g : s.gamma) nonpositive += !(g > 0.0);
    } catch (const ScheduleUnderflow&) {
      // reported, not produced
    }
  }
  const bool ok = bad == 0 && example && nonpositive == 0 && schedules > 0;
  return {ok, "lemma violations " + std::to_string(bad) + "/1000 sequences, worked example " +
                  (example ? "exact" : "wrong") + ", nonpositive gamma " + std::to_string(nonpositive) +
                  " over " + std::to_string(schedules) + " schedules"};
}

Result criterion6() {
  Rng rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int outside = 0, aoki_fail = 0, tested = 0;
  for (double p : {0.5, 1.0 / 3.0}) {
    const auto space = SpaceDescriptor::ell_p(p, 6);
    for (int i = 0; i < 1000; ++i) {
      SequencePoint s;
      const int support = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < support; ++j) s.set(1 + static_cast<int>(rng() % 6), heavy_tailed(rng));
      const Point x(s);
      const int parts = 2 + static_cast<int>(rng() % 2);
      const int grid = parts == 2 ? 8 : 4;
      const double env = envelope_p_norm(space, x, parts, grid);
      const double norm = quasi_norm(space, x);
      ++tested;
      if (!(env <= norm && env >= norm / std::pow(4.0, 1.0 / p))) ++outside;
    }
    for (int i = 0; i < 1000; ++i) {
      std::vector<Point> xs;
      const int count = 1 + static_cast<int>(rng() % 6);
      for (int j = 0; j < count; ++j) xs.push_back(random_point(space, rng, {}));
      aoki_fail += !check_aoki_inequality(space, xs);
    }
  }
  const bool ok = outside == 0 && aoki_fail == 0;
  return {ok, "envelope outside bracket " + std::to_string(outside) + "/" + std::to_string(tested) +
                  ", aoki inequality failures " + std::to_string(aoki_fail) + "/2000"};
}

Result criterion7() {
  SampleConfig config;
  config.samples = 10000;
  config.seed = 7;
  std::string detail;
  bool ok = true;

  FourierOptions o;
  o.points = {-2.0, 0.0, 2.0};
  const std::vector<FamilyPtr> shipped = {coordinate_family(0.5, plan_dimension(64, 4)),
                                          nonlinear_gal_family(0.5, plan_dimension(64, 4)), fourier_family(o)};
  for (const FamilyPtr& f : shipped) {
    SampleConfig c = config;
    if (auto rows = f->row_count()) c.m_hi = std::min(c.m_hi, *rows);
    const auto r = check_hypotheses(*f, c, 8, 64, 2.0);
    ok = ok && r.violation_count() == 0 && r.condition_i.tested == 10000 && r.condition_iii.tested == 10000;
    detail += f->id() + ":" + std::to_string(r.violation_count()) + " ";
  }

  const auto gal = nonlinear_gal_family(0.5, plan_dimension(64, 4));
  FamilyConstants understated = gal->constants();
  understated.C = [](int) { return 1.0; };
  const auto c1 = with_constants(gal, understated, "gal-C1");
  const auto ri = check_condition_i(*c1, config);
  bool replay_i = ri.violation_count > 0;
  if (replay_i) {
    const Violation& v = ri.violations.front();
    const auto s = draw_sample(*c1, config, "i", v.sample);
    replay_i = s.n == v.n && s.m == v.m && s.x == v.x && s.y == v.y;
  }

  FamilyConstants zeroed = gal->constants();
  zeroed.c = [](const Index&, int, const Point&) { return 0.0; };
  const auto c0 = with_constants(gal, zeroed, "gal-c0");
  const auto riii = check_condition_iii(*c0, config);
  bool replay_iii = riii.violation_count > 0;
  if (replay_iii) {
    const Violation& v = riii.violations.front();
    const auto s = draw_sample(*c0, config, "iii", v.sample);
    replay_iii = s.n == v.n && s.m == v.m && s.x == v.x && s.y == v.y;
  }

  const auto fake = bounded_fake_family(0.5, plan_dimension(64, 4));
  const auto t1 = check_trends(*fake, 8, 64, 4, config.seed);
  const auto t2 = check_trends(*fake, 8, 64, 4, config.seed);
  const bool fake_caught = t1.violation_count > 0 && t1.violations == t2.violations;

  ok = ok && replay_i && replay_iii && fake_caught;
  detail += "| understated C: " + std::to_string(ri.violation_count) + (replay_i ? " (replayed)" : "") +
            ", zeroed c: " + std::to_string(riii.violation_count) + (replay_iii ? " (replayed)" : "") +
            ", bounded fake: " + std::to_string(t1.violation_count) + (fake_caught ? " (replayed)" : "");
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Result criterion8() {
  const fs::path root = fs::temp_directory_path() / "condense_acceptance_8";
  fs::remove_all(root);
  bool ok = true;
  std::ostringstream log, err;
  std::string detail;
  for (const char* family : {"coordinate", "nonlinear-gal"}) {
    RunConfig c = load_config(std::nullopt, {{"family", family}, {"K", "12"}, {"seed", "424242"}});
    c.out = (root / "a").string();
    const int ra = cmd_run(c, log, err);
    c.out = (root / "b").string();
    const int rb = cmd_run(c, log, err);
    bool same = ra == 0 && rb == 0;
    for (const char* f : {"trace.json", "certificate.json", "growth.csv"})
      same = same && slurp(root / "a" / f) == slurp(root / "b" / f) && !slurp(root / "a" / f).empty();
    ok = ok && same;
    detail += std::string(family) + (same ? " identical " : " DIFFER ");
  }
  fs::remove_all(root);
  return {ok, detail};
}

Result criterion9() {
  int mutations = 0, unflipped = 0;
  struct Case {
    FamilyPtr family;
    int K;
  };
  const std::vector<Case> cases = {{coordinate_family(0.5, plan_dimension(kHorizon, 5)), 15},
                                   {nonlinear_gal_family(0.5, plan_dimension(kHorizon, 5)), 12}};
  for (const Case& c : cases) {
    const auto run = run_condensation(*c.family, c.K, 0.5, kHorizon, 1);
    if (!run.accepted()) return {false, c.family->id() + " run not accepted"};
    for (std::size_t i = 0; i < run.trace.steps.size(); ++i) {
      for (double factor : {1.1, 0.9}) {
        for (int field = 0; field < 3; ++field) {
          WitnessTrace t = run.trace;
          TraceStep& s = t.steps[i];
          if (field == 0) {
            s.beta *= factor;
          } else if (field == 1) {
            const Index tenth = s.n / 10 > 0 ? Index(s.n / 10) : Index(1);
            s.n = factor > 1.0 ? Index(s.n + tenth) : Index(s.n - tenth);
          } else {
            s.increment = s.increment.scaled(factor);
          }
          ++mutations;
          const auto cert = verify_certificate(*c.family, run.schedule, t);
          if (cert.steps.size() > i && cert.steps[i].accepted()) ++unflipped;
        }
      }
    }
  }
  return {unflipped == 0, std::to_string(mutations) + " single-field mutations, " + std::to_string(unflipped) +
                              " left every flag at that step true"};
}

const std::function<Result()> kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                             criterion6, criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 9) {
      std::cerr << "no criterion " << n << '\n';
      return 2;
    }
    Result r;
    try {
      r = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
