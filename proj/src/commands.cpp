#include "condense/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "condense/dirichlet.hpp"
#include "condense/glide.hpp"
#include "condense/hypotheses.hpp"
#include "condense/serialize.hpp"

namespace condense {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int rows_visited(int K) {
  int rows = 1;
  for (int k = 1; k <= K; ++k) rows = std::max(rows, psi(k));
  return rows;
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  FamilyPtr family;
  RunOutcome outcome;
  try {
    family = make_family(config, config.n_max, rows_visited(config.K));
    outcome = run_condensation(*family, config.K, config.cap, config.n_max, config.seed);
  } catch (const ScheduleUnderflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  outcome.trace.config = snapshot(config);

  const fs::path out(config.out);
  write_file(out / "trace.json", to_json(outcome.trace).dump(2) + "\n");
  write_file(out / "certificate.json", to_json(outcome.certificate).dump(2) + "\n");
  write_file(out / "growth.csv", growth_csv(growth_rows(*family, outcome.trace, outcome.certificate)));

  if (outcome.failure) {
    err << "step " << outcome.failure->k << " failed: " << outcome.failure->reason << '\n';
    return kExitFailed;
  }
  if (!outcome.certificate.accepted()) {
    const auto k = outcome.certificate.first_failure();
    err << "certificate rejected at step " << (k ? std::to_string(*k) : std::string("?")) << '\n';
    return kExitFailed;
  }
  log << "certificate accepted: " << family->id() << ", K = " << config.K << '\n';
  return kExitOk;
}

int cmd_check(const RunConfig& config, std::ostream& log, std::ostream& err) {
  HypothesisReport report;
  try {
    const Index n_hi = std::max(config.sample_n_max, config.trend_n_max);
    FamilyPtr family = make_family(config, n_hi, config.m_max);
    SampleConfig sc;
    sc.samples = config.samples;
    sc.n_hi = config.sample_n_max;
    sc.m_hi = config.m_max;
    sc.seed = config.seed;
    report = check_hypotheses(*family, sc, config.x_samples, config.trend_n_max, config.blowup_floor);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const fs::path out(config.out);
  write_file(out / "hypotheses.json", to_json(report).dump(2) + "\n");
  write_file(out / "hypotheses.csv", hypothesis_summary_csv(report));
  if (const auto v = report.violation_count(); v > 0) {
    err << v << " violations (" << report.condition_i.violation_count << " in (i), "
        << report.condition_iii.violation_count << " in (iii), " << report.trends.violation_count
        << " in trends)\n";
    return kExitFailed;
  }
  log << "no violations: " << report.family_id << '\n';
  return kExitOk;
}

int cmd_lebesgue(std::int64_t n_max, std::int64_t quadrature_order, const std::string& out,
                 std::ostream& log, std::ostream& err) {
  if (n_max < 0) {
    err << "config error: n_max must be >= 0\n";
    return kExitConfig;
  }
  std::vector<double> table;
  try {
    table = lebesgue_table(n_max, quadrature_order);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  write_file(fs::path(out) / "lebesgue.csv", lebesgue_csv(table));
  log << "wrote " << table.size() << " rows\n";
  return kExitOk;
}

int cmd_schedule(double p, double L, double C, double cap, int K, const std::string& out,
                 std::ostream& log, std::ostream& err) {
  BetaSchedule s;
  try {
    if (K < 0) throw std::invalid_argument("K must be >= 0");
    s = build_schedule(p, [L](int) { return L; }, [C](int) { return C; }, cap, K);
  } catch (const ScheduleUnderflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!lemma_inequality_holds(s.alpha, s.beta_tilde)) {
    err << "error: schedule violates the lemma inequality\n";
    return kExitFailed;
  }
  write_file(fs::path(out) / "schedule.csv", schedule_csv(s));
  log << "wrote " << K << " rows\n";
  return kExitOk;
}

}  // namespace condense
