#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condense/commands.hpp"
#include "condense/config.hpp"

using namespace condense;

namespace {

struct Flags {
  std::optional<std::string> config, seed, out, family, p, K, cap, n_max, quadrature_order, L, C;
  std::vector<std::string> set;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "key = value configuration file");
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--family", f.family, "coordinate | fourier | nonlinear-gal | bounded-fake");
  app->add_option("--p", f.p, "exponent of the ell^p domain");
  app->add_option("--K", f.K, "number of steps");
  app->add_option("--cap", f.cap, "upper bound on beta");
  app->add_option("--n-max", f.n_max, "largest admissible operator index (digits or 1eNN)");
  app->add_option("--quadrature-order", f.quadrature_order, "Gauss-Legendre nodes over [-pi, pi]");
  app->add_option("--L", f.L, "reverse factor (schedule)");
  app->add_option("--C", f.C, "quasi-triangle factor (schedule)");
  app->add_option("--set", f.set, "extra KEY=VALUE override, repeatable");
}

std::vector<Setting> overrides(const Flags& f) {
  std::vector<Setting> out;
  auto put = [&](const char* key, const std::optional<std::string>& v) {
    if (v) out.emplace_back(key, *v);
  };
  for (const std::string& kv : f.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, "--set expects KEY=VALUE");
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  put("seed", f.seed);
  put("out", f.out);
  put("family", f.family);
  put("p", f.p);
  put("K", f.K);
  put("cap", f.cap);
  put("n_max", f.n_max);
  put("quadrature_order", f.quadrature_order);
  put("L", f.L);
  put("C", f.C);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gliding-hump condensation of singularities"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* run = app.add_subcommand("run", "construct x_K and write trace, certificate, growth table");
  CLI::App* check = app.add_subcommand("check", "sample the family hypotheses");
  CLI::App* lebesgue = app.add_subcommand("lebesgue", "tabulate Lebesgue constants");
  CLI::App* schedule = app.add_subcommand("schedule", "emit the beta/gamma schedule");
  for (CLI::App* sub : {run, check, lebesgue, schedule}) add_flags(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  RunConfig config;
  try {
    std::vector<Setting> ov = overrides(flags);
    if (lebesgue->parsed() && !flags.n_max) ov.emplace_back("n_max", "100");
    config = load_config(flags.config, ov);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config, std::cout, std::cerr);
    if (check->parsed()) return cmd_check(config, std::cout, std::cerr);
    if (lebesgue->parsed()) {
      if (config.n_max > 1'000'000) {
        std::cerr << "config error: key 'n_max' too large for a table\n";
        return kExitConfig;
      }
      return cmd_lebesgue(config.n_max.convert_to<std::int64_t>(), config.quadrature_order, config.out,
                          std::cout, std::cerr);
    }
    return cmd_schedule(config.p, config.L, config.C, config.cap, config.K, config.out, std::cout,
                        std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}
