#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "condense/families.hpp"
#include "condense/index.hpp"

namespace condense {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  std::string family = "coordinate";
  double p = 0.5;
  int K = 15;
  double cap = 0.5;
  Index n_max = parse_index("1e60");
  std::int64_t quadrature_order = 65536;
  int grid_resolution = 4096;
  std::uint64_t seed = 1;
  std::string out = "out";

  // fourier
  std::vector<double> points = {-2.0, 0.0, 2.0};
  double smoothing_width = 0.0;

  // check
  std::size_t samples = 10000;
  Index sample_n_max = 64;
  int m_max = 4;
  std::size_t x_samples = 8;
  Index trend_n_max = 64;
  double blowup_floor = 2.0;
  std::optional<double> override_C;
  bool zero_c = false;

  // schedule
  double L = 1.0;
  double C = 1.0;
};

using Setting = std::pair<std::string, std::string>;

// Parses and validates one key. Throws ConfigError naming the key.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// "key = value" lines; '#' starts a comment.
std::vector<Setting> parse_config_text(const std::string& text);

// Defaults, then the file (if any), then overrides in order.
RunConfig load_config(const std::optional<std::string>& path, const std::vector<Setting>& overrides);

// Checks that need more than one key.
void validate(const RunConfig& config);

// Every key with its effective value, as written into traces.
std::map<std::string, std::string> snapshot(const RunConfig& config);

// Builds the configured family; ell^p families are truncated to cover
// n <= n_max and rows 1..m_max.
FamilyPtr make_family(const RunConfig& config, const Index& n_max, int m_max);

}  // namespace condense
