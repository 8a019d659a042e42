#include "condense/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace condense {

double aoki_exponent(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw std::invalid_argument("aoki_exponent: K must be >= 1");
  if (K == 1.0) return 1.0;
  return std::log(2.0) / std::log(2.0 * K);
}

bool check_aoki_inequality(const SpaceDescriptor& space, std::span<const Point> xs) {
  if (xs.empty()) throw std::invalid_argument("check_aoki_inequality: empty list");
  const double p = aoki_exponent(modulus_of_concavity(space));
  Point sum = Point::zero(space);
  double rhs = 0.0;
  for (const Point& x : xs) {
    sum = sum + x;
    rhs += std::pow(quasi_norm(space, x), p);
  }
  rhs *= 4.0;
  const double lhs = std::pow(quasi_norm(space, sum), p);
  return lhs <= rhs + kRelTol * std::max(lhs, rhs) + kAbsFloor;
}

namespace {

// All ways to write `steps` as an ordered sum of `parts` nonnegative integers.
std::vector<std::vector<int>> compositions(int steps, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == parts - 1) {
      current[static_cast<std::size_t>(slot)] = remaining;
      out.push_back(current);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      current[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  rec(rec, 0, steps);
  return out;
}

constexpr std::size_t kMaxSearch = 50'000'000;

}  // namespace

double envelope_p_norm(const SpaceDescriptor& space, const Point& x, int max_parts, int grid_steps,
                       Exec exec) {
  if (max_parts < 1 || grid_steps < 1) throw std::invalid_argument("envelope_p_norm: budget zero");
  const double whole = quasi_norm(space, x);
  if (space.kind() != SpaceKind::finite_ell_p || max_parts == 1 || whole == 0.0) return whole;

  const auto& entries = x.sequence().entries();
  if (entries.size() > 4)
    throw std::invalid_argument("envelope_p_norm: decomposition search limited to 4 coordinates");
  std::vector<Index> coords;
  std::vector<double> values;
  for (const auto& [j, v] : entries) {
    coords.push_back(j);
    values.push_back(v);
  }

  const double p = aoki_exponent(modulus_of_concavity(space));
  const auto shares = compositions(grid_steps, max_parts);
  const std::size_t dims = coords.size();
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (total > kMaxSearch / shares.size())
      throw std::invalid_argument("envelope_p_norm: search space too large");
    total *= shares.size();
  }

  std::vector<double> best(total, std::numeric_limits<double>::infinity());
  for_each_index(total, exec, [&](std::size_t flat) {
    std::vector<std::size_t> pick(dims);
    std::size_t rest = flat;
    for (std::size_t d = 0; d < dims; ++d) {
      pick[d] = rest % shares.size();
      rest /= shares.size();
    }
    double sum = 0.0;
    for (int part = 0; part < max_parts; ++part) {
      SequencePoint piece;
      for (std::size_t d = 0; d < dims; ++d) {
        const int share = shares[pick[d]][static_cast<std::size_t>(part)];
        piece.set(coords[d], share == grid_steps ? values[d] : values[d] * share / grid_steps);
      }
      sum += std::pow(quasi_norm(space, Point(piece)), p);
    }
    best[flat] = std::pow(sum, 1.0 / p);
  });
  return std::min(whole, *std::min_element(best.begin(), best.end()));
}

RenormReport renorm_report(const SpaceDescriptor& space, const Point& x, int max_parts,
                           int grid_steps) {
  RenormReport r;
  r.K = modulus_of_concavity(space);
  r.p = aoki_exponent(r.K);
  r.upper_bound = quasi_norm(space, x);
  r.lower_bound = r.upper_bound / std::pow(4.0, 1.0 / r.p);
  r.envelope_value = envelope_p_norm(space, x, max_parts, grid_steps);
  return r;
}

double induced_metric(const SpaceDescriptor& space, const Point& x, const Point& y) {
  const double p = aoki_exponent(modulus_of_concavity(space));
  return std::pow(quasi_norm(space, x - y), p);
}

}  // namespace condense
