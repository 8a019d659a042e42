#include "condense/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "condense/dirichlet.hpp"

namespace condense {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double heavy_tailed(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  const double g = normal(rng);
  return g * std::pow(10.0, exponent(rng));
}

namespace {

int pick(Rng& rng, int count) {
  return std::uniform_int_distribution<int>(0, count - 1)(rng);
}

Point random_sequence(const SpaceDescriptor& space, Rng& rng, std::span<const Point> hot) {
  std::vector<Index> pool;
  for (const Point& h : hot)
    for (const auto& [j, v] : h.sequence().entries()) pool.push_back(j);
  for (int j = 1; j <= 8; ++j)
    if (Index(j) <= space.dimension()) pool.push_back(Index(j));
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  const int mode = pick(rng, hot.empty() ? 2 : 4);
  SequencePoint out;
  switch (mode) {
    case 0: {  // dense over the pool
      std::bernoulli_distribution keep(0.5);
      for (const Index& j : pool)
        if (keep(rng)) out.set(j, heavy_tailed(rng));
      if (out.empty()) out.set(pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))], heavy_tailed(rng));
      break;
    }
    case 1:  // one coordinate
      out.set(pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))], heavy_tailed(rng));
      break;
    case 2:  // a multiple of a hot direction
      return hot[static_cast<std::size_t>(pick(rng, static_cast<int>(hot.size())))].scaled(heavy_tailed(rng));
    default: {  // hot direction plus one stray coordinate
      Point base = hot[static_cast<std::size_t>(pick(rng, static_cast<int>(hot.size())))].scaled(heavy_tailed(rng));
      out.set(pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))], heavy_tailed(rng));
      return base + Point(out);
    }
  }
  return Point(std::move(out));
}

Point random_humps(Rng& rng, std::span<const Point> hot) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> order(0, 8);
  std::uniform_real_distribution<double> center(-kPi, kPi);
  std::uniform_real_distribution<double> stretch(0.5, 2.0);
  const int mode = pick(rng, hot.empty() ? 1 : 3);
  if (mode == 1) return hot[static_cast<std::size_t>(pick(rng, static_cast<int>(hot.size())))].scaled(heavy_tailed(rng));
  std::vector<Hump> humps;
  const int c = count(rng);
  for (int i = 0; i < c; ++i) {
    const std::int64_t n = order(rng);
    humps.push_back(Hump{wrap_angle(center(rng)), default_smoothing_width(n) * stretch(rng),
                         heavy_tailed(rng), n});
  }
  Point out(HumpSum(std::move(humps)));
  if (mode == 2) out = out + hot[static_cast<std::size_t>(pick(rng, static_cast<int>(hot.size())))].scaled(heavy_tailed(rng));
  return out;
}

}  // namespace

Point random_point(const SpaceDescriptor& space, Rng& rng, std::span<const Point> hot) {
  switch (space.kind()) {
    case SpaceKind::finite_ell_p: return random_sequence(space, rng, hot);
    case SpaceKind::periodic_continuous: return random_humps(rng, hot);
    case SpaceKind::scalar: return Point(heavy_tailed(rng));
  }
  return Point(0.0);
}

Point random_part(const Point& y, Rng& rng) {
  std::bernoulli_distribution keep(0.5);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  switch (y.kind()) {
    case SpaceKind::finite_ell_p: {
      const auto& entries = y.sequence().entries();
      if (entries.size() <= 1) return y.scaled(fraction(rng));
      SequencePoint out;
      for (const auto& [j, v] : entries)
        if (keep(rng)) out.set(j, v);
      return Point(std::move(out));
    }
    case SpaceKind::periodic_continuous: {
      const auto& humps = y.humps().humps();
      if (humps.size() <= 1) return y.scaled(fraction(rng));
      std::vector<Hump> out;
      for (const Hump& h : humps)
        if (keep(rng)) out.push_back(h);
      return Point(HumpSum(std::move(out)));
    }
    case SpaceKind::scalar: return y.scaled(fraction(rng));
  }
  return y;
}

Point rescale_to(const SpaceDescriptor& space, const Point& x, double radius) {
  const double norm = quasi_norm(space, x);
  if (norm == 0.0) return x;
  return x.scaled(radius / norm);
}

}  // namespace condense
