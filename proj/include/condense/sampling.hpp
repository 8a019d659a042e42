#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "condense/qspace.hpp"

namespace condense {

using Rng = std::mt19937_64;

// SplitMix64 finalizer over (seed, stream): independent per-sample streams
// that do not depend on which thread draws them.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Standard normal times 10^U(-3, 3): symmetric with magnitudes spread over
// six decades.
double heavy_tailed(Rng& rng);

// A random point of `space`. `hot` lists points the draw should often be
// built from (norming directions of the operator under test), so sparse
// and adversarial configurations show up at a useful rate.
Point random_point(const SpaceDescriptor& space, Rng& rng, std::span<const Point> hot);

// A random piece of y: a subset of its coordinates (or humps), or a random
// fraction of it when it has only one.
Point random_part(const Point& y, Rng& rng);

// x scaled so that quasi_norm(space, x) == radius (x unchanged if zero).
Point rescale_to(const SpaceDescriptor& space, const Point& x, double radius);

}  // namespace condense
