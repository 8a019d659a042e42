#pragma once

#include <span>

#include "condense/parallel.hpp"
#include "condense/qspace.hpp"

namespace condense {

// Relative tolerance and absolute floor shared by every inequality check in
// this module.
inline constexpr double kRelTol = 1e-12;
inline constexpr double kAbsFloor = 1e-15;

struct RenormReport {
  double K = 1.0;
  double p = 1.0;
  double envelope_value = 0.0;
  double upper_bound = 0.0;  // ||x||
  double lower_bound = 0.0;  // ||x|| / 4^(1/p)
};

// Solves (2K)^p = 2. Throws std::invalid_argument for K < 1.
double aoki_exponent(double K);

// ||sum x_i||^p <= 4 sum ||x_i||^p with p = aoki_exponent(K of space).
bool check_aoki_inequality(const SpaceDescriptor& space, std::span<const Point> xs);

// Upper approximation of the decomposition p-norm
//   inf { (sum ||x_i||^p)^(1/p) : x = sum x_i }.
// Searches the one-part decomposition plus every split of the support into
// at most max_parts parts where each coordinate is shared out in multiples of
// 1/grid_steps. Only ell-p points with at most 4 nonzero coordinates are
// split; other kinds return the one-part value. The enumeration is the brute
// force itself, so it doubles as its own oracle.
double envelope_p_norm(const SpaceDescriptor& space, const Point& x, int max_parts, int grid_steps,
                       Exec exec = Exec::serial);

RenormReport renorm_report(const SpaceDescriptor& space, const Point& x, int max_parts,
                           int grid_steps);

// quasi_norm(x - y)^p. Every shipped space is already p-normed, so this is
// the metric d(x, y) = |||x - y|||^p with the envelope replaced by the
// quasi-norm itself.
double induced_metric(const SpaceDescriptor& space, const Point& x, const Point& y);

}  // namespace condense
