#pragma once

#include <cstdint>
#include <vector>

#include "condense/parallel.hpp"

namespace condense {

inline constexpr double kPi = 3.14159265358979323846;

// Maps u onto the fundamental period [-pi, pi).
double wrap_angle(double u);

// D_n(u) = sin((n + 1/2) u) / sin(u / 2), with the removable singularity
// at u = 0 filled by 2n + 1.
double dirichlet_kernel(std::int64_t n, double u);

// Sign changes of D_n on [-pi, pi): 2 pi j / (2n + 1) for 1 <= |j| <= n,
// ascending.
std::vector<double> dirichlet_zeros(std::int64_t n);

// sign(D_n(u)) with a linear ramp of total width `width` centred on every
// sign change. Continuous, 2 pi periodic, values in [-1, 1].
double smoothed_sign(std::int64_t n, double width, double u);

// Points of [-pi, pi) where u -> smoothed_sign(n, width, u) is not smooth.
// Between consecutive kinks the profile is affine.
std::vector<double> smoothed_sign_kinks(std::int64_t n, double width);

double default_smoothing_width(std::int64_t n);

// Smallest quadrature order accepted for D_n.
std::int64_t min_quadrature_order(std::int64_t n);

// Panels per half lobe of D_n for a given order (at least 1).
int panels_per_lobe(std::int64_t n, std::int64_t quadrature_order);

// (1 / 2 pi) * integral over a period of |D_n|: the norm of f -> S_n f(t)
// on continuous periodic functions. Composite Gauss-Legendre with panel
// boundaries at the sign changes of D_n. Throws std::invalid_argument when
// quadrature_order < 2(n + 1).
double lebesgue_constant(std::int64_t n, std::int64_t quadrature_order);

// L_0 .. L_{n_max}.
std::vector<double> lebesgue_table(std::int64_t n_max, std::int64_t quadrature_order,
                                   Exec exec = Exec::parallel);

}  // namespace condense
