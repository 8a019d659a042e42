#include "condense/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace condense {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

double zero_spacing(std::int64_t n) { return 2.0 * kPi / static_cast<double>(2 * n + 1); }

}  // namespace

double wrap_angle(double u) {
  double r = std::fmod(u + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  return r >= kPi ? -kPi : r;
}

double dirichlet_kernel(std::int64_t n, double u) {
  const double w = wrap_angle(u);
  const double half = std::sin(0.5 * w);
  const double order = static_cast<double>(2 * n + 1);
  if (std::abs(half) < 1e-300 || std::abs(w) * order < 1e-7) return order;
  return std::sin(0.5 * order * w) / half;
}

std::vector<double> dirichlet_zeros(std::int64_t n) {
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(2 * n));
  const double h = zero_spacing(n);
  for (std::int64_t j = n; j >= 1; --j) zeros.push_back(-h * static_cast<double>(j));
  for (std::int64_t j = 1; j <= n; ++j) zeros.push_back(h * static_cast<double>(j));
  return zeros;
}

double smoothed_sign(std::int64_t n, double width, double u) {
  if (n == 0) return 1.0;
  const double h = zero_spacing(n);
  const double a = std::abs(wrap_angle(u));
  auto lobe = static_cast<std::int64_t>(std::floor(a / h));
  lobe = std::clamp<std::int64_t>(lobe, 0, n);
  const double sign = (lobe % 2 == 0) ? 1.0 : -1.0;
  double dist = 2.0 * kPi;
  if (lobe >= 1) dist = std::min(dist, a - h * static_cast<double>(lobe));
  if (lobe + 1 <= n) dist = std::min(dist, h * static_cast<double>(lobe + 1) - a);
  dist = std::max(dist, 0.0);
  return sign * std::min(1.0, dist / (0.5 * width));
}

std::vector<double> smoothed_sign_kinks(std::int64_t n, double width) {
  std::vector<double> kinks;
  if (n == 0) return kinks;
  const double h = zero_spacing(n);
  kinks.reserve(static_cast<std::size_t>(6 * n + 2));
  kinks.push_back(-kPi);
  kinks.push_back(0.0);
  for (std::int64_t j = 1; j <= n; ++j) {
    const double z = h * static_cast<double>(j);
    for (double s : {-1.0, 1.0}) {
      kinks.push_back(wrap_angle(s * (z - 0.5 * width)));
      kinks.push_back(wrap_angle(s * (z + 0.5 * width)));
      if (j < n) kinks.push_back(s * (z + 0.5 * h));
    }
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  return kinks;
}

double default_smoothing_width(std::int64_t n) {
  return kPi / (8.0 * static_cast<double>(n + 1));
}

std::int64_t min_quadrature_order(std::int64_t n) { return 2 * (n + 1); }

int panels_per_lobe(std::int64_t n, std::int64_t quadrature_order) {
  const std::int64_t r = quadrature_order / min_quadrature_order(n);
  return static_cast<int>(std::clamp<std::int64_t>(r, 1, 2));
}

double lebesgue_constant(std::int64_t n, std::int64_t quadrature_order) {
  if (n < 0) throw std::invalid_argument("lebesgue_constant: n must be >= 0");
  if (quadrature_order < min_quadrature_order(n))
    throw std::invalid_argument("quadrature_order " + std::to_string(quadrature_order) +
                                " too small for n = " + std::to_string(n) + " (need >= " +
                                std::to_string(min_quadrature_order(n)) + ")");
  if (n == 0) return 1.0;
  const double h = zero_spacing(n);
  const int r = panels_per_lobe(n, quadrature_order);
  auto integrand = [n](double u) { return std::abs(dirichlet_kernel(n, u)); };
  double total = 0.0;
  // By symmetry integrate over [0, pi] and divide by pi.
  for (std::int64_t j = 0; j <= n; ++j) {
    const double a = h * static_cast<double>(j);
    const double b = (j == n) ? kPi : h * static_cast<double>(j + 1);
    const double step = (b - a) / r;
    for (int s = 0; s < r; ++s) total += Rule::integrate(integrand, a + s * step, a + (s + 1) * step);
  }
  return total / kPi;
}

std::vector<double> lebesgue_table(std::int64_t n_max, std::int64_t quadrature_order, Exec exec) {
  if (n_max < 0) throw std::invalid_argument("lebesgue_table: n_max must be >= 0");
  if (quadrature_order < min_quadrature_order(n_max))
    throw std::invalid_argument("quadrature_order " + std::to_string(quadrature_order) +
                                " too small for n = " + std::to_string(n_max));
  std::vector<double> table(static_cast<std::size_t>(n_max + 1));
  for_each_index(table.size(), exec, [&](std::size_t i) {
    table[i] = lebesgue_constant(static_cast<std::int64_t>(i), quadrature_order);
  });
  return table;
}

}  // namespace condense
