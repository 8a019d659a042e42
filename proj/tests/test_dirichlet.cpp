#include <doctest.h>

#include <cmath>

#include "condense/dirichlet.hpp"
#include "condense/families.hpp"

using namespace condense;

namespace {

// Fejer's closed form: L_n = 1/(2n+1) + (2/pi) sum_{k=1}^n tan(k pi/(2n+1)) / k.
double fejer(int n) {
  long double s = 0.0L;
  const long double q = 2.0L * n + 1.0L;
  for (int k = 1; k <= n; ++k) s += std::tan(k * 3.14159265358979323846264338L / q) / k;
  return static_cast<double>(1.0L / q + 2.0L / 3.14159265358979323846264338L * s);
}

// Composite Simpson on |D_n| over [0, pi], independent of the library.
double simpson_lebesgue(int n, int intervals) {
  const double h = kPi / intervals;
  auto g = [n](double u) {
    if (u == 0.0) return 2.0 * n + 1.0;
    return std::abs(std::sin((n + 0.5) * u) / std::sin(u / 2.0));
  };
  double s = g(0.0) + g(kPi);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return s * h / 3.0 / kPi;
}

}  // namespace

TEST_CASE("dirichlet kernel") {
  CHECK(dirichlet_kernel(0, 1.3) == doctest::Approx(1.0));
  CHECK(dirichlet_kernel(5, 0.0) == 11.0);
  CHECK(dirichlet_kernel(5, 1e-12) == doctest::Approx(11.0));
  // D_n(u) = 1 + 2 sum cos(k u)
  for (double u : {0.3, -1.1, 2.9}) {
    double direct = 1.0;
    for (int k = 1; k <= 7; ++k) direct += 2.0 * std::cos(k * u);
    CHECK(dirichlet_kernel(7, u) == doctest::Approx(direct).epsilon(1e-12));
  }
  const auto z = dirichlet_zeros(3);
  REQUIRE(z.size() == 6);
  for (double u : z) CHECK(std::abs(dirichlet_kernel(3, u)) < 1e-12);
  CHECK(dirichlet_zeros(0).empty());
}

TEST_CASE("wrap_angle") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(3 * kPi + 0.5) == doctest::Approx(-kPi + 0.5));
  CHECK(wrap_angle(-kPi) == -kPi);
}

TEST_CASE("smoothed sign") {
  const std::int64_t n = 6;
  const double w = default_smoothing_width(n);
  CHECK(w == doctest::Approx(kPi / 56.0));
  CHECK(smoothed_sign(n, w, 0.0) == 1.0);
  CHECK(smoothed_sign(0, w, 2.0) == 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double u = -kPi + 2 * kPi * i / 2000.0;
    const double s = smoothed_sign(n, w, u);
    CHECK(std::abs(s) <= 1.0);
    const double d = dirichlet_kernel(n, u);
    if (std::abs(s) == 1.0 && std::abs(d) > 1e-9) CHECK(s * d > 0.0);
  }
  for (double z : dirichlet_zeros(n)) CHECK(std::abs(smoothed_sign(n, w, z)) < 1e-12);
}

TEST_CASE("lebesgue constants against closed forms") {
  CHECK(lebesgue_constant(0, 2) == 1.0);
  CHECK(lebesgue_constant(1, 4096) == doctest::Approx(1.0 / 3.0 + 2.0 * std::sqrt(3.0) / kPi).epsilon(1e-12));
  for (int n : {1, 2, 5, 10, 20, 50, 100, 500})
    CHECK(lebesgue_constant(n, 65536) == doctest::Approx(fejer(n)).epsilon(1e-12));
}

TEST_CASE("lebesgue constants against simpson") {
  for (int n : {3, 17, 64}) CHECK(lebesgue_constant(n, 4096) == doctest::Approx(simpson_lebesgue(n, 400000)).epsilon(1e-7));
}

TEST_CASE("lebesgue asymptotics") {
  const auto table = lebesgue_table(100, 65536);
  REQUIRE(table.size() == 101);
  for (int n = 1; n <= 100; ++n) CHECK(table[n] >= table[n - 1]);
  double lo = 1e9, hi = -1e9;
  for (int n = 20; n <= 100; ++n) {
    const double r = table[n] - 4.0 / (kPi * kPi) * std::log(n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi - lo < 0.05);
  // the constant 0.9894 belongs to the log(2n + 1) form
  CHECK(std::abs(table[100] - (4.0 / (kPi * kPi) * std::log(201.0) + 0.9894)) < 0.02);
}

TEST_CASE("lebesgue table serial and parallel agree") {
  CHECK(lebesgue_table(40, 4096, Exec::serial) == lebesgue_table(40, 4096, Exec::parallel));
}

TEST_CASE("quadrature order floor") {
  CHECK(min_quadrature_order(100) == 202);
  CHECK_THROWS_AS(lebesgue_constant(100, 201), std::invalid_argument);
  CHECK_NOTHROW(lebesgue_constant(100, 202));
  CHECK(lebesgue_constant(100, 202) == doctest::Approx(fejer(100)).epsilon(1e-8));
}

TEST_CASE("fourier partial sums") {
  // a hump of order 0 is the constant amplitude
  const HumpSum one({Hump{0.0, 0.1, 1.0, 0}});
  CHECK(fourier_partial_sum(0, 0.4, one, 4096) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fourier_partial_sum(9, -2.0, one, 4096) == doctest::Approx(1.0).epsilon(1e-12));

  // against a brute-force midpoint rule
  const HumpSum f({Hump{0.7, 0.05, 1.0, 4}, Hump{-2.0, 0.2, -0.5, 1}});
  for (std::int64_t n : {0, 3, 8}) {
    const double t = 0.25;
    const int steps = 2000000;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double u = -kPi + (i + 0.5) * 2 * kPi / steps;
      s += f(t - u) * dirichlet_kernel(n, u);
    }
    s /= steps;
    CHECK(fourier_partial_sum(n, t, f, 4096) == doctest::Approx(s).epsilon(1e-6));
  }
}
