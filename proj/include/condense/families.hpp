#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "condense/index.hpp"
#include "condense/qspace.hpp"

namespace condense {

// The constants that accompany a double sequence T_nm: the quasi-triangle
// factor C_m and floor N_m of condition (i) together with its correction f_nm,
// and the reverse factor L_m of condition (iii) with its decaying c_nm.
struct FamilyConstants {
  std::function<double(int m)> C;
  std::function<double(int m)> L;
  std::function<Index(int m)> N;
  std::function<double(const Index& n, int m, const Point& x)> c;
  std::function<double(const Index& n, int m, const Point& x)> f;
};

struct OpNorm {
  double value = 0.0;
  // Closed form (up to rounding) rather than a numerical estimate.
  bool exact = false;
};

// A double sequence of bounded homogeneous maps T_nm : X -> Y_nm.
//
// Only ||T_nm x|| is ever consumed downstream, so that is what the interface
// exposes; every shipped target space is the scalar field. Rows m start at 1.
// Implementations are immutable and every call is reentrant.
class OperatorFamily {
 public:
  virtual ~OperatorFamily() = default;

  virtual std::string id() const = 0;
  virtual const SpaceDescriptor& domain() const = 0;
  virtual const FamilyConstants& constants() const = 0;

  virtual double image_norm(const Index& n, int m, const Point& x) const = 0;
  virtual OpNorm op_norm(const Index& n, int m) const = 0;
  // A point y with ||y|| <= 1 and image_norm(n, m, y) >= efficiency(n, m) * ||T_nm||.
  virtual Point norming_direction(const Index& n, int m) const = 0;
  virtual double efficiency(const Index& n, int m) const = 0;

  // Largest coordinate index touched by any T_nm with n <= n_max, m <= m_max,
  // plus one. Zero when the domain is not a sequence space.
  virtual Index touched_coordinate_bound(const Index& n_max, int m_max) const;
  // Number of rows, when finite.
  virtual std::optional<int> row_count() const { return std::nullopt; }
  // Largest n the family can evaluate, when bounded.
  virtual std::optional<Index> index_limit() const { return std::nullopt; }
  // Relative accuracy of image_norm and op_norm; zero for closed forms.
  virtual double tolerance() const { return 0.0; }
};

using FamilyPtr = std::shared_ptr<const OperatorFamily>;

// Truncation length that covers every coordinate pi(n, m), n <= n_max,
// m <= m_max.
Index plan_dimension(const Index& n_max, int m_max);

// T_nm x = n * x_{pi(n,m)} on ell^p; ||T_nm|| = n, C = L = N = 1, c = f = 0.
FamilyPtr coordinate_family(double p, Index dimension);

// T_nm x = n |x_{pi(n,m)}| + ||x||_p / n on ell^p, p in (0, 1).
// ||T_nm|| = n + 1/n, C_m = 2^(1/p - 1), L_m = 1, N_m = 1, c = 1/n^2,
// f = 2^(1/p - 1) ||x|| / n.
FamilyPtr nonlinear_gal_family(double p, Index dimension);

// T_nm x = |x_{pi(n,m)}|: homogeneous and bounded but with ||T_nm|| = 1, so
// the rows never blow up. Negative control for the hypothesis checker.
FamilyPtr bounded_fake_family(double p, Index dimension);

struct FourierOptions {
  std::vector<double> points;  // t_1, t_2, ... in [-pi, pi)
  std::int64_t quadrature_order = 65536;
  double smoothing_width = 0.0;  // 0 selects pi / (8(n + 1)) per order
  int grid_resolution = 4096;
  double efficiency = 0.75;
};

// T_nm f = S_n f(t_m), the n-th Fourier partial sum at t_m, on C(T).
// ||T_nm|| is the Lebesgue constant L_n; C = L = N = 1, c = f = 0.
FamilyPtr fourier_family(FourierOptions options);

// S_n f(t) = (1 / 2 pi) * integral f(t - u) D_n(u) du, by composite
// Gauss-Legendre split at the sign changes of D_n and at every kink of f.
double fourier_partial_sum(std::int64_t n, double t, const HumpSum& f,
                           std::int64_t quadrature_order);

// Same operators, different declared constants. Used to plant understated
// constants for the negative hypothesis tests.
FamilyPtr with_constants(FamilyPtr base, FamilyConstants constants, std::string id);

}  // namespace condense
