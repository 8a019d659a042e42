#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "condense/index.hpp"

namespace condense {

enum class SpaceKind { finite_ell_p, periodic_continuous, scalar };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& text);

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A concrete quasi-normed space.
///
/// finite_ell_p is a truncation of ell^p to coordinates 1..dimension. The
/// dimension is an Index because a run addresses coordinates through the
/// Cantor pairing of operator indices, which outgrows any machine integer.
/// periodic_continuous is C(T) with the sup norm, evaluated exactly on hump
/// sums (see quasi_norm). scalar is the real line.
class SpaceDescriptor {
 public:
  static SpaceDescriptor ell_p(double p, Index dimension);
  static SpaceDescriptor periodic(int grid_resolution = 4096);
  static SpaceDescriptor scalar();

  SpaceKind kind() const { return kind_; }
  // Exponent of the p-norm: p for ell^p, 1 for the normed kinds.
  double p() const { return p_; }
  const Index& dimension() const { return dimension_; }
  int grid_resolution() const { return grid_resolution_; }

  bool operator==(const SpaceDescriptor&) const = default;

 private:
  SpaceDescriptor() = default;

  SpaceKind kind_ = SpaceKind::scalar;
  double p_ = 1.0;
  Index dimension_ = 1;
  int grid_resolution_ = 4096;
};

// Sparse coefficient sequence. Absent coordinates are zero; stored values
// are never zero.
class SequencePoint {
 public:
  using Entries = std::map<Index, double>;

  SequencePoint() = default;
  static SequencePoint unit(const Index& coordinate, double value = 1.0);

  double operator[](const Index& coordinate) const;
  void set(const Index& coordinate, double value);
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const SequencePoint&) const = default;

 private:
  Entries entries_;
};

// amplitude * smoothed_sign(order, width, center - s): a clipped, mollified
// sign pattern of the Dirichlet kernel D_order seen from `center`.
struct Hump {
  double center = 0.0;
  double width = 0.0;
  double amplitude = 0.0;
  std::int64_t order = 0;

  double operator()(double s) const;
  bool operator==(const Hump&) const = default;
};

// Finite formal sum of humps. Kept canonical: humps sharing (order, center,
// width) are merged and zero amplitudes dropped, so x - x is exactly empty.
class HumpSum {
 public:
  HumpSum() = default;
  explicit HumpSum(std::vector<Hump> humps);

  double operator()(double s) const;
  const std::vector<Hump>& humps() const { return humps_; }
  // Every point where the sum can fail to be affine.
  std::vector<double> kinks() const;

  bool operator==(const HumpSum&) const = default;

 private:
  void canonicalize();
  std::vector<Hump> humps_;
};

class Point {
 public:
  using Storage = std::variant<SequencePoint, HumpSum, double>;

  Point() : value_(0.0) {}
  Point(SequencePoint s) : value_(std::move(s)) {}
  Point(HumpSum h) : value_(std::move(h)) {}
  explicit Point(double x) : value_(x) {}

  static Point zero(const SpaceDescriptor& space);

  SpaceKind kind() const;
  const Storage& storage() const { return value_; }

  const SequencePoint& sequence() const;
  const HumpSum& humps() const;
  double scalar() const;

  Point operator+(const Point& other) const;
  Point operator-(const Point& other) const;
  Point operator-() const { return scaled(-1.0); }
  Point scaled(double factor) const;

  bool operator==(const Point&) const = default;

 private:
  Storage value_;
};

inline Point operator*(double factor, const Point& x) { return x.scaled(factor); }

// Throws std::invalid_argument when the point's kind differs from the space,
// DimensionMismatch when a coordinate falls outside 1..dimension.
void require_member(const SpaceDescriptor& space, const Point& x);

// (sum |x_i|^p)^(1/p) for ell^p (computed scaled by max |x_i|, so a single
// nonzero coefficient returns exactly its magnitude); sup |x(t)| for the
// periodic kind; |x| for scalars.
//
// The periodic sup is taken over the uniform grid of grid_resolution points
// together with every kink of the hump sum. A hump sum is piecewise affine,
// so the maximum sits at a kink and the value is the true sup norm, up to
// rounding in the kink positions (about ulp(pi) / width, relative).
double quasi_norm(const SpaceDescriptor& space, const Point& x);

// 2^(1/p - 1) for ell^p, 1 for the normed kinds.
double modulus_of_concavity(const SpaceDescriptor& space);

bool ball_membership(const SpaceDescriptor& space, const Point& center, double radius,
                     const Point& y);

}  // namespace condense
