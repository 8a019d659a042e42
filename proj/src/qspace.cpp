#include "condense/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "condense/dirichlet.hpp"

namespace condense {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::finite_ell_p: return "finite-ell-p";
    case SpaceKind::periodic_continuous: return "periodic-continuous";
    case SpaceKind::scalar: return "scalar";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(const std::string& text) {
  if (text == "finite-ell-p") return SpaceKind::finite_ell_p;
  if (text == "periodic-continuous") return SpaceKind::periodic_continuous;
  if (text == "scalar") return SpaceKind::scalar;
  throw std::invalid_argument("unknown space kind '" + text + "'");
}

SpaceDescriptor SpaceDescriptor::ell_p(double p, Index dimension) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("ell-p exponent must lie in (0, 1]");
  if (dimension < 1) throw std::invalid_argument("ell-p dimension must be >= 1");
  SpaceDescriptor s;
  s.kind_ = SpaceKind::finite_ell_p;
  s.p_ = p;
  s.dimension_ = std::move(dimension);
  return s;
}

SpaceDescriptor SpaceDescriptor::periodic(int grid_resolution) {
  if (grid_resolution < 16) throw std::invalid_argument("grid_resolution must be >= 16");
  SpaceDescriptor s;
  s.kind_ = SpaceKind::periodic_continuous;
  s.grid_resolution_ = grid_resolution;
  return s;
}

SpaceDescriptor SpaceDescriptor::scalar() { return SpaceDescriptor{}; }

SequencePoint SequencePoint::unit(const Index& coordinate, double value) {
  SequencePoint s;
  s.set(coordinate, value);
  return s;
}

double SequencePoint::operator[](const Index& coordinate) const {
  const auto it = entries_.find(coordinate);
  return it == entries_.end() ? 0.0 : it->second;
}

void SequencePoint::set(const Index& coordinate, double value) {
  if (value == 0.0)
    entries_.erase(coordinate);
  else
    entries_[coordinate] = value;
}

double Hump::operator()(double s) const {
  return amplitude * smoothed_sign(order, width, center - s);
}

HumpSum::HumpSum(std::vector<Hump> humps) : humps_(std::move(humps)) { canonicalize(); }

void HumpSum::canonicalize() {
  auto key = [](const Hump& h) { return std::tie(h.order, h.center, h.width); };
  std::stable_sort(humps_.begin(), humps_.end(),
                   [&](const Hump& a, const Hump& b) { return key(a) < key(b); });
  std::vector<Hump> merged;
  for (const Hump& h : humps_) {
    if (!merged.empty() && key(merged.back()) == key(h))
      merged.back().amplitude += h.amplitude;
    else
      merged.push_back(h);
  }
  std::erase_if(merged, [](const Hump& h) { return h.amplitude == 0.0; });
  humps_ = std::move(merged);
}

double HumpSum::operator()(double s) const {
  double total = 0.0;
  for (const Hump& h : humps_) total += h(s);
  return total;
}

std::vector<double> HumpSum::kinks() const {
  std::vector<double> out;
  for (const Hump& h : humps_) {
    // kink of u -> profile(u) at u0 means a kink of s -> profile(center - s)
    // at s = center - u0.
    for (double u : smoothed_sign_kinks(h.order, h.width)) out.push_back(wrap_angle(h.center - u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Point Point::zero(const SpaceDescriptor& space) {
  switch (space.kind()) {
    case SpaceKind::finite_ell_p: return Point(SequencePoint{});
    case SpaceKind::periodic_continuous: return Point(HumpSum{});
    case SpaceKind::scalar: return Point(0.0);
  }
  return Point(0.0);
}

SpaceKind Point::kind() const {
  switch (value_.index()) {
    case 0: return SpaceKind::finite_ell_p;
    case 1: return SpaceKind::periodic_continuous;
    default: return SpaceKind::scalar;
  }
}

const SequencePoint& Point::sequence() const {
  if (auto* s = std::get_if<SequencePoint>(&value_)) return *s;
  throw std::invalid_argument("point is not a sequence");
}

const HumpSum& Point::humps() const {
  if (auto* h = std::get_if<HumpSum>(&value_)) return *h;
  throw std::invalid_argument("point is not a hump sum");
}

double Point::scalar() const {
  if (auto* d = std::get_if<double>(&value_)) return *d;
  throw std::invalid_argument("point is not a scalar");
}

namespace {

void require_same_kind(const Point& a, const Point& b) {
  if (a.kind() != b.kind())
    throw std::invalid_argument("points of kinds " + to_string(a.kind()) + " and " +
                                to_string(b.kind()) + " cannot be combined");
}

}  // namespace

Point Point::operator+(const Point& other) const {
  require_same_kind(*this, other);
  switch (kind()) {
    case SpaceKind::finite_ell_p: {
      SequencePoint out = sequence();
      for (const auto& [j, v] : other.sequence().entries()) out.set(j, out[j] + v);
      return Point(std::move(out));
    }
    case SpaceKind::periodic_continuous: {
      auto humps = this->humps().humps();
      const auto& rhs = other.humps().humps();
      humps.insert(humps.end(), rhs.begin(), rhs.end());
      return Point(HumpSum(std::move(humps)));
    }
    case SpaceKind::scalar: return Point(scalar() + other.scalar());
  }
  return *this;
}

Point Point::operator-(const Point& other) const { return *this + other.scaled(-1.0); }

Point Point::scaled(double factor) const {
  switch (kind()) {
    case SpaceKind::finite_ell_p: {
      SequencePoint out;
      for (const auto& [j, v] : sequence().entries()) out.set(j, factor * v);
      return Point(std::move(out));
    }
    case SpaceKind::periodic_continuous: {
      auto humps = this->humps().humps();
      for (Hump& h : humps) h.amplitude *= factor;
      return Point(HumpSum(std::move(humps)));
    }
    case SpaceKind::scalar: return Point(factor * scalar());
  }
  return *this;
}

void require_member(const SpaceDescriptor& space, const Point& x) {
  if (x.kind() != space.kind())
    throw std::invalid_argument("point of kind " + to_string(x.kind()) +
                                " does not belong to a " + to_string(space.kind()) + " space");
  switch (space.kind()) {
    case SpaceKind::finite_ell_p:
      for (const auto& [j, v] : x.sequence().entries()) {
        if (j < 1 || j > space.dimension())
          throw DimensionMismatch("coordinate " + to_string(j) + " outside 1.." +
                                  to_string(space.dimension()));
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
      }
      break;
    case SpaceKind::periodic_continuous:
      for (const Hump& h : x.humps().humps()) {
        if (!std::isfinite(h.amplitude) || !std::isfinite(h.center) || !std::isfinite(h.width))
          throw std::invalid_argument("non-finite hump parameter");
        if (h.order < 0 || (h.order > 0 && !(h.width > 0.0)))
          throw std::invalid_argument("malformed hump");
      }
      break;
    case SpaceKind::scalar:
      if (!std::isfinite(x.scalar())) throw std::invalid_argument("non-finite coefficient");
      break;
  }
}

double quasi_norm(const SpaceDescriptor& space, const Point& x) {
  require_member(space, x);
  switch (space.kind()) {
    case SpaceKind::finite_ell_p: {
      const auto& entries = x.sequence().entries();
      double scale = 0.0;
      for (const auto& [j, v] : entries) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      const double p = space.p();
      double sum = 0.0;
      for (const auto& [j, v] : entries) sum += std::pow(std::abs(v) / scale, p);
      return scale * std::pow(sum, 1.0 / p);
    }
    case SpaceKind::periodic_continuous: {
      const HumpSum& f = x.humps();
      if (f.humps().empty()) return 0.0;
      double best = 0.0;
      const int g = space.grid_resolution();
      for (int i = 0; i < g; ++i) {
        const double t = -kPi + 2.0 * kPi * static_cast<double>(i) / g;
        best = std::max(best, std::abs(f(t)));
      }
      for (double t : f.kinks()) best = std::max(best, std::abs(f(t)));
      return best;
    }
    case SpaceKind::scalar: return std::abs(x.scalar());
  }
  return 0.0;
}

double modulus_of_concavity(const SpaceDescriptor& space) {
  if (space.kind() == SpaceKind::finite_ell_p) return std::pow(2.0, 1.0 / space.p() - 1.0);
  return 1.0;
}

bool ball_membership(const SpaceDescriptor& space, const Point& center, double radius,
                     const Point& y) {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball radius must be >= 0");
  return quasi_norm(space, center - y) <= radius;
}

}  // namespace condense
