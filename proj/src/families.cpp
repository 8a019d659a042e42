#include "condense/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "condense/dirichlet.hpp"

namespace condense {

Index OperatorFamily::touched_coordinate_bound(const Index&, int) const { return 0; }

Index plan_dimension(const Index& n_max, int m_max) {
  return cantor_pair(std::max(n_max, Index(1)), Index(std::max(m_max, 1))) + 1;
}

namespace {

void require_row(int m) {
  if (m < 1) throw std::invalid_argument("row index m must be >= 1");
}

void require_index(const Index& n) {
  if (n < 1) throw std::invalid_argument("operator index n must be >= 1");
}

FamilyConstants constant_one_constants() {
  FamilyConstants k;
  k.C = [](int) { return 1.0; };
  k.L = [](int) { return 1.0; };
  k.N = [](int) { return Index(1); };
  k.c = [](const Index&, int, const Point&) { return 0.0; };
  k.f = [](const Index&, int, const Point&) { return 0.0; };
  return k;
}

// Shared shape of the sequence-space families: each T_nm reads the single
// coordinate pi(n, m).
class SequenceFamily : public OperatorFamily {
 public:
  SequenceFamily(std::string id, double p, Index dimension, FamilyConstants constants)
      : id_(std::move(id)),
        space_(SpaceDescriptor::ell_p(p, std::move(dimension))),
        constants_(std::move(constants)) {}

  std::string id() const override { return id_; }
  const SpaceDescriptor& domain() const override { return space_; }
  const FamilyConstants& constants() const override { return constants_; }

  Point norming_direction(const Index& n, int m) const override {
    return Point(SequencePoint::unit(coordinate(n, m)));
  }

  Index touched_coordinate_bound(const Index& n_max, int m_max) const override {
    return plan_dimension(n_max, m_max);
  }

 protected:
  Index coordinate(const Index& n, int m) const {
    require_index(n);
    require_row(m);
    return cantor_pair(n, Index(m));
  }

  double read(const Index& n, int m, const Point& x) const {
    require_member(space_, x);
    return x.sequence()[coordinate(n, m)];
  }

  std::string id_;
  SpaceDescriptor space_;
  FamilyConstants constants_;
};

class CoordinateFamily final : public SequenceFamily {
 public:
  CoordinateFamily(double p, Index dimension)
      : SequenceFamily("coordinate", p, std::move(dimension), constant_one_constants()) {}

  double image_norm(const Index& n, int m, const Point& x) const override {
    return to_double(n) * std::abs(read(n, m, x));
  }
  OpNorm op_norm(const Index& n, int m) const override {
    coordinate(n, m);
    return {to_double(n), true};
  }
  double efficiency(const Index&, int) const override { return 1.0; }
};

class NonlinearGalFamily final : public SequenceFamily {
 public:
  NonlinearGalFamily(double p, Index dimension)
      : SequenceFamily("nonlinear-gal", p, std::move(dimension), make_constants(p)) {}

  double image_norm(const Index& n, int m, const Point& x) const override {
    const double nd = to_double(n);
    return nd * std::abs(read(n, m, x)) + quasi_norm(space_, x) / nd;
  }
  OpNorm op_norm(const Index& n, int m) const override {
    coordinate(n, m);
    const double nd = to_double(n);
    return {nd + 1.0 / nd, true};
  }
  double efficiency(const Index& n, int) const override {
    const double nd = to_double(n);
    return nd / (nd + 1.0 / nd);
  }

 private:
  static FamilyConstants make_constants(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("nonlinear-gal family needs p in (0, 1)");
    const double K = std::pow(2.0, 1.0 / p - 1.0);
    FamilyConstants k = constant_one_constants();
    k.C = [K](int) { return K; };
    k.c = [](const Index& n, int, const Point&) {
      const double nd = to_double(n);
      return 1.0 / (nd * nd);
    };
    // f is evaluated on points whose membership the caller already checked.
    k.f = [K, p](const Index& n, int, const Point& x) {
      double scale = 0.0;
      for (const auto& [j, v] : x.sequence().entries()) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      double sum = 0.0;
      for (const auto& [j, v] : x.sequence().entries()) sum += std::pow(std::abs(v) / scale, p);
      return K * scale * std::pow(sum, 1.0 / p) / to_double(n);
    };
    return k;
  }
};

class BoundedFakeFamily final : public SequenceFamily {
 public:
  BoundedFakeFamily(double p, Index dimension)
      : SequenceFamily("bounded-fake", p, std::move(dimension), constant_one_constants()) {}

  double image_norm(const Index& n, int m, const Point& x) const override {
    return std::abs(read(n, m, x));
  }
  OpNorm op_norm(const Index& n, int m) const override {
    coordinate(n, m);
    return {1.0, true};
  }
  double efficiency(const Index&, int) const override { return 1.0; }
};

using Rule = boost::math::quadrature::gauss<double, 20>;

class FourierFamily final : public OperatorFamily {
 public:
  explicit FourierFamily(FourierOptions options)
      : options_(std::move(options)),
        space_(SpaceDescriptor::periodic(options_.grid_resolution)),
        constants_(constant_one_constants()) {
    if (options_.points.empty()) throw std::invalid_argument("fourier family needs target points");
    for (std::size_t i = 0; i < options_.points.size(); ++i) {
      const double t = options_.points[i];
      if (!std::isfinite(t) || t < -kPi || t >= kPi)
        throw std::invalid_argument("fourier target points must lie in [-pi, pi)");
      for (std::size_t j = 0; j < i; ++j)
        if (options_.points[j] == t) throw std::invalid_argument("duplicate fourier target point");
    }
    if (options_.quadrature_order < min_quadrature_order(0))
      throw std::invalid_argument("quadrature_order too small");
    if (options_.smoothing_width < 0.0) throw std::invalid_argument("smoothing_width must be >= 0");
    if (!(options_.efficiency > 0.0 && options_.efficiency <= 1.0))
      throw std::invalid_argument("efficiency must lie in (0, 1]");
  }

  std::string id() const override { return "fourier"; }
  const SpaceDescriptor& domain() const override { return space_; }
  const FamilyConstants& constants() const override { return constants_; }

  double image_norm(const Index& n, int m, const Point& x) const override {
    require_member(space_, x);
    return std::abs(fourier_partial_sum(order(n), point(m), x.humps(), options_.quadrature_order));
  }

  OpNorm op_norm(const Index& n, int m) const override {
    point(m);
    return {lebesgue_constant(order(n), options_.quadrature_order), false};
  }

  Point norming_direction(const Index& n, int m) const override {
    const std::int64_t k = order(n);
    const double t = point(m);
    const double target = options_.efficiency * lebesgue_constant(k, options_.quadrature_order);
    double width = options_.smoothing_width > 0.0 ? options_.smoothing_width
                                                  : default_smoothing_width(k);
    // Initial width plus up to four halvings.
    for (int attempt = 0; attempt <= 4; ++attempt, width *= 0.5) {
      HumpSum y({Hump{t, width, 1.0, k}});
      const double value = std::abs(fourier_partial_sum(k, t, y, options_.quadrature_order));
      if (value >= target) return Point(std::move(y));
    }
    throw std::runtime_error("fourier norming direction misses efficiency " +
                             std::to_string(options_.efficiency) + " at n = " + std::to_string(k));
  }

  double efficiency(const Index&, int) const override { return options_.efficiency; }

  std::optional<int> row_count() const override {
    return static_cast<int>(options_.points.size());
  }
  std::optional<Index> index_limit() const override {
    return Index(options_.quadrature_order / 2 - 1);
  }
  double tolerance() const override { return 1e-8; }

 private:
  std::int64_t order(const Index& n) const {
    if (n < 0) throw std::invalid_argument("operator index n must be >= 0");
    if (n > *index_limit())
      throw std::invalid_argument("quadrature_order " + std::to_string(options_.quadrature_order) +
                                  " too small for n = " + to_string(n));
    return n.convert_to<std::int64_t>();
  }
  double point(int m) const {
    require_row(m);
    if (m > static_cast<int>(options_.points.size()))
      throw std::invalid_argument("row " + std::to_string(m) + " exceeds the " +
                                  std::to_string(options_.points.size()) + " target points");
    return options_.points[static_cast<std::size_t>(m - 1)];
  }

  FourierOptions options_;
  SpaceDescriptor space_;
  FamilyConstants constants_;
};

class OverriddenFamily final : public OperatorFamily {
 public:
  OverriddenFamily(FamilyPtr base, FamilyConstants constants, std::string id)
      : base_(std::move(base)), constants_(std::move(constants)), id_(std::move(id)) {}

  std::string id() const override { return id_; }
  const SpaceDescriptor& domain() const override { return base_->domain(); }
  const FamilyConstants& constants() const override { return constants_; }
  double image_norm(const Index& n, int m, const Point& x) const override {
    return base_->image_norm(n, m, x);
  }
  OpNorm op_norm(const Index& n, int m) const override { return base_->op_norm(n, m); }
  Point norming_direction(const Index& n, int m) const override {
    return base_->norming_direction(n, m);
  }
  double efficiency(const Index& n, int m) const override { return base_->efficiency(n, m); }
  Index touched_coordinate_bound(const Index& n_max, int m_max) const override {
    return base_->touched_coordinate_bound(n_max, m_max);
  }
  std::optional<int> row_count() const override { return base_->row_count(); }
  std::optional<Index> index_limit() const override { return base_->index_limit(); }
  double tolerance() const override { return base_->tolerance(); }

 private:
  FamilyPtr base_;
  FamilyConstants constants_;
  std::string id_;
};

}  // namespace

FamilyPtr coordinate_family(double p, Index dimension) {
  return std::make_shared<CoordinateFamily>(p, std::move(dimension));
}

FamilyPtr nonlinear_gal_family(double p, Index dimension) {
  return std::make_shared<NonlinearGalFamily>(p, std::move(dimension));
}

FamilyPtr bounded_fake_family(double p, Index dimension) {
  return std::make_shared<BoundedFakeFamily>(p, std::move(dimension));
}

FamilyPtr fourier_family(FourierOptions options) {
  return std::make_shared<FourierFamily>(std::move(options));
}

FamilyPtr with_constants(FamilyPtr base, FamilyConstants constants, std::string id) {
  if (!base) throw std::invalid_argument("with_constants: null family");
  return std::make_shared<OverriddenFamily>(std::move(base), std::move(constants), std::move(id));
}

double fourier_partial_sum(std::int64_t n, double t, const HumpSum& f,
                           std::int64_t quadrature_order) {
  if (n < 0) throw std::invalid_argument("fourier_partial_sum: n must be >= 0");
  if (quadrature_order < min_quadrature_order(n))
    throw std::invalid_argument("quadrature_order " + std::to_string(quadrature_order) +
                                " too small for n = " + std::to_string(n));
  if (f.humps().empty()) return 0.0;

  // Panel edges in u: the lobes of D_n, refined, plus the kinks of
  // u -> f(t - u).
  std::vector<double> edges{-kPi};
  const int r = panels_per_lobe(n, quadrature_order);
  std::vector<double> lobe_edges{-kPi};
  for (double z : dirichlet_zeros(n)) lobe_edges.push_back(z);
  lobe_edges.push_back(kPi);
  for (std::size_t i = 0; i + 1 < lobe_edges.size(); ++i) {
    const double a = lobe_edges[i];
    const double step = (lobe_edges[i + 1] - a) / r;
    for (int s = 1; s <= r; ++s) edges.push_back(s == r ? lobe_edges[i + 1] : a + s * step);
  }
  for (double s : f.kinks()) edges.push_back(wrap_angle(t - s));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.back() < kPi) edges.push_back(kPi);

  auto integrand = [&](double u) { return f(t - u) * dirichlet_kernel(n, u); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) total += Rule::integrate(integrand, edges[i], edges[i + 1]);
  }
  return total / (2.0 * kPi);
}

}  // namespace condense
