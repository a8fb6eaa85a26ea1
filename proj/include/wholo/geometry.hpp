#pragma once

// Complexified Minkowski space in s dimensions: vectors, the invariant
// product, cone and spacelike tests, difference and light-cone coordinates.
//
// Component 0 is time; the metric is diag(+1, -1, ..., -1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wholo/verdict.hpp"

namespace wholo {

class Metric {
 public:
  explicit Metric(int s) : s_(s) {
    if (s < 2) {
      throw std::invalid_argument("metric dimension must be >= 2, got " + std::to_string(s));
    }
  }

  int dimension() const noexcept { return s_; }

  // Diagonal entry g_{mu mu}.
  double sign(int mu) const noexcept { return mu == 0 ? time_sign_ : -time_sign_; }

  Eigen::MatrixXcd matrix() const {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(s_, s_);
    for (int mu = 0; mu < s_; ++mu) g(mu, mu) = sign(mu);
    return g;
  }

  // Fault-injection hook for the self-test harness: a metric with the
  // signature reversed. Every cone test run against it must fail.
  Metric with_flipped_signature() const {
    Metric m = *this;
    m.time_sign_ = -time_sign_;
    return m;
  }

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  int s_;
  double time_sign_ = 1.0;
};

struct RealVector {
  Eigen::VectorXd components;

  RealVector() = default;
  explicit RealVector(Eigen::VectorXd c) : components(std::move(c)) {}
  RealVector(std::initializer_list<double> c) : components(static_cast<Eigen::Index>(c.size())) {
    Eigen::Index i = 0;
    for (double x : c) components(i++) = x;
  }

  int dimension() const noexcept { return static_cast<int>(components.size()); }
  double operator[](int mu) const { return components(mu); }
  double& operator[](int mu) { return components(mu); }

  friend bool operator==(const RealVector& a, const RealVector& b) {
    return a.components.size() == b.components.size() && a.components == b.components;
  }
};

struct ComplexVector {
  Eigen::VectorXcd components;

  ComplexVector() = default;
  explicit ComplexVector(Eigen::VectorXcd c) : components(std::move(c)) {}
  ComplexVector(std::initializer_list<Complex> c) : components(static_cast<Eigen::Index>(c.size())) {
    Eigen::Index i = 0;
    for (Complex x : c) components(i++) = x;
  }
  static ComplexVector from_real(const RealVector& x) {
    return ComplexVector(x.components.cast<Complex>());
  }

  int dimension() const noexcept { return static_cast<int>(components.size()); }
  Complex operator[](int mu) const { return components(mu); }
  Complex& operator[](int mu) { return components(mu); }

  RealVector real() const { return RealVector(components.real()); }
  RealVector imag() const { return RealVector(components.imag()); }

  ComplexVector operator-(const ComplexVector& o) const { return ComplexVector(components - o.components); }
  ComplexVector operator+(const ComplexVector& o) const { return ComplexVector(components + o.components); }
  ComplexVector operator-() const { return ComplexVector(-components); }
  ComplexVector operator*(Complex a) const { return ComplexVector(components * a); }

  friend bool operator==(const ComplexVector& a, const ComplexVector& b) {
    return a.components.size() == b.components.size() && a.components == b.components;
  }
};

enum class Statistics { Bose, Fermi };

inline std::string_view to_string(Statistics f) { return f == Statistics::Bose ? "bose" : "fermi"; }

// An ordered list of m complex points with their field statistics. This is
// the argument z = (z_1, ..., z_m) of an m-point function.
class Configuration {
 public:
  Configuration(int s, std::vector<ComplexVector> points, std::vector<Statistics> fields)
      : s_(s), points_(std::move(points)), fields_(std::move(fields)) {
    if (s < 2) throw std::invalid_argument("configuration dimension must be >= 2");
    if (points_.empty()) throw std::invalid_argument("configuration needs at least one point");
    if (fields_.size() != points_.size()) {
      throw std::invalid_argument("fields length " + std::to_string(fields_.size()) +
                                  " does not match point count " + std::to_string(points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dimension() != s) {
        throw std::invalid_argument("point " + std::to_string(i + 1) + " has dimension " +
                                    std::to_string(points_[i].dimension()) + ", expected " +
                                    std::to_string(s));
      }
    }
  }

  // All-Bose configuration.
  Configuration(int s, std::vector<ComplexVector> points)
      : Configuration(s, points, std::vector<Statistics>(points.size(), Statistics::Bose)) {}

  // Real configuration: z_i = x_i.
  static Configuration from_real(int s, const std::vector<RealVector>& xs) {
    std::vector<ComplexVector> pts;
    pts.reserve(xs.size());
    for (const auto& x : xs) pts.push_back(ComplexVector::from_real(x));
    return Configuration(s, std::move(pts));
  }

  int dimension() const noexcept { return s_; }
  int size() const noexcept { return static_cast<int>(points_.size()); }
  long long function_index() const noexcept { return static_cast<long long>(s_) * size(); }
  Metric metric() const { return Metric(s_); }

  const std::vector<ComplexVector>& points() const noexcept { return points_; }
  const std::vector<Statistics>& fields() const noexcept { return fields_; }
  const ComplexVector& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }

  bool is_real() const {
    return std::all_of(points_.begin(), points_.end(),
                       [](const ComplexVector& z) { return (z.components.imag().array() == 0.0).all(); });
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int s_;
  std::vector<ComplexVector> points_;
  std::vector<Statistics> fields_;
};

// ---------------------------------------------------------------------------
// Products

namespace detail {
inline void require_same_dimension(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}
}  // namespace detail

inline Complex minkowski_product(const ComplexVector& x, const ComplexVector& y, const Metric& g) {
  detail::require_same_dimension(x.dimension(), y.dimension(), "minkowski_product");
  detail::require_same_dimension(x.dimension(), g.dimension(), "minkowski_product");
  Complex acc = 0.0;
  for (int mu = 0; mu < g.dimension(); ++mu) acc += g.sign(mu) * x[mu] * y[mu];
  return acc;
}

inline double minkowski_product(const RealVector& x, const RealVector& y, const Metric& g) {
  detail::require_same_dimension(x.dimension(), y.dimension(), "minkowski_product");
  detail::require_same_dimension(x.dimension(), g.dimension(), "minkowski_product");
  double acc = 0.0;
  for (int mu = 0; mu < g.dimension(); ++mu) acc += g.sign(mu) * x[mu] * y[mu];
  return acc;
}

inline Complex square(const ComplexVector& x, const Metric& g) { return minkowski_product(x, x, g); }
inline double square(const RealVector& x, const Metric& g) { return minkowski_product(x, x, g); }

// margin = min(x^0, x.x); Inside iff margin > eps.
inline double forward_cone_margin(const RealVector& x, const Metric& g) {
  detail::require_same_dimension(x.dimension(), g.dimension(), "forward cone test");
  return std::min(g.sign(0) * x[0], square(x, g));
}

inline Verdict in_open_forward_cone(const RealVector& x, const Metric& g, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  const double margin = forward_cone_margin(x, g);
  return Verdict{.state = classify_margin(margin, eps), .margin = margin};
}

// margin = -x.x; Inside iff the vector is strictly spacelike.
inline Verdict is_spacelike(const RealVector& x, const Metric& g, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  const double margin = -square(x, g);
  return Verdict{.state = classify_margin(margin, eps), .margin = margin};
}

// xi_i = z_i - z_{i+1}, i = 1..m-1.
inline std::vector<ComplexVector> differences(const Configuration& c) {
  if (c.size() < 2) throw std::invalid_argument("differences need at least two points");
  std::vector<ComplexVector> xi;
  xi.reserve(static_cast<std::size_t>(c.size() - 1));
  for (int i = 0; i + 1 < c.size(); ++i) xi.push_back(c.point(i) - c.point(i + 1));
  return xi;
}

struct LightconeCoords {
  Complex u;
  Complex v;
};

// s = 2 only: u = x^0 + x^1, v = x^0 - x^1, so that u v = x.x.
inline LightconeCoords lightcone_coords(const ComplexVector& x) {
  if (x.dimension() != 2) {
    throw std::invalid_argument("light-cone coordinates are defined for s = 2 only");
  }
  return {x[0] + x[1], x[0] - x[1]};
}

inline ComplexVector from_lightcone(const LightconeCoords& w) {
  return ComplexVector{(w.u + w.v) / 2.0, (w.u - w.v) / 2.0};
}

}  // namespace wholo
