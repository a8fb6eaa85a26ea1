#pragma once

// Real and complex Lorentz transformations in s dimensions.
//
// The complex Lorentz group is the complex orthogonal group of the metric:
// matrices with L^T G L = G (plain transpose, no conjugation). Elements of
// its identity component are built as finite products of per-plane
// transforms: complex boosts in (0, k) planes and complex rotations in
// (i, j) space planes.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "wholo/geometry.hpp"
#include "wholo/rng.hpp"

namespace wholo {

inline constexpr double kLorentzTolerance = 1e-10;

struct LorentzCheck {
  bool ok = false;
  double max_deviation = 0.0;
};

inline LorentzCheck verify_lorentz(const Eigen::MatrixXcd& m, const Metric& g, double tol = kLorentzTolerance) {
  const int s = g.dimension();
  if (m.rows() != s || m.cols() != s) {
    throw std::invalid_argument("verify_lorentz: expected a " + std::to_string(s) + "x" + std::to_string(s) +
                                " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const Eigen::MatrixXcd gm = g.matrix();
  const double dev = (m.transpose() * gm * m - gm).cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

class LorentzTransform {
 public:
  // Throws std::invalid_argument unless `m` satisfies the metric condition
  // within `tol`.
  LorentzTransform(Eigen::MatrixXcd m, const Metric& g, double tol = kLorentzTolerance)
      : matrix_(std::move(m)), tolerance_(tol) {
    const LorentzCheck check = verify_lorentz(matrix_, g, tol);
    if (!check.ok) {
      throw std::invalid_argument("matrix is not a Lorentz transformation (deviation " +
                                  std::to_string(check.max_deviation) + ")");
    }
    real_ = matrix_.imag().cwiseAbs().maxCoeff() <= tol;
    proper_ = std::abs(matrix_.determinant() - Complex(1.0)) <= tol;
    orthochronous_ = real_ && matrix_(0, 0).real() >= 1.0 - tol;
  }

  static LorentzTransform identity(const Metric& g) {
    return LorentzTransform(Eigen::MatrixXcd::Identity(g.dimension(), g.dimension()), g);
  }

  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  double tolerance() const noexcept { return tolerance_; }
  bool is_real() const noexcept { return real_; }
  bool is_proper() const noexcept { return proper_; }
  bool is_orthochronous() const noexcept { return orthochronous_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  ComplexVector apply(const ComplexVector& x) const {
    detail::require_same_dimension(x.dimension(), dimension(), "LorentzTransform::apply");
    return ComplexVector(matrix_ * x.components);
  }

  // Group product; tolerances add.
  LorentzTransform compose(const LorentzTransform& rhs, const Metric& g) const {
    return LorentzTransform(matrix_ * rhs.matrix_, g, tolerance_ + rhs.tolerance_);
  }

  // L^{-1} = G L^T G.
  LorentzTransform inverse(const Metric& g) const {
    const Eigen::MatrixXcd gm = g.matrix();
    return LorentzTransform(gm * matrix_.transpose() * gm, g, tolerance_);
  }

 private:
  Eigen::MatrixXcd matrix_;
  double tolerance_;
  bool real_ = false;
  bool proper_ = false;
  bool orthochronous_ = false;
};

inline LorentzCheck verify_lorentz(const LorentzTransform& t, const Metric& g, double tol = kLorentzTolerance) {
  return verify_lorentz(t.matrix(), g, tol);
}

// Transform in the (i, j) plane with complex parameter `angle`: a boost
// (cosh/sinh) when i = 0, a rotation (cos/sin) otherwise.
inline LorentzTransform complex_rotation(const Metric& g, int i, int j, Complex angle) {
  const int s = g.dimension();
  if (!(0 <= i && i < j && j < s)) {
    throw std::invalid_argument("complex_rotation: invalid plane (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") for s = " + std::to_string(s));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(s, s);
  if (i == 0) {
    const Complex ch = std::cosh(angle), sh = std::sinh(angle);
    m(0, 0) = ch;
    m(0, j) = sh;
    m(j, 0) = sh;
    m(j, j) = ch;
  } else {
    const Complex c = std::cos(angle), sn = std::sin(angle);
    m(i, i) = c;
    m(i, j) = -sn;
    m(j, i) = sn;
    m(j, j) = c;
  }
  // Entries grow like e^{|Im angle|}; scale the tolerance with them.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return LorentzTransform(std::move(m), g, kLorentzTolerance * scale * scale);
}

inline LorentzTransform real_boost(const Metric& g, int axis, double rapidity) {
  if (axis < 1 || axis >= g.dimension()) {
    throw std::invalid_argument("real_boost: axis " + std::to_string(axis) + " out of range 1.." +
                                std::to_string(g.dimension() - 1));
  }
  return complex_rotation(g, 0, axis, Complex(rapidity, 0.0));
}

// s = 2 complex Lorentz element acting on light-cone coordinates as
// u -> lambda u, v -> v / lambda.
inline LorentzTransform s2_scaling(Complex lambda) {
  if (lambda == Complex(0.0)) throw std::invalid_argument("s2_scaling: lambda must be nonzero");
  const Complex inv = 1.0 / lambda;
  const Complex a = (lambda + inv) / 2.0, b = (lambda - inv) / 2.0;
  Eigen::MatrixXcd m(2, 2);
  m << a, b, b, a;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return LorentzTransform(std::move(m), Metric(2), kLorentzTolerance * scale * scale);
}

inline Configuration apply(const LorentzTransform& t, const Configuration& c) {
  detail::require_same_dimension(t.dimension(), c.dimension(), "apply");
  std::vector<ComplexVector> pts;
  pts.reserve(c.points().size());
  for (const auto& z : c.points()) pts.push_back(t.apply(z));
  return Configuration(c.dimension(), std::move(pts), c.fields());
}

// Space rotation from a product of plane rotations with angles drawn from `gen`.
inline LorentzTransform random_space_rotation(const Metric& g, std::mt19937_64& gen) {
  LorentzTransform r = LorentzTransform::identity(g);
  for (int i = 1; i < g.dimension(); ++i) {
    for (int j = i + 1; j < g.dimension(); ++j) {
      const double angle = uniform(gen, -std::numbers::pi, std::numbers::pi);
      r = LorentzTransform(r.matrix() * complex_rotation(g, i, j, angle).matrix(), g);
    }
  }
  return r;
}

// Deterministic element of the restricted group: R1 * B(chi) * R2 with R1, R2
// space rotations and B a boost along axis 1 with |chi| <= max_rapidity.
// Every restricted transformation has this form.
inline LorentzTransform random_restricted(const Metric& g, std::uint64_t seed, double max_rapidity) {
  if (!(max_rapidity > 0.0)) throw std::invalid_argument("random_restricted: max_rapidity must be positive");
  std::mt19937_64 gen = substream(seed, 0);
  const LorentzTransform r1 = random_space_rotation(g, gen);
  const double chi = uniform(gen, -max_rapidity, max_rapidity);
  const LorentzTransform b = real_boost(g, 1, chi);
  const LorentzTransform r2 = random_space_rotation(g, gen);
  Eigen::MatrixXcd m = r1.matrix() * b.matrix() * r2.matrix();
  // Products of real matrices carry no imaginary rounding; drop the zeros.
  m = m.real().cast<Complex>();
  return LorentzTransform(std::move(m), g);
}

}  // namespace wholo
