#pragma once

// Brute-force oracles and configuration generators for tests and the
// self-test harness. Nothing here calls the decision procedures it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "wholo/geometry.hpp"
#include "wholo/rng.hpp"

namespace wholo::testing {

// ---------------------------------------------------------------------------
// theta-grid oracle for the s = 2 extended tube

struct GridOracle {
  bool admissible = false;
  double theta = 0.0;
  double depth = -1.0;  // max over tested theta of the normalised tube depth
};

namespace detail {

struct LightPair {
  Complex u, v;
};

inline std::vector<LightPair> raw_lightcone(const Configuration& c) {
  std::vector<LightPair> out;
  for (int i = 0; i + 1 < c.size(); ++i) {
    const Complex x0 = c.point(i)[0] - c.point(i + 1)[0];
    const Complex x1 = c.point(i)[1] - c.point(i + 1)[1];
    out.push_back({x0 + x1, x0 - x1});
  }
  return out;
}

// Unit light-cone coordinates; a zero coordinate is kept as 0 and fails every theta.
inline std::vector<LightPair> normalised(const std::vector<LightPair>& w) {
  std::vector<LightPair> out;
  for (const auto& [u, v] : w) {
    out.push_back({std::abs(u) > 0 ? u / std::abs(u) : Complex(0.0), std::abs(v) > 0 ? v / std::abs(v) : Complex(0.0)});
  }
  return out;
}

// min over conditions of -Im(lambda u)/|u|, -Im(v/lambda)/|v| at lambda = e^{i theta},
// for pairs already passed through normalised().
inline double depth(const std::vector<LightPair>& unit, double theta) {
  const Complex lam = std::polar(1.0, theta);
  double d = 1.0;
  for (const auto& [u, v] : unit) {
    const double du = u != Complex(0.0) ? -(lam * u).imag() : -1.0;
    const double dv = v != Complex(0.0) ? -(v * std::conj(lam)).imag() : -1.0;
    d = std::min({d, du, dv});
  }
  return d;
}

}  // namespace detail

// Evaluates the tube condition on the lambda-image of `c` at `points`
// equally spaced angles, then refines each local maximum of the grid by
// golden-section search within one grid step.
inline GridOracle theta_grid_oracle(const Configuration& c, int points = 10000) {
  const auto w = detail::normalised(detail::raw_lightcone(c));
  const double h = 2.0 * std::numbers::pi / points;
  std::vector<double> values(static_cast<std::size_t>(points));
  GridOracle best;
  for (int k = 0; k < points; ++k) {
    const double theta = -std::numbers::pi + k * h;
    values[static_cast<std::size_t>(k)] = detail::depth(w, theta);
    if (values[static_cast<std::size_t>(k)] > best.depth) best = {false, theta, values[static_cast<std::size_t>(k)]};
  }
  for (int k = 0; k < points; ++k) {
    const double here = values[static_cast<std::size_t>(k)];
    const double left = values[static_cast<std::size_t>((k + points - 1) % points)];
    const double right = values[static_cast<std::size_t>((k + 1) % points)];
    if (here < left || here < right || here < -2.0 * h) continue;
    double a = -std::numbers::pi + (k - 1) * h, b = -std::numbers::pi + (k + 1) * h;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
      const double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      if (detail::depth(w, x1) < detail::depth(w, x2)) a = x1;
      else b = x2;
    }
    const double theta = (a + b) / 2.0;
    const double d = detail::depth(w, theta);
    if (d > best.depth) best = {false, theta, d};
  }
  best.admissible = best.depth > 0.0;
  return best;
}

// ---------------------------------------------------------------------------
// Horn truth tables over bitmask assignments (up to 30 atoms)

struct MaskClause {
  std::uint32_t body = 0;
  int head = -1;  // -1 = FALSE
};

inline bool satisfies(const std::vector<MaskClause>& f, std::uint32_t a) {
  for (const auto& c : f) {
    if ((a & c.body) == c.body && (c.head < 0 || !(a >> c.head & 1u))) return false;
  }
  return true;
}

struct TruthTable {
  bool satisfiable = false;
  // Intersection of all satisfying assignments.
  std::uint32_t common = 0;
};

inline TruthTable truth_table(const std::vector<MaskClause>& f, int atoms) {
  TruthTable t;
  t.common = atoms >= 32 ? ~0u : ((1u << atoms) - 1u);
  const std::uint64_t total = std::uint64_t{1} << atoms;
  for (std::uint64_t a = 0; a < total; ++a) {
    if (satisfies(f, static_cast<std::uint32_t>(a))) {
      t.satisfiable = true;
      t.common &= static_cast<std::uint32_t>(a);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Statistics sign by adjacent transpositions

// Bubble-sorts the sequence of original point indices back to identity,
// counting swaps of two fermions.
inline int sign_by_adjacent_transpositions(const std::vector<bool>& fermi, std::vector<int> seq) {
  int sign = 1;
  for (std::size_t pass = 0; pass < seq.size(); ++pass) {
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      if (seq[k] > seq[k + 1]) {
        if (fermi[static_cast<std::size_t>(seq[k] - 1)] && fermi[static_cast<std::size_t>(seq[k + 1] - 1)]) sign = -sign;
        std::swap(seq[k], seq[k + 1]);
      }
    }
  }
  return sign;
}

// ---------------------------------------------------------------------------
// Generators

inline ComplexVector random_complex_vector(std::mt19937_64& gen, int s, double mag) {
  ComplexVector z{Eigen::VectorXcd(s)};
  for (int mu = 0; mu < s; ++mu) z[mu] = Complex(uniform(gen, -mag, mag), uniform(gen, -mag, mag));
  return z;
}

inline RealVector random_real_vector(std::mt19937_64& gen, int s, double mag) {
  RealVector x{Eigen::VectorXd(s)};
  for (int mu = 0; mu < s; ++mu) x[mu] = uniform(gen, -mag, mag);
  return x;
}

inline RealVector random_forward_timelike(std::mt19937_64& gen, int s, double mag) {
  RealVector x = random_real_vector(gen, s, mag);
  double spatial = 0.0;
  for (int mu = 1; mu < s; ++mu) spatial += x[mu] * x[mu];
  x[0] = std::sqrt(spatial) + uniform(gen, 0.05, mag);
  return x;
}

inline Configuration from_differences(int s, const ComplexVector& start, const std::vector<ComplexVector>& xi) {
  std::vector<ComplexVector> pts{start};
  for (const auto& d : xi) pts.push_back(pts.back() - d);
  return Configuration(s, std::move(pts));
}

inline Configuration random_complex_config(std::mt19937_64& gen, int s, int m, double mag) {
  std::vector<ComplexVector> pts;
  for (int i = 0; i < m; ++i) pts.push_back(random_complex_vector(gen, s, mag));
  return Configuration(s, std::move(pts));
}

inline Configuration random_real_config(std::mt19937_64& gen, int s, int m, double mag) {
  std::vector<RealVector> pts;
  for (int i = 0; i < m; ++i) pts.push_back(random_real_vector(gen, s, mag));
  return Configuration::from_real(s, pts);
}

// Tube-interior configuration: -Im xi_i forward timelike, real parts free.
inline Configuration random_tube_config(std::mt19937_64& gen, int s, int m, double mag) {
  std::vector<ComplexVector> xi;
  for (int i = 0; i + 1 < m; ++i) {
    const RealVector re = random_real_vector(gen, s, mag);
    const RealVector eta = random_forward_timelike(gen, s, mag / 2.0);
    xi.emplace_back(Eigen::VectorXcd(re.components.cast<Complex>() - Complex(0.0, 1.0) * eta.components.cast<Complex>()));
  }
  return from_differences(s, random_complex_vector(gen, s, mag), xi);
}

// s = 2 real configuration whose differences all lie in one spacelike wedge.
inline Configuration random_jost_config_s2(std::mt19937_64& gen, int m, double mag) {
  const double sigma = uniform(gen, 0.0, 1.0) < 0.5 ? 1.0 : -1.0;
  std::vector<ComplexVector> xi;
  for (int i = 0; i + 1 < m; ++i) {
    const double u = sigma * uniform(gen, 0.01, mag), v = -sigma * uniform(gen, 0.01, mag);
    xi.push_back(ComplexVector{Complex((u + v) / 2.0), Complex((u - v) / 2.0)});
  }
  return from_differences(2, ComplexVector::from_real(random_real_vector(gen, 2, mag)), xi);
}

}  // namespace wholo::testing
