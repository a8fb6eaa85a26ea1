#pragma once

// Membership tests for the tube T_m, the extended tube T'_m and Jost points.
//
// Tube: -Im xi_i lies in the open forward cone for every difference xi_i.
// Extended tube: the orbit of the tube under the proper complex Lorentz
// group. In s = 2 the orbit question is decided exactly. In light-cone
// coordinates the group acts as u -> lambda u, v -> v / lambda and the tube
// condition reads Im(lambda u_i) < 0, Im(v_i / lambda) < 0. |lambda| drops
// out, and every condition confines theta = arg lambda to an open arc of
// length pi. All arcs have the same length, so they intersect iff their
// centres leave a gap larger than pi somewhere on the circle; the largest
// gap G gives the angular margin (G - pi) / 2 and the certificate angle sits
// opposite the middle of that gap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wholo/geometry.hpp"
#include "wholo/lorentz.hpp"
#include "wholo/rng.hpp"

namespace wholo {

// Wrap to [-pi, pi).
inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta + std::numbers::pi, two_pi);
  if (t < 0.0) t += two_pi;
  t -= std::numbers::pi;
  return t >= std::numbers::pi ? -std::numbers::pi : t;
}

namespace detail {
inline void require_at_least_two_points(const Configuration& c, const char* what) {
  if (c.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least two points");
}
inline void require_s2(const Configuration& c, const char* what) {
  if (c.dimension() != 2) {
    throw std::invalid_argument(std::string(what) + ": defined for s = 2 only, got s = " +
                                std::to_string(c.dimension()));
  }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Tube

inline Verdict in_tube(const Configuration& c, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  detail::require_at_least_two_points(c, "in_tube");
  const Metric g = c.metric();
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& xi : differences(c)) {
    RealVector eta(-xi.components.imag());
    margin = std::min(margin, forward_cone_margin(eta, g));
  }
  return Verdict{.state = classify_margin(margin, eps), .margin = margin};
}

// Re-check a transform certificate: the transformed configuration must be
// tube-Inside.
inline bool verify_transform_certificate(const Configuration& c, const Certificate& cert,
                                         double eps = kDefaultEpsilon) {
  if (cert.lambda && cert.matrix) return false;
  std::optional<Configuration> mapped;
  try {
    if (cert.lambda) {
      if (c.dimension() != 2) return false;
      mapped = apply(s2_scaling(*cert.lambda), c);
    } else if (cert.matrix) {
      const Metric g = c.metric();
      const double scale = std::max(1.0, cert.matrix->cwiseAbs().maxCoeff());
      const LorentzTransform t(*cert.matrix, g, kLorentzTolerance * scale * scale * g.dimension());
      if (!t.is_proper()) return false;
      mapped = apply(t, c);
    } else {
      mapped = c;
    }
  } catch (const std::invalid_argument&) {
    return false;
  }
  return in_tube(*mapped, eps).state == State::Inside;
}

// ---------------------------------------------------------------------------
// Extended tube, s = 2

struct ArcAnalysis {
  // Some light-cone coordinate of some difference is exactly zero; the open
  // cone condition then fails for every lambda.
  bool degenerate = false;
  // Arc centres on [-pi, pi): for each difference, the u-arc then the v-arc.
  std::vector<double> centres;
  // Largest gap between cyclically consecutive centres.
  double largest_gap = 0.0;
  // (largest_gap - pi) / 2: half the length of the arc intersection when
  // positive, minus half the overlap deficit otherwise.
  double angular_margin = -std::numbers::pi / 2.0;
  // Midpoint of the intersection (meaningful when angular_margin > 0).
  double theta = 0.0;
};

inline std::vector<LightconeCoords> difference_lightcone_coords(const Configuration& c) {
  std::vector<LightconeCoords> w;
  for (const auto& xi : differences(c)) w.push_back(lightcone_coords(xi));
  return w;
}

inline ArcAnalysis arc_analysis_s2(const Configuration& c) {
  detail::require_s2(c, "arc_analysis_s2");
  detail::require_at_least_two_points(c, "arc_analysis_s2");
  ArcAnalysis a;
  for (const auto& [u, v] : difference_lightcone_coords(c)) {
    if (u == Complex(0.0) || v == Complex(0.0)) {
      a.degenerate = true;
      a.centres.clear();
      return a;
    }
    // Im(lambda u) < 0  <=>  theta in (-pi - arg u, -arg u)
    a.centres.push_back(wrap_angle(-std::numbers::pi / 2.0 - std::arg(u)));
    // Im(v / lambda) < 0  <=>  theta in (arg v, arg v + pi)
    a.centres.push_back(wrap_angle(std::numbers::pi / 2.0 + std::arg(v)));
  }
  std::vector<double> sorted = a.centres;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double best = -1.0;
  double gap_start = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double next = (k + 1 < n) ? sorted[k + 1] : sorted[0] + 2.0 * std::numbers::pi;
    const double gap = next - sorted[k];
    if (gap > best) {
      best = gap;
      gap_start = sorted[k];
    }
  }
  a.largest_gap = best;
  a.angular_margin = (best - std::numbers::pi) / 2.0;
  a.theta = wrap_angle(gap_start + best / 2.0 + std::numbers::pi);
  return a;
}

// Signed distance into the nearer spacelike light-cone quadrant, using real
// light-cone coordinates: max over sigma = +-1 of min_i min(sigma u_i, -sigma v_i).
inline double jost_quadrant_margin(const std::vector<LightconeCoords>& w) {
  double best = -std::numeric_limits<double>::infinity();
  for (double sigma : {1.0, -1.0}) {
    double q = std::numeric_limits<double>::infinity();
    for (const auto& [u, v] : w) q = std::min({q, sigma * u.real(), -sigma * v.real()});
    best = std::max(best, q);
  }
  return best;
}

namespace detail {
inline bool differences_are_real(const Configuration& c) {
  for (const auto& xi : differences(c)) {
    if ((xi.components.imag().array() != 0.0).any()) return false;
  }
  return true;
}
}  // namespace detail

// Exact s = 2 decision. The margin is angular for complex configurations;
// on the real slice (all differences exactly real) the arcs can only touch
// or coincide, and the margin is the Jost quadrant margin in real
// coordinates instead. Inside additionally requires the certificate
// lambda = e^{i theta} to map the configuration into the tube at the same
// epsilon; the margin is the smaller of the two. Tube-Inside input returns
// lambda = 1 with the tube margin.
inline Verdict in_extended_tube_s2(const Configuration& c, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  detail::require_s2(c, "in_extended_tube_s2");
  detail::require_at_least_two_points(c, "in_extended_tube_s2");
  // Tube points are certified by the identity, whatever the arc margin.
  if (const Verdict t = in_tube(c, eps); t.state == State::Inside) {
    return Verdict{.state = State::Inside, .margin = t.margin, .certificate = Certificate{.lambda = Complex(1.0)}};
  }
  const ArcAnalysis arcs = arc_analysis_s2(c);
  if (arcs.degenerate) return Verdict{.state = State::Outside, .margin = -std::numbers::pi / 2.0};

  const double base = detail::differences_are_real(c)
                          ? jost_quadrant_margin(difference_lightcone_coords(c))
                          : arcs.angular_margin;
  if (base <= eps) return Verdict{.state = classify_margin(base, eps), .margin = base};

  const Complex lambda = std::polar(1.0, arcs.theta);
  const double tube_margin = in_tube(apply(s2_scaling(lambda), c), eps).margin;
  const double margin = std::min(base, tube_margin);
  Verdict v{.state = classify_margin(margin, eps), .margin = margin};
  if (v.state == State::Inside) v.certificate = Certificate{.lambda = lambda};
  return v;
}

// ---------------------------------------------------------------------------
// Extended tube, general s (semi-decision)

struct SearchOptions {
  // Imaginary-rapidity grid per (0, k) plane.
  int grid_angles = 16;
  // Every `refine_every`-th random candidate perturbs the best so far.
  int refine_every = 4;
};

// Samples complex Lorentz elements: identity, then imaginary boosts on a
// grid in every (0, k) plane, then seeded random plane products, mixed with
// local perturbations of the best candidate. Sound for Inside; never claims
// Outside. The Unknown margin is the best tube margin reached.
inline Verdict in_extended_tube_search(const Configuration& c, int budget, std::uint64_t seed,
                                       double eps = kDefaultEpsilon, SearchOptions opts = {}) {
  require_positive_epsilon(eps);
  if (budget <= 0) throw std::invalid_argument("in_extended_tube_search: budget must be positive");
  detail::require_at_least_two_points(c, "in_extended_tube_search");
  const Metric g = c.metric();
  const int s = g.dimension();

  int used = 0;
  double best_margin = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd best = Eigen::MatrixXcd::Identity(s, s);
  std::optional<Verdict> found;

  auto try_candidate = [&](const Eigen::MatrixXcd& m) {
    ++used;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    Configuration mapped = apply(LorentzTransform(m, g, kLorentzTolerance * scale * scale * s), c);
    const Verdict t = in_tube(mapped, eps);
    if (t.margin > best_margin) {
      best_margin = t.margin;
      best = m;
    }
    if (t.state == State::Inside) {
      found = Verdict{.state = State::Inside, .margin = t.margin, .certificate = Certificate{.matrix = m}};
      return true;
    }
    return false;
  };

  if (try_candidate(Eigen::MatrixXcd::Identity(s, s))) return *found;

  for (int k = 1; k < s; ++k) {
    for (int a = 1; a < opts.grid_angles; ++a) {
      if (used >= budget) break;
      const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * a / opts.grid_angles;
      if (std::abs(phi) < 1e-15) continue;
      if (try_candidate(complex_rotation(g, 0, k, Complex(0.0, phi)).matrix())) return *found;
    }
  }

  for (std::uint64_t idx = 1; used < budget; ++idx) {
    std::mt19937_64 gen = substream(seed, idx);
    const bool refine = opts.refine_every > 0 && idx % static_cast<std::uint64_t>(opts.refine_every) == 0 &&
                        std::isfinite(best_margin);
    const double spread = refine ? 0.05 : 1.0;
    Eigen::MatrixXcd m = refine ? best : Eigen::MatrixXcd::Identity(s, s);
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) {
        Complex angle;
        if (i == 0) {
          angle = Complex(spread * uniform(gen, -1.5, 1.5), spread * uniform(gen, -std::numbers::pi, std::numbers::pi));
        } else {
          angle = Complex(spread * uniform(gen, -std::numbers::pi, std::numbers::pi), spread * uniform(gen, -1.0, 1.0));
        }
        m = m * complex_rotation(g, i, j, angle).matrix();
      }
    }
    if (try_candidate(m)) return *found;
  }
  return Verdict{.state = State::Unknown, .margin = best_margin};
}

// ---------------------------------------------------------------------------
// Jost points

// s = 2 quadrant test: all differences in one common open spacelike
// light-cone quadrant.
inline Verdict is_jost_s2(const Configuration& c, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  detail::require_s2(c, "is_jost_s2");
  detail::require_at_least_two_points(c, "is_jost_s2");
  for (const auto& z : c.points()) {
    if ((z.components.imag().array().abs() > eps).any()) {
      throw std::invalid_argument("is_jost_s2: configuration is not real");
    }
  }
  const double margin = jost_quadrant_margin(difference_lightcone_coords(c));
  return Verdict{.state = classify_margin(margin, eps), .margin = margin};
}

// Convex-combination cross-check for real configurations in any s: a real
// configuration is a Jost point iff every convex combination of its
// differences is spacelike. Deterministic candidates come first (each
// difference alone, and on each segment between two differences the point
// of largest square); then `samples` uniform random convex weights.
// Outside with the witness weights if some combination is not spacelike.
// Otherwise Unknown with positive margin: probably inside.
// The margin is minus the largest square seen.
inline Verdict jost_sampling(const Configuration& c, int samples, std::uint64_t seed,
                             double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  if (samples <= 0) throw std::invalid_argument("jost_sampling: samples must be positive");
  detail::require_at_least_two_points(c, "jost_sampling");
  for (const auto& z : c.points()) {
    if ((z.components.imag().array().abs() > eps).any()) {
      throw std::invalid_argument("jost_sampling: configuration is not real");
    }
  }
  const Metric g = c.metric();
  std::vector<RealVector> xi;
  for (const auto& d : differences(c)) xi.push_back(d.real());
  const std::size_t k = xi.size();

  double worst = -std::numeric_limits<double>::infinity();
  std::vector<double> worst_weights;
  RealVector comb{Eigen::VectorXd(g.dimension())};
  auto check = [&](const std::vector<double>& w) {
    comb.components.setZero();
    for (std::size_t i = 0; i < k; ++i) comb.components += w[i] * xi[i].components;
    const double sq = square(comb, g);
    if (sq > worst) {
      worst = sq;
      worst_weights = w;
    }
    return is_spacelike(comb, g, eps).state != State::Inside;
  };
  auto violation = [&]() {
    return Verdict{.state = State::Outside, .margin = -worst, .witness_weights = worst_weights};
  };

  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> w(k, 0.0);
    w[i] = 1.0;
    if (check(w)) return violation();
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      // square(t a + (1 - t) b) = Q(b) + 2 t (<a,b> - Q(b)) + t^2 Q(a - b)
      const double qb = square(xi[j], g);
      const double ab = minkowski_product(xi[i], xi[j], g);
      const double qd = square(RealVector(xi[i].components - xi[j].components), g);
      if (qd < 0.0) {
        const double t = std::clamp((qb - ab) / qd, 0.0, 1.0);
        std::vector<double> w(k, 0.0);
        w[i] = t;
        w[j] = 1.0 - t;
        if (check(w)) return violation();
      }
    }
  }
  // One stream for the whole sampling phase: reseeding per sample costs more
  // than the sample itself.
  std::mt19937_64 gen = substream(seed, 0);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  for (int n = 0; n < samples; ++n) {
    double total = 0.0;
    for (auto& x : w) total += (x = expo(gen));
    for (auto& x : w) x /= total;
    if (check(w)) return violation();
  }
  return Verdict{.state = State::Unknown, .margin = -worst};
}

// ---------------------------------------------------------------------------
// Two-point cut test and suborder projection

// One difference vector lies in the extended tube iff its square avoids the
// cut [0, inf). Inside when the square is farther than eps from the cut;
// on the cut, Outside when more than eps away from the branch point 0.
inline Verdict two_point_cut_test(const ComplexVector& xi, const Metric& g, double eps = kDefaultEpsilon) {
  require_positive_epsilon(eps);
  const Complex w = square(xi, g);
  const double dist = w.real() >= 0.0 ? std::abs(w.imag()) : std::abs(w);
  if (dist > eps) return Verdict{.state = State::Inside, .margin = dist};
  if (w.real() > eps) return Verdict{.state = State::Outside, .margin = -w.real()};
  return Verdict{.state = State::Boundary, .margin = dist};
}

// Points z_i .. z_{i+k-1} (one-based i) with their fields.
inline Configuration project_suborder(const Configuration& c, int i, int k) {
  if (k < 2 || i < 1 || i + k - 1 > c.size()) {
    throw std::invalid_argument("project_suborder: slice (i=" + std::to_string(i) + ", k=" +
                                std::to_string(k) + ") out of range for m = " + std::to_string(c.size()));
  }
  const auto first = c.points().begin() + (i - 1);
  const auto ffirst = c.fields().begin() + (i - 1);
  return Configuration(c.dimension(), std::vector<ComplexVector>(first, first + k),
                       std::vector<Statistics>(ffirst, ffirst + k));
}

}  // namespace wholo
