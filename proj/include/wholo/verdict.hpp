#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wholo {

using Complex = std::complex<double>;

inline constexpr double kDefaultEpsilon = 1e-9;

enum class State { Inside, Outside, Boundary, Unknown };

inline std::string_view to_string(State s) {
  switch (s) {
    case State::Inside: return "inside";
    case State::Outside: return "outside";
    case State::Boundary: return "boundary";
    case State::Unknown: return "unknown";
  }
  return "unknown";
}

inline void require_positive_epsilon(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

// Inside if margin > eps, Outside if margin < -eps, Boundary in between.
inline State classify_margin(double margin, double eps) {
  if (margin > eps) return State::Inside;
  if (margin < -eps) return State::Outside;
  return State::Boundary;
}

// Re-checkable witness attached to an Inside verdict. In s = 2 the complex
// Lorentz element is stored as the scalar lambda of the light-cone action
// u -> lambda u, v -> v / lambda; otherwise as the full matrix. The
// permutation (one-based) is applied to the points before the transform.
struct Certificate {
  std::optional<Complex> lambda;
  std::optional<Eigen::MatrixXcd> matrix;
  std::optional<std::vector<int>> permutation;
};

struct Verdict {
  State state = State::Unknown;
  // Signed distance proxy; positive means inside.
  double margin = 0.0;
  std::optional<Certificate> certificate;
  // Convex weights of a violating combination (Jost sampling only).
  std::optional<std::vector<double>> witness_weights;
};

}  // namespace wholo
