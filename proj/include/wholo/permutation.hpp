#pragma once

// Permuted extended tubes and their union.
//
// Microcausality lets an m-point function continue from the extended tube
// of each ordering of its points to the union over all orderings. A
// permutation acts on the points, so the permuted differences are signed
// sums of the original ones. Membership in the union is decided by
// exhaustive enumeration for small m, and otherwise by guessing candidate
// sequences, discarding non-permutations, and verifying each survivor with
// the s = 2 arc test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wholo/domains.hpp"
#include "wholo/geometry.hpp"
#include "wholo/rng.hpp"

namespace wholo {

// True iff `candidate` is a bijection on {1..m}. O(m).
inline bool verify_permutation(const std::vector<int>& candidate, int m) {
  if (m < 0 || candidate.size() != static_cast<std::size_t>(m)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int x : candidate) {
    if (x < 1 || x > m || seen[static_cast<std::size_t>(x - 1)]) return false;
    seen[static_cast<std::size_t>(x - 1)] = true;
  }
  return true;
}

// One-based permutation of {1..m}; k -> image(k).
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    if (!verify_permutation(mapping_, static_cast<int>(mapping_.size()))) {
      throw std::invalid_argument("not a permutation");
    }
  }

  static Permutation identity(int m) {
    std::vector<int> id(static_cast<std::size_t>(m));
    std::iota(id.begin(), id.end(), 1);
    return Permutation(std::move(id));
  }

  int size() const noexcept { return static_cast<int>(mapping_.size()); }
  int image(int k) const { return mapping_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<int>& one_based() const noexcept { return mapping_; }
  bool is_identity() const { return *this == identity(size()); }

  // (this o rhs)(k) = this(rhs(k)).
  Permutation compose(const Permutation& rhs) const {
    if (rhs.size() != size()) throw std::invalid_argument("compose: length mismatch");
    std::vector<int> out(mapping_.size());
    for (int k = 1; k <= size(); ++k) out[static_cast<std::size_t>(k - 1)] = image(rhs.image(k));
    return Permutation(std::move(out));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

// Point k of the result is point pi(k) of `c`; fields travel with points.
inline Configuration permute_config(const Configuration& c, const Permutation& pi) {
  if (pi.size() != c.size()) {
    throw std::invalid_argument("permute_config: permutation length " + std::to_string(pi.size()) +
                                " does not match m = " + std::to_string(c.size()));
  }
  std::vector<ComplexVector> pts;
  std::vector<Statistics> fields;
  for (int k = 1; k <= pi.size(); ++k) {
    pts.push_back(c.point(pi.image(k) - 1));
    fields.push_back(c.fields()[static_cast<std::size_t>(pi.image(k) - 1)]);
  }
  return Configuration(c.dimension(), std::move(pts), std::move(fields));
}

// (-1)^k, k = number of pairs of Fermi points whose relative order pi reverses.
inline int statistics_sign(const std::vector<Statistics>& fields, const Permutation& pi) {
  if (fields.size() != static_cast<std::size_t>(pi.size())) {
    throw std::invalid_argument("statistics_sign: length mismatch");
  }
  auto fermi = [&](int point) { return fields[static_cast<std::size_t>(point - 1)] == Statistics::Fermi; };
  int inversions = 0;
  for (int a = 1; a <= pi.size(); ++a) {
    if (!fermi(pi.image(a))) continue;
    for (int b = a + 1; b <= pi.size(); ++b) {
      if (fermi(pi.image(b)) && pi.image(a) > pi.image(b)) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// Re-check a (permutation, transform) certificate against `c`.
inline bool verify_certificate(const Configuration& c, const Certificate& cert, double eps = kDefaultEpsilon) {
  if (!cert.permutation) return verify_transform_certificate(c, cert, eps);
  if (!verify_permutation(*cert.permutation, c.size())) return false;
  Certificate transform_only = cert;
  transform_only.permutation.reset();
  return verify_transform_certificate(permute_config(c, Permutation(*cert.permutation)), transform_only, eps);
}

namespace detail {
inline Verdict with_permutation(Verdict v, const Permutation& pi) {
  if (v.certificate) v.certificate->permutation = pi.one_based();
  return v;
}
}  // namespace detail

// Uniform candidate sequences in {1..m}^m, most of which are not permutations.
struct UniformSequenceGenerator {
  std::vector<int> operator()(std::mt19937_64& gen, int m) const {
    std::uniform_int_distribution<int> pick(1, m);
    std::vector<int> out(static_cast<std::size_t>(m));
    for (auto& x : out) x = pick(gen);
    return out;
  }
};

// Guess-and-verify: draw `guesses` candidate sequences, keep those that are
// permutations, verify each with the arc test. Inside on the first success;
// otherwise Unknown. Never Outside.
template <typename Generator = UniformSequenceGenerator>
Verdict guess_and_verify(const Configuration& c, int guesses, std::uint64_t seed, double eps = kDefaultEpsilon,
                         Generator generate = {}) {
  require_positive_epsilon(eps);
  if (guesses <= 0) throw std::invalid_argument("guess_and_verify: guesses must be positive");
  detail::require_s2(c, "guess_and_verify");
  double best = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < guesses; ++n) {
    std::mt19937_64 gen = substream(seed, static_cast<std::uint64_t>(n));
    std::vector<int> candidate = generate(gen, c.size());
    if (!verify_permutation(candidate, c.size())) continue;
    const Permutation pi(std::move(candidate));
    Verdict v = in_extended_tube_s2(permute_config(c, pi), eps);
    if (v.state == State::Inside) return detail::with_permutation(std::move(v), pi);
    best = std::max(best, v.margin);
  }
  return Verdict{.state = State::Unknown, .margin = std::isfinite(best) ? best : 0.0};
}

struct UnionOptions {
  int max_enumerate = 8;
  // Used only when m > max_enumerate.
  int guesses = 1000;
  std::uint64_t seed = 0;
};

// Union of permuted extended tubes, s = 2. Exhaustive over all m! orderings
// in lexicographic order when m <= max_enumerate (first success wins);
// Outside only after every ordering was Outside.
inline Verdict in_permuted_union_s2(const Configuration& c, double eps = kDefaultEpsilon, UnionOptions opts = {}) {
  require_positive_epsilon(eps);
  detail::require_s2(c, "in_permuted_union_s2");
  detail::require_at_least_two_points(c, "in_permuted_union_s2");
  if (c.size() > opts.max_enumerate) {
    return guess_and_verify(c, opts.guesses, opts.seed, eps);
  }
  std::vector<int> order(static_cast<std::size_t>(c.size()));
  std::iota(order.begin(), order.end(), 1);
  double best = -std::numeric_limits<double>::infinity();
  do {
    const Permutation pi(order);
    Verdict v = in_extended_tube_s2(permute_config(c, pi), eps);
    if (v.state == State::Inside) return detail::with_permutation(std::move(v), pi);
    best = std::max(best, v.margin);
  } while (std::next_permutation(order.begin(), order.end()));
  return Verdict{.state = classify_margin(best, eps), .margin = best};
}

}  // namespace wholo
