#pragma once

// Cell-level domain inference on top of the Horn engine.
//
// A catalogue holds cells (regions over which membership is constant, each
// with a discrete signature), a symmetric adjacency relation, Jost
// interfaces between adjacent cells, base facts (cells inside the tube by
// direct test) and Lorentz links (cell b is the image of tube cell a under
// a complex Lorentz element). Domain facts are then propagated as a Horn
// program:
//
//   -> in_tube(c)                                           base cells
//   in_tube(c) -> in_etube(c)
//   in_tube(a) & lorentz_link(a,b) -> in_etube(b)
//   in_etube(c) -> in_union(c)                              identity ordering
//   in_etube(orbit_pi(c)) -> in_union(c)                    each recorded pi
//   in_union(c) & adjacent(c,d) & jost_interface(c,d) -> in_union(d)

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wholo/domains.hpp"
#include "wholo/hornsat.hpp"
#include "wholo/permutation.hpp"

namespace wholo {

enum class CellLabel { Tube, Extended, Union, Outside };

inline std::string_view to_string(CellLabel l) {
  switch (l) {
    case CellLabel::Tube: return "tube";
    case CellLabel::Extended: return "extended";
    case CellLabel::Union: return "union";
    case CellLabel::Outside: return "outside";
  }
  return "outside";
}

class CellCatalogue {
 public:
  void add_cell(const std::string& id, std::vector<int> signature = {}) {
    if (!horn::valid_atom_name("in_tube(" + id + ")") || id.find(',') != std::string::npos) {
      throw std::invalid_argument("invalid cell id '" + id + "'");
    }
    if (!cells_.emplace(id, std::move(signature)).second) {
      throw std::invalid_argument("duplicate cell '" + id + "'");
    }
  }

  void add_adjacency(const std::string& a, const std::string& b) {
    require(a);
    require(b);
    adjacency_.insert({a, b});
    adjacency_.insert({b, a});
  }

  // Also records the adjacency.
  void add_jost_interface(const std::string& a, const std::string& b) {
    add_adjacency(a, b);
    jost_.insert({a, b});
    jost_.insert({b, a});
  }

  void add_base_fact(const std::string& c) {
    require(c);
    base_.insert(c);
  }

  void add_lorentz_link(const std::string& tube_cell, const std::string& image) {
    require(tube_cell);
    require(image);
    links_.insert({tube_cell, image});
  }

  bool contains(const std::string& c) const { return cells_.count(c) != 0; }
  void require(const std::string& c) const {
    if (!contains(c)) throw std::invalid_argument("unregistered cell '" + c + "'");
  }

  const std::map<std::string, std::vector<int>>& cells() const noexcept { return cells_; }
  const std::set<std::pair<std::string, std::string>>& adjacency() const noexcept { return adjacency_; }
  const std::set<std::pair<std::string, std::string>>& jost_interfaces() const noexcept { return jost_; }
  const std::set<std::string>& base_facts() const noexcept { return base_; }
  const std::set<std::pair<std::string, std::string>>& lorentz_links() const noexcept { return links_; }

 private:
  std::map<std::string, std::vector<int>> cells_;
  std::set<std::pair<std::string, std::string>> adjacency_;
  std::set<std::pair<std::string, std::string>> jost_;
  std::set<std::string> base_;
  std::set<std::pair<std::string, std::string>> links_;
};

// For each recorded permutation (keyed by its label), cell -> cell of the
// permuted configuration.
using PermutationOrbits = std::map<std::string, std::map<std::string, std::string>>;

namespace detail {
inline std::string atom(std::string_view pred, const std::string& c) { return std::string(pred) + "(" + c + ")"; }
inline std::string atom(std::string_view pred, const std::string& a, const std::string& b) {
  return std::string(pred) + "(" + a + "," + b + ")";
}
}  // namespace detail

inline horn::Formula build_domain_rules(const CellCatalogue& cat, const PermutationOrbits& orbits = {}) {
  using detail::atom;
  horn::Formula f;
  for (const auto& [c, sig] : cat.cells()) {
    f.intern(atom("in_tube", c));
    f.intern(atom("in_etube", c));
    f.intern(atom("in_union", c));
  }
  for (const auto& c : cat.base_facts()) f.add_fact(atom("in_tube", c));
  for (const auto& [c, sig] : cat.cells()) {
    f.add_rule({atom("in_tube", c)}, atom("in_etube", c));
    f.add_rule({atom("in_etube", c)}, atom("in_union", c));
  }
  for (const auto& [a, b] : cat.lorentz_links()) {
    const std::string link = atom("lorentz_link", a, b);
    f.add_fact(link);
    f.add_rule({atom("in_tube", a), link}, atom("in_etube", b));
  }
  for (const auto& [label, orbit] : orbits) {
    for (const auto& [c, image] : orbit) {
      cat.require(c);
      cat.require(image);
      f.add_rule({atom("in_etube", image)}, atom("in_union", c));
    }
  }
  for (const auto& [a, b] : cat.adjacency()) f.add_fact(atom("adjacent", a, b));
  for (const auto& [a, b] : cat.jost_interfaces()) f.add_fact(atom("jost_interface", a, b));
  for (const auto& [a, b] : cat.adjacency()) {
    f.add_rule({atom("in_union", a), atom("adjacent", a, b), atom("jost_interface", a, b)}, atom("in_union", b));
  }
  return f;
}

// Strongest derived fact per cell.
inline std::map<std::string, CellLabel> classify_cells(const CellCatalogue& cat, const PermutationOrbits& orbits = {}) {
  const horn::Formula f = build_domain_rules(cat, orbits);
  const auto model = horn::minimal_model(f);
  if (!model) throw std::logic_error("domain rules are goal-free and cannot be unsatisfiable");
  auto holds = [&](std::string_view pred, const std::string& c) {
    const auto id = f.find(detail::atom(pred, c));
    return id && model->contains(*id);
  };
  std::map<std::string, CellLabel> out;
  for (const auto& [c, sig] : cat.cells()) {
    CellLabel l = CellLabel::Outside;
    if (holds("in_tube", c)) l = CellLabel::Tube;
    else if (holds("in_etube", c)) l = CellLabel::Extended;
    else if (holds("in_union", c)) l = CellLabel::Union;
    out.emplace(c, l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// s = 2 catalogue from a family of configurations

// Arc-arrangement signature: the cyclic order of the arc centres, started
// at the largest gap, followed by the sign of the angular margin.
inline std::vector<int> arc_signature(const Configuration& c) {
  const ArcAnalysis a = arc_analysis_s2(c);
  if (a.degenerate) return {-1};
  std::vector<int> order(a.centres.size());
  std::iota(order.begin(), order.end(), 0);
  const double gap_end = a.theta + a.largest_gap / 2.0 - std::numbers::pi;
  auto key = [&](int i) {
    return std::fmod(a.centres[static_cast<std::size_t>(i)] - gap_end + 4.0 * std::numbers::pi + 1e-12,
                     2.0 * std::numbers::pi);
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
  order.push_back(a.angular_margin > 0.0 ? 1 : (a.angular_margin < 0.0 ? -1 : 0));
  return order;
}

struct S2Catalogue {
  CellCatalogue catalogue;
  PermutationOrbits orbits;
  std::vector<std::string> family_cells;  // one per input configuration, in order
};

// One cell per configuration and per permuted ordering of it; each cell that
// is extended-tube Inside gets a tube-image cell and a Lorentz link.
// Same-signature family cells are adjacent; two real Jost cells share a
// Jost interface.
inline S2Catalogue build_catalogue_s2(const std::vector<Configuration>& family, double eps = kDefaultEpsilon,
                                      int max_enumerate = 8) {
  S2Catalogue out;
  auto register_cell = [&](const std::string& id, const Configuration& c) {
    out.catalogue.add_cell(id, arc_signature(c));
    if (in_tube(c, eps).state == State::Inside) {
      out.catalogue.add_base_fact(id);
      return;
    }
    const Verdict e = in_extended_tube_s2(c, eps);
    if (e.state == State::Inside && e.certificate && e.certificate->lambda) {
      const std::string image = id + "@tube";
      const Configuration mapped = apply(s2_scaling(*e.certificate->lambda), c);
      out.catalogue.add_cell(image, arc_signature(mapped));
      if (in_tube(mapped, eps).state != State::Inside) {
        throw std::logic_error("extended-tube certificate failed to re-verify");
      }
      out.catalogue.add_base_fact(image);
      out.catalogue.add_lorentz_link(image, id);
    }
  };

  for (std::size_t k = 0; k < family.size(); ++k) {
    const Configuration& c = family[k];
    detail::require_s2(c, "build_catalogue_s2");
    const std::string id = "c" + std::to_string(k);
    out.family_cells.push_back(id);
    register_cell(id, c);
    if (c.size() > max_enumerate) continue;
    std::vector<int> order(static_cast<std::size_t>(c.size()));
    std::iota(order.begin(), order.end(), 1);
    while (std::next_permutation(order.begin(), order.end())) {
      std::string label = "p";
      for (int x : order) label += std::to_string(x);
      const std::string pid = id + "/" + label;
      register_cell(pid, permute_config(c, Permutation(order)));
      out.orbits[label][id] = pid;
    }
  }
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const auto& ida = out.family_cells[a];
      const auto& idb = out.family_cells[b];
      if (out.catalogue.cells().at(ida) != out.catalogue.cells().at(idb)) continue;
      const bool jost = family[a].is_real() && family[b].is_real() &&
                        is_jost_s2(family[a], eps).state == State::Inside &&
                        is_jost_s2(family[b], eps).state == State::Inside;
      if (jost) out.catalogue.add_jost_interface(ida, idb);
      else out.catalogue.add_adjacency(ida, idb);
    }
  }
  return out;
}

// Direct per-configuration label from the decision procedures.
inline CellLabel direct_label_s2(const Configuration& c, double eps = kDefaultEpsilon) {
  if (in_tube(c, eps).state == State::Inside) return CellLabel::Tube;
  if (in_extended_tube_s2(c, eps).state == State::Inside) return CellLabel::Extended;
  if (in_permuted_union_s2(c, eps).state == State::Inside) return CellLabel::Union;
  return CellLabel::Outside;
}

}  // namespace wholo
