#pragma once

// Horn-clause satisfiability with least-model semantics.
//
// A clause is body -> head with at most one positive literal: the head is an
// atom, or FALSE for a goal clause. The least model is computed by forward
// chaining with one unsatisfied-body counter per clause, linear in the total
// number of literals.
//
// Text format, one clause per line:
//   a & b -> c      rule
//   -> c            fact
//   a -> FALSE      goal
//   # comment

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wholo::horn {

using AtomId = std::uint32_t;

struct Clause {
  std::vector<AtomId> body;  // sorted, distinct
  std::optional<AtomId> head;  // nullopt = FALSE
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline bool valid_atom_name(std::string_view name) {
  if (name.empty() || name == "FALSE") return false;
  if (name.find("->") != std::string_view::npos) return false;
  return std::none_of(name.begin(), name.end(), [](char ch) {
    return ch == '&' || ch == '|' || ch == '#' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
  });
}

class Formula {
 public:
  AtomId intern(std::string_view name) {
    if (!valid_atom_name(name)) throw std::invalid_argument("invalid atom name '" + std::string(name) + "'");
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    const auto id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  // Empty formula with atoms x0 .. x{n-1} registered as ids 0 .. n-1.
  static Formula with_atoms(std::size_t n) {
    Formula f;
    for (std::size_t i = 0; i < n; ++i) f.intern("x" + std::to_string(i));
    return f;
  }

  std::optional<AtomId> find(std::string_view name) const {
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    return std::nullopt;
  }
  const std::string& name(AtomId id) const { return names_.at(id); }
  std::size_t atom_count() const noexcept { return names_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  void clear_clauses() noexcept { clauses_.clear(); }

  void add_clause(std::vector<AtomId> body, std::optional<AtomId> head) {
    for (AtomId a : body) check_id(a);
    if (head) check_id(*head);
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    clauses_.push_back(Clause{std::move(body), head});
  }

  // General clause given as positive and negative literals; rejected unless
  // it has at most one positive literal.
  void add_literals(const std::vector<AtomId>& positive, const std::vector<AtomId>& negative) {
    if (positive.size() > 1) throw std::invalid_argument("non-Horn clause: more than one positive literal");
    add_clause(negative, positive.empty() ? std::nullopt : std::optional<AtomId>(positive.front()));
  }

  void add_rule(const std::vector<std::string_view>& body, std::string_view head) {
    std::vector<AtomId> ids;
    ids.reserve(body.size());
    for (auto b : body) ids.push_back(intern(b));
    add_clause(std::move(ids), intern(head));
  }
  void add_fact(std::string_view head) { add_clause({}, intern(head)); }
  void add_goal(const std::vector<std::string_view>& body) {
    std::vector<AtomId> ids;
    for (auto b : body) ids.push_back(intern(b));
    add_clause(std::move(ids), std::nullopt);
  }

 private:
  void check_id(AtomId a) const {
    if (a >= names_.size()) throw std::invalid_argument("unregistered atom id " + std::to_string(a));
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> ids_;
  std::vector<Clause> clauses_;
};

struct Model {
  std::vector<bool> truth;  // indexed by AtomId

  bool contains(AtomId a) const { return a < truth.size() && truth[a]; }
  std::size_t size() const { return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), true)); }

  std::vector<std::string> sorted_names(const Formula& f) const {
    std::vector<std::string> out;
    for (AtomId a = 0; a < truth.size(); ++a) {
      if (truth[a]) out.push_back(f.name(a));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Least model, or nullopt when FALSE is derivable.
inline std::optional<Model> minimal_model(const Formula& f) {
  const auto& clauses = f.clauses();
  std::vector<std::vector<std::size_t>> watchers(f.atom_count());
  std::vector<std::size_t> remaining(clauses.size());
  Model model{std::vector<bool>(f.atom_count(), false)};
  std::deque<AtomId> queue;

  auto fire = [&](const Clause& c) {
    if (!c.head) return false;
    if (!model.truth[*c.head]) {
      model.truth[*c.head] = true;
      queue.push_back(*c.head);
    }
    return true;
  };

  for (std::size_t i = 0; i < clauses.size(); ++i) {
    remaining[i] = clauses[i].body.size();
    for (AtomId a : clauses[i].body) watchers[a].push_back(i);
  }
  for (const auto& c : clauses) {
    if (c.body.empty() && !fire(c)) return std::nullopt;
  }
  while (!queue.empty()) {
    const AtomId a = queue.front();
    queue.pop_front();
    for (std::size_t i : watchers[a]) {
      if (--remaining[i] == 0 && !fire(clauses[i])) return std::nullopt;
    }
  }
  return model;
}

inline bool satisfiable(const Formula& f) { return minimal_model(f).has_value(); }

namespace detail {
inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}
}  // namespace detail

inline Formula parse(std::string_view text) {
  Formula f;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError(line_no, "missing '->'");
    const std::string_view lhs = detail::trim(line.substr(0, arrow));
    const std::string_view rhs = detail::trim(line.substr(arrow + 2));
    if (rhs.find("->") != std::string_view::npos) throw ParseError(line_no, "more than one '->'");
    if (rhs.empty()) throw ParseError(line_no, "empty head (write FALSE for a goal clause)");
    if (rhs.find_first_of("&| \t") != std::string_view::npos) {
      throw ParseError(line_no, "not a Horn clause: head '" + std::string(rhs) + "' has more than one positive literal");
    }
    if (lhs.find('|') != std::string_view::npos) {
      throw ParseError(line_no, "not a Horn clause: disjunction in body");
    }
    std::vector<AtomId> body;
    if (!lhs.empty()) {
      std::size_t p = 0;
      while (true) {
        const std::size_t amp = lhs.find('&', p);
        const std::string_view tok = detail::trim(lhs.substr(p, amp == std::string_view::npos ? amp : amp - p));
        if (!valid_atom_name(tok)) throw ParseError(line_no, "invalid atom '" + std::string(tok) + "' in body");
        body.push_back(f.intern(tok));
        if (amp == std::string_view::npos) break;
        p = amp + 1;
      }
    }
    std::optional<AtomId> head;
    if (rhs != "FALSE") {
      if (!valid_atom_name(rhs)) throw ParseError(line_no, "invalid head atom '" + std::string(rhs) + "'");
      head = f.intern(rhs);
    }
    f.add_clause(std::move(body), head);
    if (end == text.size()) break;
  }
  return f;
}

inline std::string to_text(const Formula& f) {
  std::ostringstream out;
  for (const auto& c : f.clauses()) {
    for (std::size_t i = 0; i < c.body.size(); ++i) out << (i ? " & " : "") << f.name(c.body[i]);
    out << (c.body.empty() ? "-> " : " -> ") << (c.head ? f.name(*c.head) : std::string("FALSE")) << '\n';
  }
  return out.str();
}

}  // namespace wholo::horn
