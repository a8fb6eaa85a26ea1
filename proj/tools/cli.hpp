#pragma once

// `wholo` command dispatch. run_cli is callable in-process so the self-test
// and the test suite exercise the same code path as the executable.
//
// Exit codes: 0 inside, 1 outside, 2 boundary, 3 unknown, 64 input error.
// `horn solve` exits 0 when satisfiable and 1 when not; `selftest` exits 0
// iff every suite passed.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wholo/classify.hpp"
#include "wholo/domains.hpp"
#include "wholo/hornsat.hpp"
#include "wholo/json_io.hpp"
#include "wholo/permutation.hpp"
#include "wholo/testing/acceptance.hpp"

#ifdef WHOLO_VALIDATE_OUTPUT
#include "wholo/schema.hpp"
#include "wholo_embedded_schemas.hpp"
#endif

namespace wholo::cli {

inline constexpr int kExitInputError = 64;
inline constexpr int kExitInternal = 70;

inline int exit_code(State s) {
  switch (s) {
    case State::Inside: return 0;
    case State::Outside: return 1;
    case State::Boundary: return 2;
    case State::Unknown: return 3;
  }
  return 3;
}

struct Environment {
  // Colour the selftest summary; main() sets this when stdout is a terminal
  // and NO_COLOR is unset.
  bool color = false;
};

namespace detail {

struct Common {
  double eps = kDefaultEpsilon;
  std::uint64_t seed = 0;
};

inline void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps", c.eps, "boundary band epsilon (default 1e-9)");
  cmd->add_option("--seed", c.seed, "seed for randomized steps (default 0)");
}

inline void emit(std::ostream& out, const json& j) {
#ifdef WHOLO_VALIDATE_OUTPUT
  static const json schema = json::parse(embedded::kVerdictSchema);
  if (const auto errors = schema::validate(schema, j); !errors.empty()) {
    throw std::logic_error("emitted verdict violates schema: " + errors.front());
  }
#endif
  out << j.dump() << '\n';
}

// Downgrades Inside to Unknown if the certificate does not re-verify.
inline Verdict checked(const Configuration& c, Verdict v, double eps) {
  if (v.state == State::Inside && (!v.certificate || !verify_certificate(c, *v.certificate, eps))) {
    v.state = State::Unknown;
    v.certificate.reset();
  }
  return v;
}

inline void require_real(const Configuration& c, double eps) {
  for (const auto& z : c.points()) {
    if ((z.components.imag().array().abs() > eps).any()) {
      throw InputError("jost-check needs a real configuration");
    }
  }
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const Environment& env = {}) {
  CLI::App app{"Tube, extended-tube, Jost and permuted-union membership; Horn inference; order classes", "wholo"};
  app.require_subcommand(1);
  app.fallthrough(false);

  detail::Common common;
  std::string input;
  bool exact_only = false;
  int budget = 4096;
  int max_enumerate = 8;
  int samples = 10000;

  auto* tube = app.add_subcommand("tube-check", "tube membership");
  auto* etube = app.add_subcommand("etube-check", "extended-tube membership with a lambda or matrix certificate");
  auto* uni = app.add_subcommand("union-check", "membership in the union of permuted extended tubes");
  auto* jost = app.add_subcommand("jost-check", "Jost-point test for a real configuration");
  for (auto* cmd : {tube, etube, uni, jost}) {
    detail::add_common(cmd, common);
    cmd->add_option("input", input, "configuration JSON file")->required();
  }
  for (auto* cmd : {etube, uni, jost}) {
    cmd->add_flag("--exact-only", exact_only, "fail with exit 64 unless s = 2");
  }
  etube->add_option("--budget", budget, "candidate transforms tried in search mode (s != 2)")
      ->check(CLI::PositiveNumber);
  uni->add_option("--budget", budget, "guesses beyond --max-enumerate, or search budget per ordering (s != 2)")
      ->check(CLI::PositiveNumber);
  uni->add_option("--max-enumerate", max_enumerate, "enumerate all orderings up to this m")->check(CLI::NonNegativeNumber);
  jost->add_option("--samples", samples, "random convex weights in sampling mode (s != 2)")->check(CLI::PositiveNumber);

  std::int64_t cls_s = 0, cls_m_max = 0;
  std::string format = "table";
  auto* classify = app.add_subcommand("classify", "order-class table");
  detail::add_common(classify, common);
  classify->add_option("--s", cls_s, "space-time dimension")->required();
  classify->add_option("--m-max", cls_m_max, "largest number of points")->required();
  classify->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  auto* horn = app.add_subcommand("horn", "Horn formulas");
  horn->require_subcommand(1);
  auto* solve = horn->add_subcommand("solve", "print the least model, or UNSAT");
  detail::add_common(solve, common);
  solve->add_option("--input", input, "formula file")->required();

  bool quick = false, full = false;
  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suites");
  detail::add_common(selftest, common);
  selftest->add_flag("--quick", quick, "reduced case counts");
  selftest->add_flag("--full", full, "full case counts with time budgets (default)");
  selftest->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"metric-sign"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "wholo: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    require_positive_epsilon(common.eps);

    if (classify->parsed()) {
      if (cls_s < 2) throw InputError("--s must be >= 2");
      const auto rows = class_table(cls_s, cls_m_max);
      if (format == "json") {
        json j{{"s", cls_s}, {"m_max", cls_m_max}, {"rows", json::array()}};
        for (const auto& r : rows) j["rows"].push_back({{"m", r.m}, {"n", r.n}, {"class", to_string(r.order)}});
        out << j.dump() << '\n';
      } else {
        out << "s = " << cls_s << "\n";
        out << std::left << std::setw(6) << "m" << std::setw(10) << "n" << "class\n";
        for (const auto& r : rows) out << std::setw(6) << r.m << std::setw(10) << r.n << to_string(r.order) << '\n';
      }
      return 0;
    }

    if (solve->parsed()) {
      const horn::Formula f = horn::parse(read_text_file(input));
      const auto model = horn::minimal_model(f);
      if (!model) {
        out << "UNSAT\n";
        return 1;
      }
      for (const auto& name : model->sorted_names(f)) out << name << '\n';
      return 0;
    }

    if (selftest->parsed()) {
      if (quick && full) throw InputError("--quick and --full are exclusive");
      testing::AcceptanceOptions o;
      o.quick = quick;
      o.seed = common.seed;
      o.flip_metric = fault == "metric-sign";
      o.cli = [](const std::vector<std::string>& a, std::ostream& so, std::ostream& se) { return run_cli(a, so, se); };
      const auto results = testing::run_acceptance(o, true);
      testing::print_summary(out, results, env.color);
      testing::print_timings(err, results);
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
      return ok ? 0 : 1;
    }

    const Configuration c = load_configuration(input);
    const double eps = common.eps;
    const bool s2 = c.dimension() == 2;
    if (exact_only && !s2) throw InputError("--exact-only requires s = 2 (got s = " + std::to_string(c.dimension()) + ")");

    if (tube->parsed()) {
      const Verdict v = in_tube(c, eps);
      detail::emit(out, verdict_to_json("tube-check", v, c, eps));
      return exit_code(v.state);
    }

    if (etube->parsed()) {
      const Verdict v = detail::checked(
          c, s2 ? in_extended_tube_s2(c, eps) : in_extended_tube_search(c, budget, common.seed, eps), eps);
      json j = verdict_to_json("etube-check", v, c, eps);
      j["mode"] = s2 ? "exact" : "search";
      detail::emit(out, j);
      return exit_code(v.state);
    }

    if (uni->parsed()) {
      Verdict v;
      if (s2) {
        v = in_permuted_union_s2(c, eps, {.max_enumerate = max_enumerate, .guesses = budget, .seed = common.seed});
      } else {
        // Search each ordering; identity only beyond --max-enumerate.
        std::vector<int> order(static_cast<std::size_t>(c.size()));
        std::iota(order.begin(), order.end(), 1);
        v = Verdict{.state = State::Unknown, .margin = -std::numeric_limits<double>::infinity()};
        do {
          const Permutation pi(order);
          Verdict t = in_extended_tube_search(permute_config(c, pi), budget, common.seed, eps);
          if (t.state == State::Inside) {
            t.certificate->permutation = pi.one_based();
            v = std::move(t);
            break;
          }
          v.margin = std::max(v.margin, t.margin);
        } while (c.size() <= max_enumerate && std::next_permutation(order.begin(), order.end()));
      }
      v = detail::checked(c, std::move(v), eps);
      json j = verdict_to_json("union-check", v, c, eps);
      j["mode"] = s2 ? "exact" : "search";
      if (v.certificate && v.certificate->permutation) {
        j["sign"] = statistics_sign(c.fields(), Permutation(*v.certificate->permutation));
      }
      detail::emit(out, j);
      return exit_code(v.state);
    }

    if (jost->parsed()) {
      detail::require_real(c, eps);
      Verdict v;
      if (s2) {
        v = is_jost_s2(c, eps);
        if (v.state == State::Inside) {
          // A Jost point lies in the extended tube; attach the lambda that
          // maps it into the tube.
          const Verdict e = in_extended_tube_s2(c, eps);
          if (e.state == State::Inside) v.certificate = e.certificate;
          v = detail::checked(c, std::move(v), eps);
        }
      } else {
        v = jost_sampling(c, samples, common.seed, eps);
      }
      json j = verdict_to_json("jost-check", v, c, eps);
      j["mode"] = s2 ? "exact" : "sampling";
      detail::emit(out, j);
      return exit_code(v.state);
    }
  } catch (const InputError& e) {
    err << "wholo: " << e.what() << '\n';
    return kExitInputError;
  } catch (const horn::ParseError& e) {
    err << "wholo: " << input << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "wholo: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::overflow_error& e) {
    err << "wholo: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "wholo: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInputError;
}

}  // namespace wholo::cli
