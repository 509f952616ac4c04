#pragma once

// cotangent-lab: omega, check and suite commands over the set, monoid and
// ring contexts. run_lab is the whole program minus main, so tests can
// drive it in-process.
//
// Exit codes: 0 pass, 1 theorem failure, 2 usage, parse or precondition error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cotangent/acceptance.hpp"
#include "cotangent/beck.hpp"
#include "cotangent/io/algebra_text.hpp"
#include "cotangent/io/json.hpp"
#include "cotangent/monoid_context.hpp"
#include "cotangent/ring_context.hpp"
#include "cotangent/set_context.hpp"

namespace cotangent::lab {

enum Exit : int { pass = 0, theorem_failure = 1, usage_error = 2 };

struct RunConfig {
  std::string command;
  std::string theorem;
  std::string context;
  std::vector<std::string> inputs;
  std::string format = "text";
  std::optional<std::size_t> bound;
  std::uint64_t seed = 0;
  std::string only;
  std::optional<std::size_t> exhaustive;
};

/// Usage mistakes that CLI11 cannot see (wrong number of files and so on).
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

using io::Json;

inline std::string extension(const std::string& path) {
  auto dot = path.rfind('.');
  return dot == std::string::npos ? std::string() : path.substr(dot + 1);
}

/// Parses JSON, turning the byte offset of a syntax error into line and column.
inline Json load_json(const std::string& path) {
  std::string text = io::read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
    throw ParseError(path + ": " + msg, line, col);
  }
}

inline ring::FPAlgebra load_algebra(const std::string& path) {
  if (extension(path) == "json") return io::algebra_from_json(load_json(path));
  return io::parse_algebra(io::read_file(path));
}

inline ring::AlgebraHom load_algebra_hom(const std::string& path) {
  if (extension(path) == "json") return io::algebra_hom_from_json(load_json(path));
  return io::parse_algebra_hom(io::read_file(path));
}

inline std::string vec(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

inline Json vec_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(io::integer_to_json(c));
  return a;
}

inline const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError(c.command + " expects exactly one descriptor file");
  return c.inputs[0];
}

inline void require_context(const RunConfig& c) {
  if (c.context.empty()) throw UsageError("--context is required for " + c.command);
}

// ---- omega ----

inline int omega_set(const RunConfig& c, std::ostream& out) {
  sets::FinSet x = io::set_from_json(load_json(single_input(c)));
  auto om = sets::omega(x);
  if (c.format == "json") {
    Json unit = Json::array();
    for (const auto& u : om.unit) unit.push_back(vec_json(u));
    out << Json{{"omega", io::set_module_to_json(om.omega)}, {"unit", unit}}.dump(2) << "\n";
    return pass;
  }
  std::string fibers, unit;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fibers += (i ? ", " : "") + std::string("fiber ") + x.label(i) + ": " + om.omega.fibers[i].describe();
    unit += (i ? ", " : "") + x.label(i) + " -> " + vec(om.unit[i]);
  }
  out << (fibers.empty() ? "no fibers" : fibers) << "\n";
  out << "unit: " << unit << "\n";
  return pass;
}

inline int omega_nat(const RunConfig& c, std::size_t bound, std::ostream& out) {
  monoids::NatOmega om = monoids::omega_nat_truncated(bound);
  if (c.format == "json") {
    out << io::nat_omega_to_json(om).dump(2) << "\n";
    return pass;
  }
  std::string fibers, unit;
  for (std::size_t n = 0; n <= bound; ++n) {
    fibers += (n ? ", " : "") + std::string("fiber ") + std::to_string(n) + ": " + om.fibers[n].describe();
    unit += (n ? ", " : "") + std::to_string(n) + " -> " + vec(om.unit[n]);
  }
  out << fibers << "\n";
  for (std::size_t n = 0; n < bound; ++n)
    out << "transition " << n << " -> " << n + 1 << ": " << io::matrix_to_json(om.transitions[n].matrix()).dump()
        << "\n";
  out << "unit: " << unit << "\n";
  return pass;
}

inline int omega_monoid(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) {
    if (!c.bound) throw UsageError("omega --context monoid needs a descriptor file or --bound");
    return omega_nat(c, *c.bound, out);
  }
  auto d = io::monoid_descriptor_from_json(load_json(single_input(c)));
  if (auto* nat = std::get_if<io::NatDescriptor>(&d)) {
    std::size_t bound = c.bound ? *c.bound : nat->bound;
    if (bound == 0) throw UsageError("a nat descriptor needs a bound (in the file or via --bound)");
    return omega_nat(c, bound, out);
  }
  if (c.bound) throw UsageError("--bound applies to nat descriptors only");
  const auto& m = std::get<monoids::FinCommMonoid>(d);
  auto om = monoids::omega(m);
  if (c.format == "json") {
    Json unit = Json::array();
    for (const auto& u : om.unit) unit.push_back(vec_json(u));
    out << Json{{"omega", io::monoid_module_to_json(om.omega)}, {"unit", unit}}.dump(2) << "\n";
    return pass;
  }
  std::string fibers, unit;
  for (std::size_t i = 0; i < m.size(); ++i) {
    fibers += (i ? ", " : "") + std::string("fiber ") + m.label(i) + ": " + om.omega.fiber(i).describe();
    unit += (i ? ", " : "") + m.label(i) + " -> " + vec(om.unit[i]);
  }
  out << fibers << "\n";
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      out << "transition " << m.label(x) << " on fiber " << m.label(y) << ": "
          << io::matrix_to_json(om.omega.h(x, y).matrix()).dump() << "\n";
  out << "unit: " << unit << "\n";
  return pass;
}

inline int omega_ring(const RunConfig& c, std::ostream& out) {
  if (c.bound) throw UsageError("--bound applies to the monoid context only");
  ring::FPAlgebra a = load_algebra(single_input(c));
  auto om = ring::kaehler(a);
  if (c.format == "json") {
    Json unit = Json::object();
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      Json col = Json::array();
      for (const auto& p : om.unit.images()[i]) col.push_back(a.format(p));
      unit[a.variables()[i]] = col;
    }
    out << Json{{"omega", io::ring_module_to_json(om.omega)}, {"unit", unit}}.dump(2) << "\n";
    return pass;
  }
  out << om.omega.describe() << "\n";
  std::string unit;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    unit += (i ? ", " : "") + a.variables()[i] + " -> " + om.omega.format_element(om.unit.images()[i]);
  out << "unit: " << (unit.empty() ? "none" : unit) << "\n";
  return pass;
}

// ---- check ----

struct Report {
  bool ok = false;
  std::string verdict;
  Json extra = Json::object();
};

inline int emit(const RunConfig& c, const Report& r, std::ostream& out) {
  if (c.format == "json") {
    Json j{{"command", "check"}, {"theorem", c.theorem}, {"context", c.context}, {"pass", r.ok}, {"verdict", r.verdict}};
    j.update(r.extra);
    out << j.dump(2) << "\n";
  } else {
    out << r.verdict << "\n";
    for (const auto& [k, v] : r.extra.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return r.ok ? pass : theorem_failure;
}

inline Report sequence_report(const SequenceVerdict& v) {
  Report r{v.exact, v.describe(), Json::object()};
  if (v.witness) {
    r.extra["failed_at"] = to_string(*v.failed_at);
    if (!v.witness->fiber.empty()) r.extra["fiber"] = v.witness->fiber;
    r.extra["generator"] = v.witness->generator;
  }
  return r;
}

inline Report epi_report(const EpiVerdict& v) {
  return {v.epi, v.describe(), Json{{"mono", v.mono}, {"iso", v.iso}}};
}

inline Report check_first_sequence(const RunConfig& c) {
  const std::string& path = single_input(c);
  if (c.context == "set") return sequence_report(check_theorem1<sets::Context>(io::map_from_json(load_json(path))));
  if (c.context == "monoid")
    return sequence_report(check_theorem1<monoids::Context>(io::monoid_hom_from_json(load_json(path))));
  return sequence_report(check_theorem1<ring::Context>(load_algebra_hom(path)));
}

inline Report check_epi(const RunConfig& c) {
  const std::string& path = single_input(c);
  if (c.context == "set") return epi_report(check_theorem2<sets::Context>(io::map_from_json(load_json(path))));
  if (c.context == "monoid")
    return epi_report(check_theorem2<monoids::Context>(io::monoid_hom_from_json(load_json(path))));
  return epi_report(check_theorem2<ring::Context>(load_algebra_hom(path)));
}

inline Report check_base_change(const RunConfig& c) {
  if (c.inputs.size() != 2) throw UsageError("check base-change expects two object files (x and z, or A and k')");
  const auto& p = c.inputs;
  if (c.context == "set") {
    IsoVerdict v = check_theorem3<sets::Context>(io::set_from_json(load_json(p[0])), io::set_from_json(load_json(p[1])));
    return {v.iso, v.describe(), Json::object()};
  }
  if (c.context == "monoid") {
    IsoVerdict v = check_theorem3<monoids::Context>(io::monoid_from_json(load_json(p[0])),
                                                    io::monoid_from_json(load_json(p[1])));
    return {v.iso, v.describe(), Json::object()};
  }
  auto bc = ring::base_change_check(load_algebra(p[0]), load_algebra(p[1]));
  return {bc.verdict.iso, bc.verdict.describe(),
          Json{{"extended", bc.extended.describe()}, {"pushed forward", bc.left.describe()},
               {"relative", bc.right.describe()}}};
}

inline Report check_ens(const RunConfig& c) {
  if (c.context != "set") throw UsageError("check ens runs in the set context only");
  if (!c.inputs.empty()) {
    if (c.exhaustive) throw UsageError("give either a map file or --exhaustive, not both");
    sets::EnsVerdict v = sets::prop_ens_check(io::map_from_json(load_json(single_input(c))));
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    Report r{v.consistent(), v.consistent() ? "CONSISTENT" : "INCONSISTENT", Json::object()};
    r.extra = {{"surjective", yn(v.surjective)}, {"injective", yn(v.injective)},
               {"delta_tilde", std::string(v.delta.is_iso ? "iso" : v.delta.is_epi ? "epi" : v.delta.is_mono ? "mono" : "neither")}};
    return r;
  }
  std::size_t n = c.exhaustive ? *c.exhaustive : 4;
  if (n > 6) throw UsageError("--exhaustive is limited to 6");
  std::size_t count = 0;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (const auto& f : sets::all_maps(sets::FinSet::numbered(a, "x"), sets::FinSet::numbered(b, "y"))) {
        if (!sets::prop_ens_check(f).consistent()) {
          std::string where = "|X| = " + std::to_string(a) + ", |Y| = " + std::to_string(b);
          return {false, "FAIL: " + where, Json{{"maps_checked", count}}};
        }
        ++count;
      }
  return {true, "OK: " + std::to_string(count) + " maps verified (|X|, |Y| <= " + std::to_string(n) + ")",
          Json{{"maps_checked", count}}};
}

inline Report check_nat_omega(const RunConfig& c) {
  if (c.context != "monoid") throw UsageError("check nat-omega runs in the monoid context only");
  if (!c.inputs.empty()) throw UsageError("check nat-omega takes no files; use --bound");
  std::size_t n = c.bound ? *c.bound : 8;
  monoids::NatOmega om = monoids::omega_nat_truncated(n);
  monoids::NatOmega next = monoids::omega_nat_truncated(n + 1);
  auto fail = [&](const std::string& what) { return Report{false, "FAIL: " + what, Json::object()}; };
  if (!om.fibers[0].is_zero()) return fail("fiber 0 is " + om.fibers[0].describe());
  for (std::size_t k = 1; k <= n; ++k)
    if (om.fibers[k].invariant_factors() != std::vector<Integer>{0})
      return fail("fiber " + std::to_string(k) + " is " + om.fibers[k].describe());
  for (std::size_t k = 1; k < n; ++k)
    if (!(om.transitions[k].matrix() == IntMatrix::identity(1)))
      return fail("transition " + std::to_string(k) + " -> " + std::to_string(k + 1) + " is not the identity");
  for (std::size_t k = 0; k <= n; ++k)
    if (!(next.fibers[k] == om.fibers[k]) || next.unit[k] != om.unit[k])
      return fail("bounds " + std::to_string(n) + " and " + std::to_string(n + 1) + " differ at fiber " + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k)
    if (!(next.transitions[k].matrix() == om.transitions[k].matrix()))
      return fail("bounds " + std::to_string(n) + " and " + std::to_string(n + 1) + " differ at transition " +
                  std::to_string(k));
  return {true,
          "OK: fiber 0 = 0, fibers 1.." + std::to_string(n) + " = Z, identity transitions, stable from " +
              std::to_string(n) + " to " + std::to_string(n + 1),
          Json::object()};
}

inline int run_check(const RunConfig& c, std::ostream& out) {
  if (c.theorem != "ens" && c.theorem != "nat-omega") require_context(c);
  if (c.bound && c.theorem != "nat-omega") throw UsageError("--bound applies to nat-omega only");
  RunConfig cfg = c;
  if (cfg.context.empty()) cfg.context = c.theorem == "ens" ? "set" : "monoid";
  if (cfg.exhaustive && cfg.theorem != "ens") throw UsageError("--exhaustive applies to check ens only");
  Report r;
  if (cfg.theorem == "first-sequence") {
    r = check_first_sequence(cfg);
  } else if (cfg.theorem == "epi") {
    r = check_epi(cfg);
  } else if (cfg.theorem == "base-change") {
    r = check_base_change(cfg);
  } else if (cfg.theorem == "ens") {
    r = check_ens(cfg);
  } else {
    r = check_nat_omega(cfg);
  }
  return emit(cfg, r, out);
}

inline int run_suite(const RunConfig& c, std::ostream& out) {
  if (!c.inputs.empty()) throw UsageError("suite takes no files");
  acceptance::SuiteOptions opt{c.seed, c.only};
  auto results = acceptance::run_acceptance(opt);
  if (c.format == "text") {
    for (const auto& r : results) out << acceptance::format_line(r) << "\n";
  } else {
    out << acceptance::report_json(results, opt).dump(2) << "\n";
  }
  return acceptance::all_pass(results) ? pass : theorem_failure;
}

}  // namespace detail

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "omega") {
      detail::require_context(c);
      if (c.context == "set") return detail::omega_set(c, out);
      if (c.context == "monoid") return detail::omega_monoid(c, out);
      return detail::omega_ring(c, out);
    }
    if (c.command == "check") return detail::run_check(c, out);
    return detail::run_suite(c, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const NotAnEpi& e) {
    err << "precondition failed: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
  }
  return usage_error;
}

/// Parses the command line (without the program name) and runs it.
inline int run_lab(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cotangent modules and exact-sequence checks over sets, monoids and algebras", "cotangent-lab"};
  app.require_subcommand(1);
  RunConfig c;
  const std::vector<std::string> contexts{"set", "monoid", "ring"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--context", c.context, "set, monoid or ring")->check(CLI::IsMember(contexts));
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", c.seed, "seed for randomized checks (default 0)");
    sub->add_option("--bound", c.bound, "truncation bound for the monoid N")->check(CLI::Range(1, 64));
  };

  CLI::App* omega = app.add_subcommand("omega", "print Omega of an object and its unit");
  common(omega);
  omega->add_option("files", c.inputs, "descriptor file")->check(CLI::ExistingFile);

  CLI::App* check = app.add_subcommand("check", "check one of the exact-sequence statements");
  common(check);
  check->add_option("theorem", c.theorem, "first-sequence, epi, base-change, ens or nat-omega")
      ->required()
      ->check(CLI::IsMember({"first-sequence", "epi", "base-change", "ens", "nat-omega"}));
  check->add_option("files", c.inputs, "descriptor files")->check(CLI::ExistingFile);
  check->add_option("--exhaustive", c.exhaustive, "check ens on all maps with |X|, |Y| <= N");

  CLI::App* suite = app.add_subcommand("suite", "run the acceptance battery");
  c.format = "json";
  suite->add_option("--seed", c.seed, "seed for the random instances (default 0)");
  suite->add_option("--only", c.only, "restrict to one context")
      ->check(CLI::IsMember(acceptance::known_groups()));
  suite->add_option("--format", c.format, "json (default) or text")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? pass : usage_error;
  }
  if (omega->parsed()) {
    c.command = "omega";
    if (!omega->count("--format")) c.format = "text";
  } else if (check->parsed()) {
    c.command = "check";
    if (!check->count("--format")) c.format = "text";
  } else {
    c.command = "suite";
  }
  return run(c, out, err);
}

}  // namespace cotangent::lab
