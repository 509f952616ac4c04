#pragma once

// The acceptance battery: nine exact criteria, each split into parts tagged
// by context so that a run can be restricted to one of them.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cotangent/monoid_context.hpp"
#include "cotangent/ring_context.hpp"
#include "cotangent/set_context.hpp"
#include "cotangent/smith.hpp"
#include "cotangent/testing/generators.hpp"
#include "cotangent/testing/hom_oracle.hpp"
#include "cotangent/testing/monoid_oracle.hpp"
#include "cotangent/testing/ring_oracle.hpp"
#include "cotangent/testing/set_oracle.hpp"

namespace cotangent::acceptance {

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Empty, or one of "set", "monoid", "ring", "abgrp".
  std::string only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::string detail;
  std::vector<std::string> groups;
};

inline const std::vector<std::string>& known_groups() {
  static const std::vector<std::string> g{"set", "monoid", "ring", "abgrp"};
  return g;
}

namespace detail {

struct Failed {
  std::string what;
};

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

struct Part {
  std::string group;
  std::function<std::string(testing::Engine&)> run;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0 when there is none
  std::vector<Part> parts;
};

inline std::string count(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

/// Every map X -> Y with |X|, |Y| <= 4 (sets {1..n}).
inline std::vector<sets::SetMap> small_set_maps() {
  std::vector<sets::SetMap> out;
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= 4; ++n)
      for (auto& f : sets::all_maps(sets::FinSet::numbered(m, "x"), sets::FinSet::numbered(n, "y")))
        out.push_back(std::move(f));
  return out;
}

inline ring::FPAlgebra qx() { return ring::FPAlgebra::polynomial(ring::Field::rationals(), {"x"}); }

inline ring::FPAlgebra parse(std::vector<std::string> vars, const std::vector<std::string>& rels) {
  return ring::FPAlgebra::parse(ring::Field::rationals(), std::move(vars), rels);
}

// ---- 1 ----

inline std::string set_maps_classified(testing::Engine&) {
  std::size_t n = 0;
  for (const auto& f : small_set_maps()) {
    sets::EnsVerdict v = sets::prop_ens_check(f);
    expect(v.consistent(), "map with |X| = " + std::to_string(f.source().size()) + ", |Y| = " +
                               std::to_string(f.target().size()) + ": classification of delta_tilde disagrees");
    ++n;
  }
  return count(n, "maps");
}

// ---- 2 ----

inline std::string nat_omega(testing::Engine&) {
  monoids::NatOmega om = monoids::omega_nat_truncated(8);
  expect(om.fibers.size() == 9, "expected fibers 0..8");
  expect(om.fibers[0].is_zero(), "fiber 0 is " + om.fibers[0].describe());
  for (std::size_t n = 1; n <= 8; ++n) {
    expect(om.fibers[n].invariant_factors() == std::vector<Integer>{0},
           "fiber " + std::to_string(n) + " is " + om.fibers[n].describe());
    expect(om.unit[n] == IntVector{Integer(static_cast<unsigned long>(n))},
           "d at " + std::to_string(n) + " is not n times the generator");
  }
  for (std::size_t n = 1; n < 8; ++n)
    expect(om.transitions[n].matrix() == IntMatrix::identity(1),
           "transition " + std::to_string(n) + " -> " + std::to_string(n + 1) + " is not the identity");
  monoids::NatOmega hi = monoids::omega_nat_truncated(9);
  for (std::size_t n = 0; n <= 8; ++n)
    expect(hi.fibers[n] == om.fibers[n] && hi.unit[n] == om.unit[n], "bounds 8 and 9 differ at fiber " + std::to_string(n));
  for (std::size_t n = 0; n < 8; ++n)
    expect(hi.transitions[n].matrix() == om.transitions[n].matrix(),
           "bounds 8 and 9 differ at transition " + std::to_string(n));
  return "fibers 0, Z x 8; identity transitions; stable from 8 to 9";
}

// ---- 3 ----

inline std::string first_sequence_sets(testing::Engine&) {
  std::size_t n = 0;
  for (const auto& f : small_set_maps()) {
    SequenceVerdict v = check_theorem1<sets::Context>(f);
    expect(v.exact, "set map: " + v.describe());
    ++n;
  }
  return count(n, "set maps");
}

inline std::string first_sequence_monoids(testing::Engine&) {
  std::size_t n = 0;
  auto cat = monoids::catalog();
  for (const auto& [xn, x] : cat)
    for (const auto& [yn, y] : cat)
      for (const auto& f : monoids::all_homs(x, y)) {
        SequenceVerdict v = check_theorem1<monoids::Context>(f);
        expect(v.exact, xn + " -> " + yn + ": " + v.describe());
        ++n;
      }
  return count(n, "monoid homs");
}

inline std::string first_sequence_rings(testing::Engine&) {
  std::size_t n = 0;
  for (const auto& f : ring::hom_catalog()) {
    SequenceVerdict v = check_theorem1<ring::Context>(f);
    expect(v.exact, f.source().describe() + " -> " + f.target().describe() + ": " + v.describe());
    ++n;
  }
  return count(n, "algebra homs");
}

// ---- 4 ----

inline std::string epi_sets(testing::Engine&) {
  std::size_t n = 0;
  for (const auto& f : small_set_maps()) {
    if (!f.is_surjective()) continue;
    EpiVerdict v = check_theorem2<sets::Context>(f);
    expect(v.epi, "surjective set map: " + v.describe());
    ++n;
  }
  return count(n, "surjections");
}

inline std::string epi_rings(testing::Engine&) {
  std::size_t surj = 0, loc = 0;
  for (const auto& f : ring::hom_catalog()) {
    std::string name = f.source().describe() + " -> " + f.target().describe();
    if (ring::is_surjective(f)) {
      expect(check_theorem2<ring::Context>(f).epi, name + ": delta_tilde is not epi");
      ++surj;
    }
    if (ring::as_localization(f)) {
      EpiVerdict v = check_theorem2<ring::Context>(f);
      expect(v.iso, name + ": " + v.describe());
      ++loc;
    }
  }
  ring::AlgebraHom l = ring::AlgebraHom::parse(qx(), parse({"x", "y"}, {"x*y - 1"}), {"x"});
  expect(check_theorem2<ring::Context>(l).describe() == "EPI (iso)", "Q[x] -> Q[x,y]/(xy - 1) is not EPI (iso)");
  expect(surj >= 2, "expected at least two catalog surjections");
  return count(surj, "surjections") + ", " + count(loc, "localization") + " (iso)";
}

// ---- 5 ----

inline std::string coproducts_sets(testing::Engine&) {
  std::size_t n = 0;
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      sets::FinSet x = sets::FinSet::numbered(a, "x"), z = sets::FinSet::numbered(b, "z");
      IsoVerdict v = check_theorem3<sets::Context>(x, z);
      expect(v.iso, "|x| = " + std::to_string(a) + ", |z| = " + std::to_string(b) + ": " + v.describe());
      // fiber for fiber: pushforward(f, Omega_x) and Omega_g agree on invariants
      auto cp = sets::coproduct(x, z);
      auto push = sets::pushforward(cp.f, sets::omega(x).omega);
      auto rel = sets::omega_rel(cp.g).omega;
      for (std::size_t y = 0; y < cp.y.size(); ++y)
        expect(push.fibers[y].isomorphic_to(rel.fibers[y]), "fiber " + cp.y.label(y) + " differs");
      ++n;
    }
  return count(n, "pairs");
}

inline std::string base_change_rings(testing::Engine&) {
  auto one = ring::base_change_check(qx(), parse({"t"}, {"t^2 + 1"}));
  expect(one.verdict.iso, "Q[x] with Q[t]/(t^2 + 1): " + one.verdict.describe());
  expect(one.left.describe() == "gens dx" && one.right.describe() == "gens dx",
         "Q[x] with Q[t]/(t^2 + 1): expected free rank 1 on dx");
  auto two = ring::base_change_check(parse({"x"}, {"x^2"}), parse({"t"}, {"t^2 - 2"}));
  expect(two.verdict.iso, "Q[x]/(x^2) with Q[t]/(t^2 - 2): " + two.verdict.describe());
  expect(two.left.describe() == "gens dx; rel 2x*dx" && two.right.describe() == "gens dx; rel 2x*dx",
         "Q[x]/(x^2) with Q[t]/(t^2 - 2): expected <dx | 2x dx>");
  return "2 base changes, inverse maps verified";
}

// ---- 6 ----

inline std::string represent_sets(testing::Engine&) {
  const std::vector<FGAbGroup> small{FGAbGroup::zero(), FGAbGroup::cyclic(2), FGAbGroup::cyclic(3),
                                     FGAbGroup::cyclic(4), FGAbGroup::from_invariants({2, 2})};
  std::size_t n = 0;
  for (std::size_t size = 0; size <= 3; ++size) {
    sets::FinSet x = sets::FinSet::numbered(size);
    std::vector<std::size_t> pick(size, 0);
    for (;;) {
      std::vector<FGAbGroup> fib;
      for (auto p : pick) fib.push_back(small[p]);
      sets::SetBeckModule b(x, fib);
      expect(sets::hom_group(sets::omega(x).omega, b).group.invariant_factors() ==
                 sets::derivations(b).group.invariant_factors(),
             "set of size " + std::to_string(size) + ": Hom and Der differ");
      expect(testing::set_representability_bijective(x, b),
             "set of size " + std::to_string(size) + ": Hom(Omega, b) -> sections is not a bijection");
      ++n;
      std::size_t k = 0;
      while (k < size) {
        if (++pick[k] < small.size()) break;
        pick[k] = 0;
        ++k;
      }
      if (k == size) break;
    }
  }
  return count(n, "set modules");
}

inline std::string represent_monoids(testing::Engine&) {
  std::size_t n = 0, brute = 0;
  for (const auto& [name, m] : monoids::catalog()) {
    auto om = monoids::omega(m);
    for (const auto& a : testing::test_modules(m, true)) {
      expect(monoids::hom_group(om.omega, a).group.invariant_factors() ==
                 monoids::derivations(a).group.invariant_factors(),
             name + ": Hom(Omega, A) and Der(A) differ");
      ++n;
      bool finite = true;
      for (const auto& g : a.fibers()) finite = finite && g.is_finite();
      if (!finite) continue;
      expect(testing::monoid_representability_bijective(a), name + ": derivation enumeration disagrees");
      ++brute;
    }
  }
  return count(n, "monoid modules") + " (" + std::to_string(brute) + " enumerated)";
}

inline std::string represent_rings(testing::Engine&) {
  std::size_t n = 0;
  for (const auto& a : ring::finite_catalog()) {
    const ring::PolyRing& r = a.ring();
    std::vector<ring::FPModule> mods{ring::FPModule::free(a, 1), ring::FPModule(a, {"e1"}, {{r.variable(0)}}),
                                     ring::FPModule::free(a, 2)};
    auto om = ring::kaehler(a);
    for (const auto& m : mods) {
      std::string name = a.describe() + " into " + (m.describe().empty() ? "0" : m.describe());
      std::size_t brute = testing::brute_force_derivation_dimension(a, m);
      expect(ring::hom_dimension(om.omega, m) == brute, name + ": dim Hom(Omega, M) differs from the derivation count");
      auto der = ring::derivations(a, m).module.dimension();
      expect(der && *der == brute, name + ": derivation module has the wrong dimension");
      ++n;
    }
  }
  return count(n, "algebra/module pairs");
}

// ---- 7 ----

inline bool is_diagonal_chain(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < n && mpz_divisible_p(s(i + 1, i + 1).get_mpz_t(), s(i, i).get_mpz_t()) == 0) return false;
  }
  return true;
}

inline std::string smith_random(testing::Engine& rng) {
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 0, 6));
    std::size_t c = static_cast<std::size_t>(testing::uniform(rng, 0, 6));
    IntMatrix m = testing::random_matrix(rng, r, c, 20);
    SmithForm snf = smith_normal_form(m);
    std::string at = "matrix " + std::to_string(trial);
    expect(snf.U * m * snf.V == snf.S, at + ": U M V != S");
    expect(abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1, at + ": U or V not unimodular");
    expect(snf.U * snf.U_inverse == IntMatrix::identity(r),
           at + ": stored inverse of U is wrong");
    expect(is_diagonal_chain(snf.S), at + ": S is not a divisor chain");
  }
  return "1000 matrices";
}

inline std::string hom_exactness_random(testing::Engine& rng) {
  std::size_t used = 0, exact = 0, trials = 0;
  while (used < 250) {
    expect(++trials <= 20000, "too few sequences within the oracle's range");
    FGAbGroup b = testing::random_group(rng, 3, 2, 4);
    AbHom r = testing::random_hom_into(rng, b, static_cast<std::size_t>(testing::uniform(rng, 0, 2)), 3);
    AbHom s = trials % 3 == 0
                  ? cokernel(r).map
                  : testing::random_hom_from(rng, b, static_cast<std::size_t>(testing::uniform(rng, 0, 2)), 3);
    if (testing::max_torsion(cokernel(r).group) > 32 || testing::max_torsion(cokernel(s).group) > 32) continue;
    bool by_cokernel = check_right_exact(r, s).exact;
    expect(by_cokernel == testing::hom_exact(r, s, 32), "sequence " + std::to_string(trials) +
                                                            ": cokernel criterion and Hom oracle disagree");
    exact += by_cokernel;
    ++used;
  }
  return std::to_string(used) + " sequences (" + std::to_string(exact) + " exact)";
}

// ---- 8 ----

inline std::string group_objects(testing::Engine& rng) {
  const std::vector<unsigned long> expected{1, 2, 3, 16, 30};
  for (unsigned long n = 1; n <= 5; ++n) {
    unsigned long formula = testing::labelled_structures(n);
    expect(formula == expected[n - 1], "sum n!/|Aut G| for n = " + std::to_string(n) + " is " + std::to_string(formula));
    sets::SetMap u(sets::FinSet::numbered(n), sets::FinSet({"a"}), std::vector<std::size_t>(n, 0));
    Integer c = sets::enumerate_group_objects(u).count();
    expect(c == Integer(expected[n - 1]), "fiber of size " + std::to_string(n) + ": enumerated " + c.get_str());
  }
  std::size_t bases = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 0, 6));
    std::vector<std::size_t> im;
    for (std::size_t i = 0; i < n; ++i) im.push_back(static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(m) - 1)));
    sets::SetMap u(sets::FinSet::numbered(n), sets::FinSet::numbered(m, "y"), im);
    Integer want = 1;
    for (std::size_t y = 0; y < m; ++y) {
      unsigned long k = u.preimage(y).size();
      want *= k == 0 ? 0UL : testing::labelled_structures(k);
    }
    Integer got = sets::enumerate_group_objects(u).count();
    expect(got == want, "multi-fiber base " + std::to_string(trial) + ": " + got.get_str() + " != " + want.get_str());
    ++bases;
  }
  return "sizes 1..5: 1, 2, 3, 16, 30; " + count(bases, "multi-fiber bases");
}

// ---- 9 ----

inline std::string ring_classics(testing::Engine&) {
  ring::FPAlgebra dual = parse({"x"}, {"x^2"});
  auto dim = ring::kaehler(dual).omega.dimension();
  expect(dim && *dim == 1, "Omega of Q[x]/(x^2) does not have dimension 1");

  ring::AlgebraHom to_cusp = ring::AlgebraHom::parse(qx(), parse({"x", "y"}, {"y^2 - x^3"}), {"x"});
  std::string rel = ring::omega_rel(to_cusp).omega.describe();
  expect(rel == "gens dy; rel 2y*dy", "omega_rel of Q[x] -> cusp is " + rel);

  std::vector<std::pair<ring::FPAlgebra, ring::FPModule>> cases;
  cases.push_back({qx(), ring::FPModule::free(qx(), 1)});
  cases.push_back({dual, ring::kaehler(dual).omega});
  ring::FPAlgebra cusp = to_cusp.target();
  cases.push_back({cusp, ring::kaehler(cusp).omega});
  cases.push_back({qx(), ring::FPModule(qx(), {"e1", "e2"}, {{qx().element("x"), qx().element("-1")}})});
  std::size_t checked = 0;
  for (const auto& [a, m] : cases) {
    ring::SquareZeroExtension ext = ring::square_zero(a, m);
    auto [law, check] = ring::reconstruct_group_law(ext.projection(), ext.section());
    expect(check.ok, a.describe() + ": " + check.violation);
    std::vector<ring::Polynomial> bases{a.ring().one()};
    for (std::size_t i = 0; i < a.nvars(); ++i) bases.push_back(a.ring().variable(i));
    for (const auto& base : bases)
      for (std::size_t j = 0; j < m.rank(); ++j)
        for (std::size_t k = 0; k < m.rank(); ++k) {
          auto [pa, pm] = ext.split(law(ext.embed({base, m.generator(j)}), ext.embed({base, m.generator(k)})));
          expect(pa == a.normal_form(base) && m.equal_elements(pm, m.add(m.generator(j), m.generator(k))),
                 a.describe() + ": the law is not componentwise addition");
          ++checked;
        }
  }
  return "dim 1; <dy | 2y dy>; " + count(checked, "generator pairs added");
}

inline std::vector<Criterion> criteria() {
  return {
      {1, "set maps: delta_tilde epi/mono/iso iff f surjective/injective/bijective", 60, {{"set", set_maps_classified}}},
      {2, "truncated N: Omega fibers 0, Z, ..., Z with identity transitions", 5, {{"monoid", nat_omega}}},
      {3,
       "first exact sequence on sets, monoids and algebras",
       300,
       {{"set", first_sequence_sets}, {"monoid", first_sequence_monoids}, {"ring", first_sequence_rings}}},
      {4, "epimorphisms give epi delta_tilde; localization gives iso", 0, {{"set", epi_sets}, {"ring", epi_rings}}},
      {5, "coproducts and base change", 0, {{"set", coproducts_sets}, {"ring", base_change_rings}}},
      {6,
       "representability Hom(Omega, M) = Der",
       0,
       {{"set", represent_sets}, {"monoid", represent_monoids}, {"ring", represent_rings}}},
      {7, "Smith normal form and Hom-exactness oracle", 30, {{"abgrp", smith_random}, {"abgrp", hom_exactness_random}}},
      {8, "group objects: labelled structure counts", 0, {{"set", group_objects}}},
      {9, "Kaehler classics and the reconstructed group law", 0, {{"ring", ring_classics}}},
  };
}

}  // namespace detail

/// Runs the battery. Results come back ordered by criterion id; each
/// criterion draws from its own engine seeded by (seed, id).
inline std::vector<CriterionResult> run_acceptance(const SuiteOptions& options = {}) {
  if (!options.only.empty()) {
    bool known = false;
    for (const auto& g : known_groups()) known = known || g == options.only;
    if (!known) throw InvalidObject("unknown suite group '" + options.only + "'");
  }
  std::vector<CriterionResult> out;
  for (const auto& c : detail::criteria()) {
    CriterionResult res;
    res.id = c.id;
    res.title = c.title;
    res.pass = true;
    std::vector<std::string> details;
    auto start = std::chrono::steady_clock::now();
    for (const auto& part : c.parts) {
      if (!options.only.empty() && part.group != options.only) continue;
      if (std::find(res.groups.begin(), res.groups.end(), part.group) == res.groups.end())
        res.groups.push_back(part.group);
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(c.id)};
      testing::Engine rng(seq);
      try {
        details.push_back(part.group + ": " + part.run(rng));
      } catch (const detail::Failed& f) {
        res.pass = false;
        details.push_back(part.group + ": FAILED " + f.what);
      } catch (const std::exception& e) {
        res.pass = false;
        details.push_back(part.group + ": ERROR " + e.what());
      }
    }
    if (res.groups.empty()) continue;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && res.seconds > c.budget_seconds) {
      res.pass = false;
      std::ostringstream os;
      os << "over the time budget of " << c.budget_seconds << " s";
      details.push_back(os.str());
    }
    for (std::size_t i = 0; i < details.size(); ++i) res.detail += (i ? "; " : "") + details[i];
    out.push_back(std::move(res));
  }
  return out;
}

inline bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

/// "PASS  3  first exact sequence ... (1.23 s)  set: 499 set maps; ..."
inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << " (" << r.seconds << " s)  " << r.detail;
  return os.str();
}

inline nlohmann::json report_json(const std::vector<CriterionResult>& results, const SuiteOptions& options) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : results)
    list.push_back({{"id", r.id},
                    {"title", r.title},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"detail", r.detail},
                    {"groups", r.groups}});
  return {{"seed", options.seed},
          {"only", options.only.empty() ? nlohmann::json(nullptr) : nlohmann::json(options.only)},
          {"all_pass", all_pass(results)},
          {"criteria", list}};
}

}  // namespace cotangent::acceptance
