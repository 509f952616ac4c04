#pragma once

// Brute-force checks for the set context.

#include <set>
#include <vector>

#include "cotangent/set_context.hpp"
#include "cotangent/testing/hom_oracle.hpp"

namespace cotangent::testing {

/// Hom-definition exactness of a sequence of set Beck modules against test
/// modules whose fibers are among 0, Z, Z/2, Z/3, Z/4. Hom between set
/// modules is a product over fibers, so the test runs fiber by fiber.
inline bool set_hom_exact(const sets::SetBeckHom& r, const sets::SetBeckHom& s) {
  const std::vector<FiniteTestGroup> fibers = {{{}}, {{2}}, {{3}}, {{4}}};
  for (std::size_t y = 0; y < r.components().size(); ++y) {
    for (const auto& u : fibers)
      if (!hom_exact_for(r.component(y), s.component(y), u)) return false;
    if (!hom_exact_for_integers(r.component(y), s.component(y))) return false;
  }
  return true;
}

/// Canonical coordinates of a section, fiber by fiber.
inline std::vector<IntVector> canonical_section(const sets::SetBeckModule& b, const sets::FiberSection& s) {
  std::vector<IntVector> out;
  for (std::size_t x = 0; x < s.size(); ++x) out.push_back(b.fibers[x].canonical(s[x]));
  return out;
}

/// Every section of a module with finite fibers, enumerated directly.
inline std::set<std::vector<IntVector>> enumerate_sections(const sets::SetBeckModule& b) {
  std::vector<std::vector<IntVector>> per_fiber;
  for (const auto& g : b.fibers) per_fiber.push_back(g.elements());
  std::set<std::vector<IntVector>> out;
  std::vector<std::size_t> pick(per_fiber.size(), 0);
  for (const auto& p : per_fiber)
    if (p.empty()) return out;
  for (;;) {
    sets::FiberSection s;
    for (std::size_t x = 0; x < pick.size(); ++x) s.push_back(per_fiber[x][pick[x]]);
    out.insert(canonical_section(b, s));
    std::size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < per_fiber[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) break;
  }
  return out;
}

/// Hom(Omega_X, b) -> Der(X, b), phi |-> phi(eta), is a bijection onto the
/// directly enumerated sections.
inline bool set_representability_bijective(const sets::FinSet& x, const sets::SetBeckModule& b) {
  sets::SetCotangent om = sets::omega(x);
  sets::SetHomGroup hg = sets::hom_group(om.omega, b);
  std::set<std::vector<IntVector>> via_homs;
  std::size_t count = 0;
  for (const auto& e : hg.group.elements()) {
    sets::SetBeckHom phi = hg.decode(e);
    sets::FiberSection s;
    for (std::size_t i = 0; i < x.size(); ++i) s.push_back(phi.component(i).apply(om.unit[i]));
    via_homs.insert(canonical_section(b, s));
    ++count;
  }
  return via_homs.size() == count && via_homs == enumerate_sections(b);
}

/// |Aut G| by brute force: bijective endomorphisms among all generator assignments.
inline unsigned long automorphism_count(const FiniteTestGroup& u) {
  std::vector<Integer> inv;
  for (auto m : u.moduli) inv.push_back(static_cast<unsigned long>(m));
  FGAbGroup g = FGAbGroup::from_invariants(inv);
  const auto elems = u.elements();
  unsigned long count = 0;
  for (const auto& images : enumerate_homs(g, u)) {
    std::set<FiniteTestGroup::Element> hit;
    for (const auto& e : elems) {
      FiniteTestGroup::Element acc(u.moduli.size(), 0);
      for (std::size_t j = 0; j < e.size(); ++j) u.add_multiple(acc, static_cast<unsigned long>(e[j]), images[j]);
      hit.insert(acc);
    }
    if (hit.size() == elems.size()) ++count;
  }
  return count;
}

inline unsigned long factorial(unsigned long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Number of labelled abelian group structures on an n-element set.
inline unsigned long labelled_structures(unsigned long n) {
  unsigned long total = 0;
  for (const auto& u : small_test_groups())
    if (u.order() == n) total += factorial(n) / automorphism_count(u);
  return total;
}

}  // namespace cotangent::testing
