#pragma once

// The context of commutative algebras over a field. A Beck module over A is
// an A-module M, realized as the square-zero extension A + M; Omega_A is the
// module of Kaehler differentials, presented by the Jacobian of the relators.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/algebra.hpp"
#include "cotangent/beck.hpp"
#include "cotangent/errors.hpp"
#include "cotangent/module.hpp"
#include "cotangent/verdict.hpp"

namespace cotangent::ring {

/// Columns d(r) = (dr/dx_i)_i for the relators r of A.
inline std::vector<Column> jacobian_relations(const FPAlgebra& a) {
  std::vector<Column> out;
  for (const auto& r : a.relators()) {
    Column c;
    for (std::size_t i = 0; i < a.nvars(); ++i) c.push_back(a.normal_form(a.ring().derivative(r, i)));
    out.push_back(c);
  }
  return out;
}

/// d(p) = sum_i dp/dx_i images[i].
inline Column apply_derivation(const FPAlgebra& a, const FPModule& m, const std::vector<Column>& images,
                               const Polynomial& p) {
  Column acc = m.zero_element();
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    Polynomial c = a.ring().derivative(p, i);
    if (c.is_zero()) continue;
    Column t = m.scale(c, images[i]);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = a.ring().add(acc[j], t[j]);
  }
  return m.reduce(acc);
}

/// A k-linear map A -> M with the Leibniz rule: the variables' images
/// extend to a derivation iff every relator goes to zero.
inline bool is_derivation(const FPAlgebra& a, const FPModule& m, const std::vector<Column>& images) {
  if (images.size() != a.nvars() || !(m.algebra() == a)) return false;
  for (const auto& r : a.relators())
    if (!m.is_zero_element(apply_derivation(a, m, images, r))) return false;
  return true;
}

class RingDerivation {
 public:
  RingDerivation(FPAlgebra a, FPModule m, std::vector<Column> images) : a_(std::move(a)), m_(std::move(m)) {
    if (images.size() != a_.nvars()) throw ShapeMismatch("one image per variable required");
    for (const auto& c : images) images_.push_back(m_.reduce(c));
    if (!is_derivation(a_, m_, images_)) throw InvalidModule("the images do not define a derivation");
  }

  const FPAlgebra& algebra() const { return a_; }
  const FPModule& module() const { return m_; }
  const std::vector<Column>& images() const { return images_; }

  Column apply(const Polynomial& p) const { return apply_derivation(a_, m_, images_, p); }

 private:
  FPAlgebra a_;
  FPModule m_;
  std::vector<Column> images_;
};

using RingCotangent = CotangentData<FPModule, RingDerivation>;

/// Omega_A on dx_1..dx_n with the Jacobian relations; the unit sends x_i to dx_i.
inline RingCotangent kaehler(const FPAlgebra& a) {
  std::vector<std::string> names;
  for (const auto& v : a.variables()) names.push_back("d" + v);
  FPModule om(a, names, jacobian_relations(a));
  std::vector<Column> unit;
  for (std::size_t i = 0; i < a.nvars(); ++i) unit.push_back(om.generator(i));
  return {om, RingDerivation(a, om, unit)};
}

inline RingCotangent omega(const FPAlgebra& a) { return kaehler(a); }

inline bool is_zero_derivation(const RingDerivation& d) {
  for (const auto& c : d.images())
    if (!d.module().is_zero_element(c)) return false;
  return true;
}

/// Der_k(A, M) as the kernel of M^n -> M^{relators}, (m_i) |-> (sum_i dr/dx_i m_i)_r.
struct RingDerivations {
  FPModule module;
  ModuleHom embedding;  // into M^n
  FPAlgebra algebra;
  FPModule target;

  RingDerivation decode(const Column& v) const {
    Column flat = embedding.apply(v);
    const std::size_t r = target.rank();
    std::vector<Column> images;
    for (std::size_t i = 0; i < algebra.nvars(); ++i)
      images.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * r),
                          flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
    return RingDerivation(algebra, target, images);
  }
};

inline RingDerivations derivations(const FPAlgebra& a, const FPModule& m) {
  if (!(m.algebra() == a)) throw ShapeMismatch("derivations: module over a different algebra");
  const std::size_t n = a.nvars();
  const std::size_t r = m.rank();
  FPModule src = power(m, n);
  FPModule dst = power(m, a.relators().size());
  std::vector<Column> im;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Column c = dst.zero_element();
      for (std::size_t k = 0; k < a.relators().size(); ++k)
        c[k * r + j] = a.normal_form(a.ring().derivative(a.relators()[k], i));
      im.push_back(c);
    }
  auto ker = kernel(ModuleHom(src, dst, im));
  return {ker.module, ker.inclusion, a, m};
}

/// M over B seen over A through f. Computed when M is finite-dimensional over
/// k (generators: a k-basis) or when f is onto (generators unchanged).
inline FPModule pullback(const AlgebraHom& f, const FPModule& m) {
  if (!(m.algebra() == f.target())) throw ShapeMismatch("pullback: module over a different algebra");
  const FPAlgebra& a = f.source();
  if (f == AlgebraHom::identity(a)) return m;
  if (auto basis = m.standard_basis()) {
    const std::size_t d = basis->size();
    std::vector<std::string> names;
    for (std::size_t k = 0; k < d; ++k) names.push_back("b" + std::to_string(k + 1));
    std::vector<Column> rel;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      auto mat = multiplication_matrix(m, f.images()[i]);
      for (std::size_t j = 0; j < d; ++j) {
        Column c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = a.ring().constant(-mat[k][j]);
        c[j] = a.ring().add(c[j], a.ring().variable(i));
        rel.push_back(c);
      }
    }
    return FPModule(a, names, rel);
  }
  if (auto section = section_images(f)) {
    const PolyRing& rb = f.target().ring();
    std::vector<Column> rel;
    for (const auto& r : m.relations()) {
      Column c;
      for (const auto& p : r) c.push_back(a.normal_form(rb.substitute(p, *section, a.ring())));
      rel.push_back(c);
    }
    // ker f is generated by x_i - s(f(x_i)) and s(J) for the section s.
    std::vector<Polynomial> kernel;
    for (std::size_t i = 0; i < a.nvars(); ++i)
      kernel.push_back(a.normal_form(
          a.ring().sub(a.ring().variable(i), rb.substitute(f.images()[i], *section, a.ring()))));
    for (const auto& rel_b : f.target().relators())
      kernel.push_back(a.normal_form(rb.substitute(rel_b, *section, a.ring())));
    for (const auto& k : kernel)
      for (std::size_t j = 0; j < m.rank(); ++j) {
        Column c(m.rank());
        c[j] = k;
        rel.push_back(c);
      }
    return FPModule(a, m.names(), rel);
  }
  throw SizeLimit("pullback is computed for finite-dimensional modules or surjective maps");
}

/// M tensor_A B, same generators with the relations pushed along f.
inline FPModule pushforward(const AlgebraHom& f, const FPModule& m) {
  if (!(m.algebra() == f.source())) throw ShapeMismatch("pushforward: module over a different algebra");
  std::vector<Column> rel;
  for (const auto& r : m.relations()) {
    Column c;
    for (const auto& p : r) c.push_back(f.apply(p));
    rel.push_back(c);
  }
  return FPModule(f.target(), m.names(), rel);
}

/// The image of a hom between A-modules under - tensor_A B.
inline ModuleHom pushforward_hom(const AlgebraHom& f, const ModuleHom& h) {
  std::vector<Column> im;
  for (const auto& c : h.images()) {
    Column d;
    for (const auto& p : c) d.push_back(f.apply(p));
    im.push_back(d);
  }
  return ModuleHom(pushforward(f, h.source()), pushforward(f, h.target()), im);
}

/// dx_i tensor 1 |-> d(f(x_i)).
inline ModuleHom delta_tilde(const AlgebraHom& f) {
  auto oa = kaehler(f.source());
  auto ob = kaehler(f.target());
  std::vector<Column> im;
  for (const auto& p : f.images()) im.push_back(ob.unit.apply(p));
  return ModuleHom(pushforward(f, oa.omega), ob.omega, im);
}

namespace detail {

inline Simplified relative_quotient(const AlgebraHom& f) {
  auto ob = kaehler(f.target());
  std::vector<Column> rel = ob.omega.relations();
  for (const auto& p : f.images()) rel.push_back(ob.unit.apply(p));
  return simplify(FPModule(f.target(), ob.omega.names(), rel));
}

}  // namespace detail

/// Omega_{B/A}: Omega_B modulo the d(f(x_i)), with redundant generators removed.
inline RingCotangent omega_rel(const AlgebraHom& f) {
  Simplified s = detail::relative_quotient(f);
  std::vector<Column> unit;
  for (std::size_t j = 0; j < f.target().nvars(); ++j) unit.push_back(s.to.images()[j]);
  return {s.module, RingDerivation(f.target(), s.module, unit)};
}

/// The quotient map Omega_B -> Omega_{B/A}.
inline ModuleHom gamma(const AlgebraHom& f) {
  Simplified s = detail::relative_quotient(f);
  return ModuleHom(kaehler(f.target()).omega, s.module, s.to.images());
}

/// Surjections and localizations A -> A[y]/(s y - 1).
inline bool is_epimorphism(const AlgebraHom& f) { return is_surjective(f) || as_localization(f).has_value(); }

/// A -> A[y]/(s y - 1).
inline AlgebraHom localization(const FPAlgebra& a, const Polynomial& s) {
  std::string y;
  for (const char* c : {"y", "z", "w", "u", "v"})
    if (std::find(a.variables().begin(), a.variables().end(), c) == a.variables().end()) {
      y = c;
      break;
    }
  if (y.empty()) y = detail::fresh_names(a.variables(), 1, "inv")[0];
  std::vector<std::string> names = a.variables();
  names.push_back(y);
  PolyRing rb(a.field(), names, a.ring().order());
  std::vector<Polynomial> rel;
  for (const auto& r : a.relators()) rel.push_back(rb.adopt(r));
  rel.push_back(rb.sub(rb.mul(rb.adopt(s), rb.variable(a.nvars())), rb.one()));
  FPAlgebra b(rb, rel);
  std::vector<Polynomial> im;
  for (std::size_t i = 0; i < a.nvars(); ++i) im.push_back(rb.variable(i));
  return AlgebraHom(a, b, im);
}

/// y = z tensor x by presentation union, variables of z first; clashing
/// names from x get "_2" appended.
inline Coproduct<FPAlgebra, AlgebraHom> coproduct(const FPAlgebra& x, const FPAlgebra& z) {
  if (!(x.field() == z.field())) throw ShapeMismatch("coproduct of algebras over different fields");
  std::vector<std::string> names = z.variables();
  for (const auto& v : x.variables()) {
    std::string s = v;
    while (std::find(names.begin(), names.end(), s) != names.end()) s += "_2";
    names.push_back(s);
  }
  PolyRing ry(x.field(), names, z.ring().order());
  const std::size_t nz = z.nvars();
  std::vector<Polynomial> rel;
  for (const auto& r : z.relators()) rel.push_back(ry.adopt(r));
  for (const auto& r : x.relators()) rel.push_back(detail::shift_variables(r, 0, nz, x.nvars(), ry));
  FPAlgebra y(ry, rel);
  std::vector<Polynomial> fi, gi;
  for (std::size_t i = 0; i < x.nvars(); ++i) fi.push_back(ry.variable(nz + i));
  for (std::size_t i = 0; i < nz; ++i) gi.push_back(ry.variable(i));
  return {y, AlgebraHom(x, y, fi), AlgebraHom(z, y, gi)};
}

/// The algebra A + M with (a, m)(a', m') = (aa', am' + a'm), presented as
/// A[mu_1..mu_r] / (I, sum_j r_j mu_j for the relations r of M, mu_j mu_k).
class SquareZeroExtension {
 public:
  using Element = std::pair<Polynomial, Column>;

  SquareZeroExtension(FPAlgebra a, FPModule m) : a_(std::move(a)), m_(std::move(m)), total_(build(a_, m_)) {
    const std::size_t n = a_.nvars();
    const PolyRing& rt = total_.ring();
    std::vector<Polynomial> ui, ei;
    for (std::size_t i = 0; i < n; ++i) ui.push_back(a_.ring().variable(i));
    for (std::size_t j = 0; j < m_.rank(); ++j) ui.push_back(a_.ring().zero());
    for (std::size_t i = 0; i < n; ++i) ei.push_back(rt.variable(i));
    u_.emplace(total_, a_, ui);
    e_.emplace(a_, total_, ei);
  }

  const FPAlgebra& base() const { return a_; }
  const FPModule& module() const { return m_; }
  const FPAlgebra& total() const { return total_; }
  const AlgebraHom& projection() const { return *u_; }
  const AlgebraHom& section() const { return *e_; }

  Element multiply(const Element& x, const Element& y) const {
    Column l = m_.scale(x.first, y.second);
    Column r = m_.scale(y.first, x.second);
    return {a_.mul(x.first, y.first), m_.add(l, r)};
  }

  Polynomial embed(const Element& x) const {
    const PolyRing& rt = total_.ring();
    Polynomial p = rt.adopt(x.first);
    for (std::size_t j = 0; j < m_.rank(); ++j)
      p = rt.add(p, rt.mul(rt.adopt(x.second[j]), rt.variable(a_.nvars() + j)));
    return total_.normal_form(p);
  }

  /// Inverse of embed on normal forms.
  Element split(const Polynomial& p) const {
    const std::size_t n = a_.nvars();
    std::vector<Term> base;
    std::vector<std::vector<Term>> parts(m_.rank());
    const Polynomial reduced = total_.normal_form(p);
    for (const auto& t : reduced.terms()) {
      unsigned mu = 0;
      std::size_t which = 0;
      for (std::size_t j = 0; j < m_.rank(); ++j)
        if (t.m.e[n + j]) {
          mu += t.m.e[n + j];
          which = j;
        }
      Monomial m = t.m;
      for (std::size_t j = 0; j < m_.rank(); ++j) m.e[n + j] = 0;
      if (mu == 0)
        base.push_back({m, t.c});
      else if (mu == 1)
        parts[which].push_back({m, t.c});
      else
        throw InvalidObject("normal form of a square-zero extension has a quadratic term");
    }
    Column c;
    for (auto& q : parts) c.push_back(a_.ring().make(std::move(q)));
    return {a_.normal_form(a_.ring().make(std::move(base))), m_.reduce(c)};
  }

 private:
  static FPAlgebra build(const FPAlgebra& a, const FPModule& m) {
    if (!(m.algebra() == a)) throw ShapeMismatch("square_zero: module over a different algebra");
    std::vector<std::string> names = a.variables();
    for (const auto& g : m.names()) {
      std::string s = g;
      while (std::find(names.begin(), names.end(), s) != names.end()) s += "_";
      names.push_back(s);
    }
    PolyRing rt(a.field(), names, a.ring().order());
    const std::size_t n = a.nvars();
    std::vector<Polynomial> rel;
    for (const auto& r : a.relators()) rel.push_back(rt.adopt(r));
    for (const auto& col : m.relations()) {
      Polynomial p;
      for (std::size_t j = 0; j < m.rank(); ++j) p = rt.add(p, rt.mul(rt.adopt(col[j]), rt.variable(n + j)));
      rel.push_back(p);
    }
    for (std::size_t j = 0; j < m.rank(); ++j)
      for (std::size_t k = j; k < m.rank(); ++k) rel.push_back(rt.mul(rt.variable(n + j), rt.variable(n + k)));
    return FPAlgebra(rt, rel);
  }

  FPAlgebra a_;
  FPModule m_;
  FPAlgebra total_;
  std::optional<AlgebraHom> u_;
  std::optional<AlgebraHom> e_;
};

inline SquareZeroExtension square_zero(const FPAlgebra& a, const FPModule& m) { return SquareZeroExtension(a, m); }

/// The module of a Beck module u : B -> A with section e, for B presented as
/// A[mu_1..mu_r] with the mu_j in ker u and relators of mu-degree 0, 1 or 2
/// (the shape square_zero produces). ker u is then generated by the mu_j and
/// its relations are the relators linear in the mu_j.
inline FPModule beck_to_module(const AlgebraHom& u, const AlgebraHom& e) {
  const FPAlgebra& a = u.target();
  const FPAlgebra& b = u.source();
  const std::size_t n = a.nvars();
  if (!(e.source() == a) || !(e.target() == b) || b.nvars() < n)
    throw InvalidObject("beck_to_module: u and e do not form a Beck module");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(e.images()[i] == b.ring().variable(i)) || !(u.images()[i] == a.ring().variable(i)))
      throw InvalidObject("beck_to_module: the base variables must come first and be fixed");
  }
  const std::size_t r = b.nvars() - n;
  for (std::size_t j = 0; j < r; ++j)
    if (!u.images()[n + j].is_zero()) throw InvalidObject("beck_to_module: extra generators must lie in ker u");
  std::vector<std::string> names(b.variables().begin() + static_cast<std::ptrdiff_t>(n), b.variables().end());
  std::vector<Polynomial> degree0;
  std::vector<Column> rel;
  for (const auto& p : b.relators()) {
    int deg = -1;
    std::vector<std::vector<Term>> parts(r);
    std::vector<Term> base;
    for (const auto& t : p.terms()) {
      unsigned mu = 0;
      std::size_t which = 0;
      for (std::size_t j = 0; j < r; ++j)
        if (t.m.e[n + j]) {
          mu += t.m.e[n + j];
          which = j;
        }
      if (deg == -1) deg = static_cast<int>(mu);
      if (static_cast<int>(mu) != deg || mu > 2)
        throw InvalidObject("beck_to_module: relator " + b.format(p) + " is not homogeneous of degree <= 2");
      Monomial m = t.m;
      for (std::size_t j = 0; j < r; ++j) m.e[n + j] = 0;
      if (mu == 0) base.push_back({m, t.c});
      if (mu == 1) parts[which].push_back({m, t.c});
    }
    if (deg == 0) degree0.push_back(a.ring().make(std::move(base)));
    if (deg == 1) {
      Column c;
      for (auto& q : parts) c.push_back(a.ring().make(std::move(q)));
      rel.push_back(c);
    }
  }
  if (!(FPAlgebra(a.ring(), degree0) == a))
    throw InvalidObject("beck_to_module: the relators free of the extra generators do not present the base");
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j; k < r; ++k)
      if (!b.contains(b.ring().mul(b.ring().variable(n + j), b.ring().variable(n + k))))
        throw InvalidObject("beck_to_module: ker u does not square to zero");
  return FPModule(a, names, rel);
}

/// m(r, s) = r + s - e(u(r)) on the fibered product B x_A B.
class GroupLaw {
 public:
  GroupLaw(AlgebraHom u, AlgebraHom e) : u_(std::move(u)), e_(std::move(e)) {}

  const AlgebraHom& projection() const { return u_; }
  const AlgebraHom& section() const { return e_; }

  bool same_fiber(const Polynomial& r, const Polynomial& s) const { return u_.apply(r) == u_.apply(s); }

  Polynomial operator()(const Polynomial& r, const Polynomial& s) const {
    if (!same_fiber(r, s)) throw ShapeMismatch("group law: arguments lie over different points of the base");
    const FPAlgebra& b = u_.source();
    return b.normal_form(b.ring().sub(b.ring().add(r, s), e_.apply(u_.apply(r))));
  }

  Polynomial zero_over(const Polynomial& r) const { return e_.apply(u_.apply(r)); }

  Polynomial negate(const Polynomial& r) const {
    const FPAlgebra& b = u_.source();
    return b.normal_form(b.ring().sub(b.ring().scale(zero_over(r), 2), r));
  }

 private:
  AlgebraHom u_;
  AlgebraHom e_;
};

struct LawCheck {
  bool ok = true;
  std::string violation;
};

/// Checks the abelian group object axioms of the law on the variables of B
/// and their translates by the elements y - e(u(y)) of ker u: unit, inverse,
/// commutativity, associativity, compatibility with u and with products.
inline LawCheck verify_group_law(const GroupLaw& m) {
  const FPAlgebra& b = m.projection().source();
  const PolyRing& r = b.ring();
  std::vector<Polynomial> points{r.one()};
  std::vector<Polynomial> kernel{r.zero()};
  for (std::size_t i = 0; i < b.nvars(); ++i) {
    Polynomial y = b.normal_form(r.variable(i));
    points.push_back(y);
    Polynomial k = b.normal_form(r.sub(y, m.zero_over(y)));
    if (!k.is_zero()) kernel.push_back(k);
  }
  auto fail = [&](const std::string& axiom, const Polynomial& p) {
    return LawCheck{false, axiom + " fails at " + b.format(p)};
  };
  for (const auto& p : points) {
    Polynomial z = m.zero_over(p);
    if (!(m(p, z) == p) || !(m(z, p) == p)) return fail("unit", p);
    Polynomial q = m.negate(p);
    if (!m.same_fiber(p, q) || !(m(p, q) == z)) return fail("inverse", p);
    for (const auto& k1 : kernel) {
      Polynomial s = b.add(p, k1);
      Polynomial ms = m(p, s);
      if (!(ms == m(s, p))) return fail("commutativity", p);
      if (!(m.projection().apply(ms) == m.projection().apply(p))) return fail("fiber compatibility", p);
      for (const auto& k2 : kernel) {
        Polynomial t = b.add(p, k2);
        if (!(m(ms, t) == m(p, m(s, t)))) return fail("associativity", p);
        for (const auto& p2 : points) {
          Polynomial s2 = b.add(p2, k2);
          if (!(m(b.mul(p, p2), b.mul(s, s2)) == b.mul(ms, m(p2, s2)))) return fail("multiplicativity", p);
        }
      }
    }
  }
  return {};
}

/// The law of a Beck module u : B -> A with section e. Throws InvalidObject
/// unless u e = id; axiom failures are reported in the returned check.
inline std::pair<GroupLaw, LawCheck> reconstruct_group_law(const AlgebraHom& u, const AlgebraHom& e) {
  if (!(u.source() == e.target()) || !(u.target() == e.source()))
    throw ShapeMismatch("reconstruct_group_law: u and e are not opposite");
  if (!(compose(u, e) == AlgebraHom::identity(u.target())))
    throw InvalidObject("reconstruct_group_law: u o e is not the identity");
  GroupLaw m(u, e);
  LawCheck c = verify_group_law(m);
  return {m, c};
}

struct BaseChange {
  FPAlgebra extended;  // A tensor_k k'
  FPModule left;       // Omega_A tensor_A A'
  FPModule right;      // Omega_{A'/k'}
  IsoVerdict verdict;
};

struct Context {
  using Object = FPAlgebra;
  using Morphism = AlgebraHom;
  using Module = FPModule;
  using Hom = ModuleHom;
  using Unit = RingDerivation;

  static RingCotangent omega(const FPAlgebra& a) { return ring::omega(a); }
  static FPModule pullback(const AlgebraHom& f, const FPModule& m) { return ring::pullback(f, m); }
  static FPModule pushforward(const AlgebraHom& f, const FPModule& m) { return ring::pushforward(f, m); }
  static ModuleHom delta_tilde(const AlgebraHom& f) { return ring::delta_tilde(f); }
  static RingCotangent omega_rel(const AlgebraHom& f) { return ring::omega_rel(f); }
  static ModuleHom gamma(const AlgebraHom& f) { return ring::gamma(f); }
  static ModuleHom compose(const ModuleHom& a, const ModuleHom& b) { return ring::compose(a, b); }
  static HomClass classify(const ModuleHom& h) { return ring::classify(h); }
  static std::optional<ModuleHom> inverse(const ModuleHom& h) { return ring::inverse(h); }
  static bool is_identity(const ModuleHom& h) { return ring::is_identity(h); }
  static SequenceVerdict check_right_exact(const ModuleHom& r, const ModuleHom& s) {
    return ring::check_right_exact(r, s);
  }
  static bool is_epimorphism(const AlgebraHom& f) { return ring::is_epimorphism(f); }
  static Coproduct<FPAlgebra, AlgebraHom> coproduct(const FPAlgebra& x, const FPAlgebra& z) {
    return ring::coproduct(x, z);
  }
};

static_assert(BeckContext<Context>);

/// Omega_{A/k} tensor_A A' against Omega_{A'/k'} for A' = A tensor_k k'.
inline BaseChange base_change_check(const FPAlgebra& a, const FPAlgebra& k2) {
  auto cp = ring::coproduct(a, k2);
  return {cp.y, ring::pushforward(cp.f, kaehler(a).omega), omega_rel(cp.g).omega, check_theorem3<Context>(a, k2)};
}

/// The algebra homs of the standard catalog: Q[x] -> Q[x]/(x^2),
/// Q[x] -> Q[x,y]/(y^2 - x^3), Q[x] -> Q[x,y]/(xy - 1), Q[x,y] -> Q[x]
/// with y |-> x^2.
inline std::vector<AlgebraHom> hom_catalog() {
  Field q = Field::rationals();
  FPAlgebra qx = FPAlgebra::polynomial(q, {"x"});
  FPAlgebra qxy = FPAlgebra::polynomial(q, {"x", "y"});
  FPAlgebra dual = FPAlgebra::parse(q, {"x"}, {"x^2"});
  FPAlgebra cusp = FPAlgebra::parse(q, {"x", "y"}, {"y^2 - x^3"});
  FPAlgebra loc = FPAlgebra::parse(q, {"x", "y"}, {"x*y - 1"});
  return {AlgebraHom::parse(qx, dual, {"x"}), AlgebraHom::parse(qx, cusp, {"x"}), AlgebraHom::parse(qx, loc, {"x"}),
          AlgebraHom::parse(qxy, qx, {"x", "x^2"})};
}

/// Finite-dimensional test algebras for the representability suite.
inline std::vector<FPAlgebra> finite_catalog() {
  Field q = Field::rationals();
  return {
      FPAlgebra::parse(q, {"x"}, {"x^2"}),
      FPAlgebra::parse(q, {"x"}, {"x^3"}),
      FPAlgebra::parse(q, {"x"}, {"x^2 - 1"}),
      FPAlgebra::parse(q, {"x", "y"}, {"x^2", "x*y", "y^2"}),
      FPAlgebra::parse(q, {"x", "y"}, {"x^2", "y^2"}),
      FPAlgebra::parse(q, {"x", "y"}, {"x^2 - y^2", "x*y"}),
      FPAlgebra::parse(Field::prime(3), {"x"}, {"x^3"}),
      FPAlgebra::parse(Field::prime(2), {"x", "y"}, {"x^2", "y^2 - x*y"}),
  };
}

}  // namespace cotangent::ring
