#pragma once

// Beck modules over finite sets: a module over X is a family of abelian
// groups indexed by X and a morphism is a family of homomorphisms.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cotangent/abgrp.hpp"
#include "cotangent/beck.hpp"

namespace cotangent::sets {

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw InvalidObject("FinSet: duplicate labels");
  }

  /// {prefix1, ..., prefixn}
  static FinSet numbered(std::size_t n, const std::string& prefix = "") {
    std::vector<std::string> l;
    for (std::size_t i = 1; i <= n; ++i) l.push_back(prefix + std::to_string(i));
    return FinSet(std::move(l));
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidObject("FinSet: unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<std::string> labels_;
};

class SetMap {
 public:
  SetMap(FinSet source, FinSet target, std::vector<std::size_t> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.size()) throw InvalidObject("SetMap: one image per source element required");
    for (auto i : images_)
      if (i >= target_.size()) throw InvalidObject("SetMap: image index out of range");
  }

  static SetMap identity(const FinSet& x) {
    std::vector<std::size_t> im(x.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
    return SetMap(x, x, im);
  }

  const FinSet& source() const { return source_; }
  const FinSet& target() const { return target_; }
  const std::vector<std::size_t>& images() const { return images_; }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }

  /// Source indices over y, in source order.
  std::vector<std::size_t> preimage(std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] == y) out.push_back(i);
    return out;
  }

  bool is_injective() const {
    std::set<std::size_t> s(images_.begin(), images_.end());
    return s.size() == images_.size();
  }

  bool is_surjective() const {
    std::set<std::size_t> s(images_.begin(), images_.end());
    return s.size() == target_.size();
  }

  friend bool operator==(const SetMap&, const SetMap&) = default;

 private:
  FinSet source_;
  FinSet target_;
  std::vector<std::size_t> images_;
};

/// second ∘ first
inline SetMap compose(const SetMap& second, const SetMap& first) {
  if (!(first.target() == second.source())) throw ShapeMismatch("compose: sets do not match");
  std::vector<std::size_t> im;
  for (auto i : first.images()) im.push_back(second(i));
  return SetMap(first.source(), second.target(), im);
}

/// Every map X -> Y.
inline std::vector<SetMap> all_maps(const FinSet& x, const FinSet& y) {
  std::vector<SetMap> out;
  if (y.empty() && !x.empty()) return out;
  std::vector<std::size_t> im(x.size(), 0);
  for (;;) {
    out.emplace_back(x, y, im);
    std::size_t k = 0;
    while (k < im.size()) {
      if (++im[k] < y.size()) break;
      im[k] = 0;
      ++k;
    }
    if (k == im.size()) break;
  }
  return out;
}

struct SetBeckModule {
  FinSet base;
  std::vector<FGAbGroup> fibers;

  SetBeckModule() = default;
  SetBeckModule(FinSet b, std::vector<FGAbGroup> f) : base(std::move(b)), fibers(std::move(f)) {
    if (fibers.size() != base.size()) throw InvalidModule("SetBeckModule: one fiber per base element required");
  }

  bool is_zero() const {
    return std::all_of(fibers.begin(), fibers.end(), [](const FGAbGroup& g) { return g.is_zero(); });
  }

  friend bool operator==(const SetBeckModule&, const SetBeckModule&) = default;
};

class SetBeckHom {
 public:
  SetBeckHom(SetBeckModule source, SetBeckModule target, std::vector<AbHom> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (!(source_.base == target_.base)) throw ShapeMismatch("SetBeckHom: modules over different sets");
    if (components_.size() != source_.base.size()) throw ShapeMismatch("SetBeckHom: one component per fiber");
    for (std::size_t x = 0; x < components_.size(); ++x)
      if (!(components_[x].source() == source_.fibers[x]) || !(components_[x].target() == target_.fibers[x]))
        throw ShapeMismatch("SetBeckHom: component " + std::to_string(x) + " has the wrong fibers");
  }

  static SetBeckHom identity(const SetBeckModule& m) {
    std::vector<AbHom> c;
    for (const auto& g : m.fibers) c.push_back(AbHom::identity(g));
    return SetBeckHom(m, m, c);
  }

  const SetBeckModule& source() const { return source_; }
  const SetBeckModule& target() const { return target_; }
  const std::vector<AbHom>& components() const { return components_; }
  const AbHom& component(std::size_t x) const { return components_.at(x); }

 private:
  SetBeckModule source_;
  SetBeckModule target_;
  std::vector<AbHom> components_;
};

/// A section of a Beck module: one element (generator coordinates) per fiber.
using FiberSection = std::vector<IntVector>;

using SetCotangent = CotangentData<SetBeckModule, FiberSection>;

inline SetBeckHom compose(const SetBeckHom& second, const SetBeckHom& first) {
  std::vector<AbHom> c;
  for (std::size_t x = 0; x < first.components().size(); ++x)
    c.push_back(cotangent::compose(second.component(x), first.component(x)));
  return SetBeckHom(first.source(), second.target(), c);
}

inline bool equal_maps(const SetBeckHom& a, const SetBeckHom& b) {
  if (a.components().size() != b.components().size()) return false;
  for (std::size_t x = 0; x < a.components().size(); ++x)
    if (!cotangent::equal_maps(a.component(x), b.component(x))) return false;
  return true;
}

inline HomClass classify(const SetBeckHom& h) {
  HomClass c{true, true, true};
  for (const auto& comp : h.components()) {
    HomClass k = classify_hom(comp);
    c.is_mono = c.is_mono && k.is_mono;
    c.is_epi = c.is_epi && k.is_epi;
  }
  c.is_iso = c.is_mono && c.is_epi;
  return c;
}

inline std::optional<SetBeckHom> inverse(const SetBeckHom& h) {
  std::vector<AbHom> c;
  for (const auto& comp : h.components()) {
    auto inv = cotangent::inverse(comp);
    if (!inv) return std::nullopt;
    c.push_back(*inv);
  }
  return SetBeckHom(h.target(), h.source(), c);
}

/// Fiberwise right exactness; witnesses carry the fiber label.
inline SequenceVerdict check_right_exact(const SetBeckHom& r, const SetBeckHom& s) {
  if (!(r.target() == s.source())) throw ShapeMismatch("check_right_exact: middle modules differ");
  for (std::size_t y = 0; y < r.components().size(); ++y) {
    SequenceVerdict v = cotangent::check_right_exact(r.component(y), s.component(y), r.source().base.label(y));
    if (!v.exact) return v;
  }
  return SequenceVerdict::success();
}

/// L_X(E -> X): the free abelian group on each fiber of l.
inline SetBeckModule abelianize(const SetMap& l) {
  std::vector<FGAbGroup> f;
  for (std::size_t x = 0; x < l.target().size(); ++x) f.push_back(FGAbGroup::free(l.preimage(x).size()));
  return SetBeckModule(l.target(), f);
}

inline SetCotangent omega(const FinSet& x) {
  SetBeckModule m = abelianize(SetMap::identity(x));
  return {m, FiberSection(x.size(), IntVector{1})};
}

/// Der(X, b) is the group of all sections, (+)_x b_x.
struct SetDerivations {
  FGAbGroup group;
  SetBeckModule module;

  FiberSection decode(const IntVector& element) const {
    FiberSection s;
    std::size_t off = 0;
    for (const auto& g : module.fibers) {
      s.emplace_back(element.begin() + static_cast<std::ptrdiff_t>(off),
                     element.begin() + static_cast<std::ptrdiff_t>(off + g.ngens()));
      off += g.ngens();
    }
    return s;
  }
};

inline SetDerivations derivations(const SetBeckModule& b) { return {direct_sum(b.fibers), b}; }

/// True iff the section is the neutral section e_b.
inline bool is_zero_derivation(const SetBeckModule& b, const FiberSection& theta) {
  if (theta.size() != b.fibers.size()) throw ShapeMismatch("derivation: one value per fiber required");
  for (std::size_t x = 0; x < theta.size(); ++x)
    if (!b.fibers[x].is_neutral(theta[x])) return false;
  return true;
}

/// F_x = G_{f(x)}
inline SetBeckModule pullback(const SetMap& f, const SetBeckModule& n) {
  if (!(n.base == f.target())) throw ShapeMismatch("pullback: module is not over the target of f");
  std::vector<FGAbGroup> fib;
  for (auto y : f.images()) fib.push_back(n.fibers[y]);
  return SetBeckModule(f.source(), fib);
}

inline SetBeckHom pullback_hom(const SetMap& f, const SetBeckHom& h) {
  std::vector<AbHom> c;
  for (auto y : f.images()) c.push_back(h.component(y));
  return SetBeckHom(pullback(f, h.source()), pullback(f, h.target()), c);
}

/// G_y = (+)_{f(x) = y} F_x, summands in source order.
inline SetBeckModule pushforward(const SetMap& f, const SetBeckModule& m) {
  if (!(m.base == f.source())) throw ShapeMismatch("pushforward: module is not over the source of f");
  std::vector<FGAbGroup> fib;
  for (std::size_t y = 0; y < f.target().size(); ++y) {
    std::vector<FGAbGroup> parts;
    for (auto x : f.preimage(y)) parts.push_back(m.fibers[x]);
    fib.push_back(direct_sum(parts));
  }
  return SetBeckModule(f.target(), fib);
}

inline SetBeckHom pushforward_hom(const SetMap& f, const SetBeckHom& h) {
  std::vector<AbHom> c;
  SetBeckModule s = pushforward(f, h.source()), t = pushforward(f, h.target());
  for (std::size_t y = 0; y < f.target().size(); ++y) {
    std::vector<IntMatrix> blocks;
    for (auto x : f.preimage(y)) blocks.push_back(h.component(x).matrix());
    c.emplace_back(s.fibers[y], t.fibers[y], block_diagonal(blocks));
  }
  return SetBeckHom(s, t, c);
}

/// The reordering (g∘f)_! M -> g_! f_! M of direct summands.
inline SetBeckHom pushforward_composite_iso(const SetMap& f, const SetMap& g, const SetBeckModule& m) {
  SetMap gf = compose(g, f);
  SetBeckModule s = pushforward(gf, m), t = pushforward(g, pushforward(f, m));
  std::vector<std::size_t> offset(m.fibers.size());
  std::vector<AbHom> c;
  for (std::size_t z = 0; z < g.target().size(); ++z) {
    std::size_t off = 0;
    for (auto y : g.preimage(z))
      for (auto x : f.preimage(y)) {
        offset[x] = off;
        off += m.fibers[x].ngens();
      }
    IntMatrix mat(t.fibers[z].ngens(), s.fibers[z].ngens());
    std::size_t col = 0;
    for (auto x : gf.preimage(z))
      for (std::size_t k = 0; k < m.fibers[x].ngens(); ++k) mat(offset[x] + k, col++) = 1;
    c.emplace_back(s.fibers[z], t.fibers[z], mat);
  }
  return SetBeckHom(s, t, c);
}

/// f_!(Omega_X) -> Omega_Y: the codiagonal Z^{|f^-1(y)|} -> Z over each y.
inline SetBeckHom delta_tilde(const SetMap& f) {
  SetBeckModule s = pushforward(f, omega(f.source()).omega);
  SetBeckModule t = omega(f.target()).omega;
  std::vector<AbHom> c;
  for (std::size_t y = 0; y < f.target().size(); ++y) {
    IntMatrix row(1, s.fibers[y].ngens());
    for (std::size_t j = 0; j < row.cols(); ++j) row(0, j) = 1;
    c.emplace_back(s.fibers[y], t.fibers[y], row);
  }
  return SetBeckHom(s, t, c);
}

/// Omega_f: Omega_Y modulo the submodule generated by the values eta_{f(x)}.
inline SetCotangent omega_rel(const SetMap& f) {
  SetCotangent om = omega(f.target());
  std::vector<FGAbGroup> fib;
  for (std::size_t y = 0; y < f.target().size(); ++y) {
    const std::size_t k = f.preimage(y).size();
    IntMatrix rel(1, k);
    for (std::size_t j = 0; j < k; ++j) rel(0, j) = 1;
    fib.emplace_back(1, rel);
  }
  return {SetBeckModule(f.target(), fib), om.unit};
}

/// The quotient map Omega_Y -> Omega_f.
inline SetBeckHom gamma(const SetMap& f) {
  SetBeckModule s = omega(f.target()).omega, t = omega_rel(f).omega;
  std::vector<AbHom> c;
  for (std::size_t y = 0; y < f.target().size(); ++y) c.emplace_back(s.fibers[y], t.fibers[y], IntMatrix::identity(1));
  return SetBeckHom(s, t, c);
}

/// Hom(A, B) = prod_x Hom(A_x, B_x).
struct SetHomGroup {
  FGAbGroup group;
  std::vector<HomGroup> factors;
  SetBeckModule source;
  SetBeckModule target;

  SetBeckHom decode(const IntVector& element) const {
    std::vector<AbHom> c;
    std::size_t off = 0;
    for (const auto& f : factors) {
      IntVector part(element.begin() + static_cast<std::ptrdiff_t>(off),
                     element.begin() + static_cast<std::ptrdiff_t>(off + f.group.ngens()));
      c.push_back(f.decode(part));
      off += f.group.ngens();
    }
    return SetBeckHom(source, target, c);
  }
};

inline SetHomGroup hom_group(const SetBeckModule& a, const SetBeckModule& b) {
  if (!(a.base == b.base)) throw ShapeMismatch("hom_group: modules over different sets");
  std::vector<HomGroup> factors;
  std::vector<FGAbGroup> groups;
  for (std::size_t x = 0; x < a.fibers.size(); ++x) {
    factors.push_back(cotangent::hom_group(a.fibers[x], b.fibers[x]));
    groups.push_back(factors.back().group);
  }
  return {direct_sum(groups), factors, a, b};
}

/// Both sides of each equivalence, computed independently.
struct EnsVerdict {
  bool surjective = false;
  bool injective = false;
  HomClass delta;

  bool consistent() const {
    return delta.is_epi == surjective && delta.is_mono == injective && delta.is_iso == (surjective && injective);
  }
};

inline EnsVerdict prop_ens_check(const SetMap& f) {
  return {f.is_surjective(), f.is_injective(), classify(delta_tilde(f))};
}

/// Disjoint union z + x; labels are prefixed "0:" (from z) and "1:" (from x).
inline Coproduct<FinSet, SetMap> coproduct(const FinSet& x, const FinSet& z) {
  std::vector<std::string> labels;
  for (const auto& l : z.labels()) labels.push_back("0:" + l);
  for (const auto& l : x.labels()) labels.push_back("1:" + l);
  FinSet y(labels);
  std::vector<std::size_t> fi, gi;
  for (std::size_t i = 0; i < x.size(); ++i) fi.push_back(z.size() + i);
  for (std::size_t i = 0; i < z.size(); ++i) gi.push_back(i);
  return {y, SetMap(x, y, fi), SetMap(z, y, gi)};
}

/// An abelian group law on one fiber: table[a][b] = a + b, zero, and negation.
struct FiberGroupLaw {
  std::vector<std::vector<std::size_t>> table;
  std::size_t zero = 0;
  std::vector<std::size_t> negation;
};

namespace detail {

class LawSearch {
 public:
  explicit LawSearch(std::size_t n) : n_(n), t_(n, std::vector<long>(n, -1)) {}

  std::vector<FiberGroupLaw> run() {
    for (std::size_t e = 0; e < n_; ++e) {
      for (auto& row : t_) std::fill(row.begin(), row.end(), -1);
      for (std::size_t a = 0; a < n_; ++a) t_[e][a] = t_[a][e] = static_cast<long>(a);
      e_ = e;
      cells_.clear();
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = a; b < n_; ++b)
          if (a != e && b != e) cells_.push_back({a, b});
      fill(0);
    }
    return std::move(out_);
  }

 private:
  bool used_in_row(std::size_t a, long v) const {
    for (std::size_t b = 0; b < n_; ++b)
      if (t_[a][b] == v) return true;
    return false;
  }

  bool associative_so_far() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        long ab = t_[a][b];
        if (ab < 0) continue;
        for (std::size_t c = 0; c < n_; ++c) {
          long bc = t_[b][c];
          if (bc < 0) continue;
          long l = t_[static_cast<std::size_t>(ab)][c], r = t_[a][static_cast<std::size_t>(bc)];
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  }

  void fill(std::size_t k) {
    if (k == cells_.size()) {
      FiberGroupLaw law;
      law.zero = e_;
      law.table.assign(n_, std::vector<std::size_t>(n_));
      law.negation.assign(n_, 0);
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
          law.table[a][b] = static_cast<std::size_t>(t_[a][b]);
          if (law.table[a][b] == e_) law.negation[a] = b;
        }
      out_.push_back(std::move(law));
      return;
    }
    auto [a, b] = cells_[k];
    for (std::size_t v = 0; v < n_; ++v) {
      long lv = static_cast<long>(v);
      if (used_in_row(a, lv) || used_in_row(b, lv)) continue;
      t_[a][b] = t_[b][a] = lv;
      if (associative_so_far()) fill(k + 1);
      t_[a][b] = t_[b][a] = -1;
    }
  }

  std::size_t n_;
  std::size_t e_ = 0;
  std::vector<std::vector<long>> t_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::vector<FiberGroupLaw> out_;
};

}  // namespace detail

/// Every abelian group law on an n-element set (labelled, so isomorphic
/// laws on different labellings count separately).
inline std::vector<FiberGroupLaw> group_laws(std::size_t n) {
  if (n == 0) return {};
  return detail::LawSearch(n).run();
}

/// Abelian group objects on u : F -> X. The structure is fiberwise, so it is
/// recorded as one list of laws per fiber; the objects are the choices of
/// one law in every fiber.
struct GroupObjectEnumeration {
  std::vector<std::vector<FiberGroupLaw>> per_fiber;

  Integer count() const {
    Integer c = 1;
    for (const auto& laws : per_fiber) c *= static_cast<unsigned long>(laws.size());
    return c;
  }

  /// The full structures as one law per fiber, in lexicographic order of choices.
  std::vector<std::vector<const FiberGroupLaw*>> structures() const {
    std::vector<std::vector<const FiberGroupLaw*>> out;
    if (count() == 0) return out;
    std::vector<std::size_t> pick(per_fiber.size(), 0);
    for (;;) {
      std::vector<const FiberGroupLaw*> s;
      for (std::size_t x = 0; x < pick.size(); ++x) s.push_back(&per_fiber[x][pick[x]]);
      out.push_back(std::move(s));
      std::size_t k = pick.size();
      for (;;) {
        if (k == 0) return out;
        --k;
        if (++pick[k] < per_fiber[k].size()) break;
        pick[k] = 0;
      }
    }
  }
};

inline constexpr std::size_t group_object_limit = 8;

inline GroupObjectEnumeration enumerate_group_objects(const SetMap& u) {
  if (u.source().size() > group_object_limit)
    throw SizeLimit("enumerate_group_objects: total space has more than " + std::to_string(group_object_limit) +
                    " elements");
  std::map<std::size_t, std::vector<FiberGroupLaw>> by_size;
  GroupObjectEnumeration e;
  for (std::size_t x = 0; x < u.target().size(); ++x) {
    std::size_t n = u.preimage(x).size();
    if (!by_size.count(n)) by_size[n] = group_laws(n);
    e.per_fiber.push_back(by_size[n]);
  }
  return e;
}

/// The context binding used by the generic theorem checkers.
struct Context {
  using Object = FinSet;
  using Morphism = SetMap;
  using Module = SetBeckModule;
  using Hom = SetBeckHom;
  using Unit = FiberSection;

  static SetCotangent omega(const FinSet& x) { return sets::omega(x); }
  static SetBeckModule pullback(const SetMap& f, const SetBeckModule& m) { return sets::pullback(f, m); }
  static SetBeckModule pushforward(const SetMap& f, const SetBeckModule& m) { return sets::pushforward(f, m); }
  static SetBeckHom delta_tilde(const SetMap& f) { return sets::delta_tilde(f); }
  static SetCotangent omega_rel(const SetMap& f) { return sets::omega_rel(f); }
  static SetBeckHom gamma(const SetMap& f) { return sets::gamma(f); }
  static SetBeckHom compose(const SetBeckHom& a, const SetBeckHom& b) { return sets::compose(a, b); }
  static HomClass classify(const SetBeckHom& h) { return sets::classify(h); }
  static std::optional<SetBeckHom> inverse(const SetBeckHom& h) { return sets::inverse(h); }
  static bool is_identity(const SetBeckHom& h) {
    return h.source() == h.target() && sets::equal_maps(h, SetBeckHom::identity(h.source()));
  }
  static SequenceVerdict check_right_exact(const SetBeckHom& r, const SetBeckHom& s) {
    return sets::check_right_exact(r, s);
  }
  static bool is_epimorphism(const SetMap& f) { return f.is_surjective(); }
  static Coproduct<FinSet, SetMap> coproduct(const FinSet& x, const FinSet& z) { return sets::coproduct(x, z); }
};

static_assert(BeckContext<Context>);

}  // namespace cotangent::sets
