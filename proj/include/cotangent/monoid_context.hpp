#pragma once

// Beck modules over finite commutative monoids: a family of abelian groups
// A_x with translation maps h_x : A_y -> A_{x*y} satisfying
// h_x h_y = h_{x*y} and h_1 = id.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cotangent/abgrp.hpp"
#include "cotangent/beck.hpp"

namespace cotangent::monoids {

class FinCommMonoid {
 public:
  FinCommMonoid() : FinCommMonoid({"1"}, {{0}}, 0) {}

  FinCommMonoid(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table, std::size_t unit)
      : labels_(std::move(labels)), table_(std::move(table)), unit_(unit) {
    const std::size_t n = labels_.size();
    if (n == 0) throw InvalidObject("monoid: a monoid has at least one element");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n)
      throw InvalidObject("monoid: duplicate labels");
    if (unit_ >= n) throw InvalidObject("monoid: unit index out of range");
    if (table_.size() != n) throw InvalidObject("monoid: table must be n x n");
    for (const auto& row : table_) {
      if (row.size() != n) throw InvalidObject("monoid: table must be n x n");
      for (auto v : row)
        if (v >= n) throw InvalidObject("monoid: table entry out of range");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (table_[unit_][a] != a) throw InvalidObject("monoid: unit law fails at " + labels_[a]);
      for (std::size_t b = 0; b < n; ++b) {
        if (table_[a][b] != table_[b][a])
          throw InvalidObject("monoid: not commutative at (" + labels_[a] + ", " + labels_[b] + ")");
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw InvalidObject("monoid: not associative at (" + labels_[a] + ", " + labels_[b] + ", " + labels_[c] +
                                ")");
      }
    }
  }

  static FinCommMonoid trivial() { return FinCommMonoid(); }

  /// {1, e} with e*e = e.
  static FinCommMonoid idempotent() { return FinCommMonoid({"1", "e"}, {{0, 1}, {1, 1}}, 0); }

  /// The cyclic group {1, g, ..., g^(n-1)}.
  static FinCommMonoid cyclic_group(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(i == 0 ? "1" : i == 1 ? "g" : "g^" + std::to_string(i));
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FinCommMonoid(l, t, 0);
  }

  /// (N, +) with every sum above `bound` collapsed to an absorbing element "inf".
  static FinCommMonoid nat_truncated(std::size_t bound) {
    const std::size_t n = bound + 2;
    std::vector<std::string> l;
    for (std::size_t i = 0; i <= bound; ++i) l.push_back(std::to_string(i));
    l.push_back("inf");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = std::min(a + b, bound + 1);
    return FinCommMonoid(l, t, 0);
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }

  friend bool operator==(const FinCommMonoid&, const FinCommMonoid&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t unit_ = 0;
};

/// The product monoid with componentwise law; element (a, b) has index a*|B| + b.
inline FinCommMonoid product(const FinCommMonoid& a, const FinCommMonoid& b) {
  std::vector<std::string> l;
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) l.push_back("(" + x + "," + y + ")");
  const std::size_t nb = b.size(), n = a.size() * nb;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  return FinCommMonoid(l, t, a.unit() * nb + b.unit());
}

class MonoidHom {
 public:
  MonoidHom(FinCommMonoid source, FinCommMonoid target, std::vector<std::size_t> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.size()) throw NotAHomomorphism("monoid map: one image per element required");
    for (auto i : images_)
      if (i >= target_.size()) throw NotAHomomorphism("monoid map: image index out of range");
    if (images_[source_.unit()] != target_.unit()) throw NotAHomomorphism("monoid map: unit not preserved");
    for (std::size_t a = 0; a < source_.size(); ++a)
      for (std::size_t b = 0; b < source_.size(); ++b)
        if (images_[source_.mul(a, b)] != target_.mul(images_[a], images_[b]))
          throw NotAHomomorphism("monoid map: product of " + source_.label(a) + " and " + source_.label(b) +
                                 " not preserved");
  }

  static MonoidHom identity(const FinCommMonoid& x) {
    std::vector<std::size_t> im(x.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
    return MonoidHom(x, x, im);
  }

  const FinCommMonoid& source() const { return source_; }
  const FinCommMonoid& target() const { return target_; }
  const std::vector<std::size_t>& images() const { return images_; }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }

  bool is_surjective() const {
    return std::set<std::size_t>(images_.begin(), images_.end()).size() == target_.size();
  }

  friend bool operator==(const MonoidHom&, const MonoidHom&) = default;

 private:
  FinCommMonoid source_;
  FinCommMonoid target_;
  std::vector<std::size_t> images_;
};

/// Every monoid homomorphism X -> Y, by exhaustive search.
inline std::vector<MonoidHom> all_homs(const FinCommMonoid& x, const FinCommMonoid& y) {
  std::vector<MonoidHom> out;
  std::vector<std::size_t> im(x.size(), 0);
  for (;;) {
    bool ok = im[x.unit()] == y.unit();
    for (std::size_t a = 0; a < x.size() && ok; ++a)
      for (std::size_t b = 0; b < x.size() && ok; ++b) ok = im[x.mul(a, b)] == y.mul(im[a], im[b]);
    if (ok) out.emplace_back(x, y, im);
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

using Transitions = std::vector<std::vector<AbHom>>;

class MonBeckModule {
 public:
  /// transitions[x][y] : A_y -> A_{x*y}. Throws InvalidModule when h_1 is not
  /// the identity or h_x h_y differs from h_{x*y}.
  MonBeckModule(FinCommMonoid base, std::vector<FGAbGroup> fibers, Transitions transitions)
      : base_(std::move(base)), fibers_(std::move(fibers)), transitions_(std::move(transitions)) {
    check_shape();
    const std::size_t n = base_.size();
    for (std::size_t y = 0; y < n; ++y)
      if (!equal_maps(transitions_[base_.unit()][y], AbHom::identity(fibers_[y])))
        throw InvalidModule("monoid module: h_1 is not the identity on fiber " + base_.label(y));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          AbHom lhs = compose(transitions_[x][base_.mul(y, z)], transitions_[y][z]);
          if (!equal_maps(lhs, transitions_[base_.mul(x, y)][z]))
            throw InvalidModule("monoid module: h_" + base_.label(x) + " h_" + base_.label(y) + " != h_" +
                                base_.label(base_.mul(x, y)) + " on fiber " + base_.label(z));
        }
  }

  /// Skips the composition-law check; for constructions that satisfy it by design.
  static MonBeckModule trusted(FinCommMonoid base, std::vector<FGAbGroup> fibers, Transitions transitions) {
    return MonBeckModule(std::move(base), std::move(fibers), std::move(transitions), 0);
  }

  /// Zero module: every fiber zero.
  static MonBeckModule zero(const FinCommMonoid& base) {
    std::vector<FGAbGroup> f(base.size());
    Transitions t(base.size());
    for (std::size_t x = 0; x < base.size(); ++x)
      for (std::size_t y = 0; y < base.size(); ++y) t[x].push_back(AbHom::zero(f[y], f[base.mul(x, y)]));
    return trusted(base, f, t);
  }

  const FinCommMonoid& base() const { return base_; }
  const std::vector<FGAbGroup>& fibers() const { return fibers_; }
  const FGAbGroup& fiber(std::size_t x) const { return fibers_.at(x); }
  const Transitions& transitions() const { return transitions_; }
  /// h_x : A_y -> A_{x*y}
  const AbHom& h(std::size_t x, std::size_t y) const { return transitions_.at(x).at(y); }

  bool is_zero() const {
    for (const auto& g : fibers_)
      if (!g.is_zero()) return false;
    return true;
  }

  friend bool operator==(const MonBeckModule& a, const MonBeckModule& b) {
    if (!(a.base_ == b.base_) || !(a.fibers_ == b.fibers_)) return false;
    for (std::size_t x = 0; x < a.transitions_.size(); ++x)
      for (std::size_t y = 0; y < a.transitions_.size(); ++y)
        if (!(a.transitions_[x][y].matrix() == b.transitions_[x][y].matrix())) return false;
    return true;
  }

 private:
  MonBeckModule(FinCommMonoid base, std::vector<FGAbGroup> fibers, Transitions transitions, int)
      : base_(std::move(base)), fibers_(std::move(fibers)), transitions_(std::move(transitions)) {
    check_shape();
  }

  void check_shape() const {
    const std::size_t n = base_.size();
    if (fibers_.size() != n || transitions_.size() != n)
      throw InvalidModule("monoid module: one fiber and one row of transitions per element");
    for (std::size_t x = 0; x < n; ++x) {
      if (transitions_[x].size() != n) throw InvalidModule("monoid module: transition table must be n x n");
      for (std::size_t y = 0; y < n; ++y)
        if (!(transitions_[x][y].source() == fibers_[y]) || !(transitions_[x][y].target() == fibers_[base_.mul(x, y)]))
          throw InvalidModule("monoid module: h_" + base_.label(x) + " on fiber " + base_.label(y) +
                              " has the wrong source or target");
    }
  }

  FinCommMonoid base_;
  std::vector<FGAbGroup> fibers_;
  Transitions transitions_;
};

class MonBeckHom {
 public:
  /// Requires f_{x*y} h^A_x = h^B_x f_y for every pair.
  MonBeckHom(MonBeckModule source, MonBeckModule target, std::vector<AbHom> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    const FinCommMonoid& m = source_.base();
    if (!(m == target_.base())) throw ShapeMismatch("monoid hom: modules over different monoids");
    if (components_.size() != m.size()) throw ShapeMismatch("monoid hom: one component per fiber");
    for (std::size_t x = 0; x < m.size(); ++x)
      if (!(components_[x].source() == source_.fiber(x)) || !(components_[x].target() == target_.fiber(x)))
        throw ShapeMismatch("monoid hom: component " + m.label(x) + " has the wrong fibers");
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < m.size(); ++y)
        if (!equal_maps(compose(components_[m.mul(x, y)], source_.h(x, y)), compose(target_.h(x, y), components_[y])))
          throw InvalidModule("monoid hom: not compatible with h_" + m.label(x) + " on fiber " + m.label(y));
  }

  static MonBeckHom identity(const MonBeckModule& a) {
    std::vector<AbHom> c;
    for (const auto& g : a.fibers()) c.push_back(AbHom::identity(g));
    return MonBeckHom(a, a, c);
  }

  const MonBeckModule& source() const { return source_; }
  const MonBeckModule& target() const { return target_; }
  const std::vector<AbHom>& components() const { return components_; }
  const AbHom& component(std::size_t x) const { return components_.at(x); }

 private:
  MonBeckModule source_;
  MonBeckModule target_;
  std::vector<AbHom> components_;
};

/// s_x in A_x for every x.
using MonDerivation = std::vector<IntVector>;

using MonCotangent = CotangentData<MonBeckModule, MonDerivation>;

inline MonBeckHom compose(const MonBeckHom& second, const MonBeckHom& first) {
  std::vector<AbHom> c;
  for (std::size_t x = 0; x < first.components().size(); ++x)
    c.push_back(cotangent::compose(second.component(x), first.component(x)));
  return MonBeckHom(first.source(), second.target(), c);
}

inline bool equal_maps(const MonBeckHom& a, const MonBeckHom& b) {
  if (a.components().size() != b.components().size()) return false;
  for (std::size_t x = 0; x < a.components().size(); ++x)
    if (!cotangent::equal_maps(a.component(x), b.component(x))) return false;
  return true;
}

inline HomClass classify(const MonBeckHom& h) {
  HomClass c{true, true, true};
  for (const auto& comp : h.components()) {
    HomClass k = classify_hom(comp);
    c.is_mono = c.is_mono && k.is_mono;
    c.is_epi = c.is_epi && k.is_epi;
  }
  c.is_iso = c.is_mono && c.is_epi;
  return c;
}

inline std::optional<MonBeckHom> inverse(const MonBeckHom& h) {
  std::vector<AbHom> c;
  for (const auto& comp : h.components()) {
    auto inv = cotangent::inverse(comp);
    if (!inv) return std::nullopt;
    c.push_back(*inv);
  }
  return MonBeckHom(h.target(), h.source(), c);
}

inline SequenceVerdict check_right_exact(const MonBeckHom& r, const MonBeckHom& s) {
  if (!(r.target() == s.source())) throw ShapeMismatch("check_right_exact: middle modules differ");
  for (std::size_t y = 0; y < r.components().size(); ++y) {
    SequenceVerdict v =
        cotangent::check_right_exact(r.component(y), s.component(y), r.source().base().label(y));
    if (!v.exact) return v;
  }
  return SequenceVerdict::success();
}

namespace detail {

// Generators of a fiber-indexed family, with a lookup from key to (fiber, position).
template <class Key>
struct GeneratorTable {
  std::vector<std::vector<Key>> per_fiber;
  std::map<Key, std::pair<std::size_t, std::size_t>> where;

  explicit GeneratorTable(std::size_t fibers) : per_fiber(fibers) {}

  void add(std::size_t fiber, const Key& k) {
    where[k] = {fiber, per_fiber[fiber].size()};
    per_fiber[fiber].push_back(k);
  }
  std::size_t index(const Key& k) const { return where.at(k).second; }
};

// Relation columns collected per fiber.
struct RelationBuilder {
  std::vector<std::vector<IntVector>> cols;
  explicit RelationBuilder(std::size_t fibers) : cols(fibers) {}

  std::vector<FGAbGroup> groups(const std::vector<std::size_t>& ngens) const {
    std::vector<FGAbGroup> out;
    for (std::size_t z = 0; z < ngens.size(); ++z) {
      IntMatrix r(ngens[z], cols[z].size());
      for (std::size_t k = 0; k < cols[z].size(); ++k) r.set_column(k, cols[z][k]);
      out.emplace_back(ngens[z], r);
    }
    return out;
  }
};

using Pair = std::pair<std::size_t, std::size_t>;

struct OmegaPresentation {
  GeneratorTable<Pair> gens;
  RelationBuilder rels;
};

// Generators (w, x) of fiber w*x, lexicographic; Leibniz relations
// (w, x*y) - (w*x, y) - (w*y, x) in fiber w*x*y.
inline OmegaPresentation omega_presentation(const FinCommMonoid& m) {
  const std::size_t n = m.size();
  GeneratorTable<Pair> gens(n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x) gens.add(m.mul(w, x), {w, x});
  RelationBuilder rels(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y)
      for (std::size_t w = 0; w < n; ++w) {
        std::size_t z = m.mul(w, m.mul(x, y));
        IntVector col = zero_vector(gens.per_fiber[z].size());
        col[gens.index({w, m.mul(x, y)})] += 1;
        col[gens.index({m.mul(w, x), y})] -= 1;
        col[gens.index({m.mul(w, y), x})] -= 1;
        rels.cols[z].push_back(col);
      }
  return {gens, rels};
}

// Translation (w, x) -> (v*w, x) on a presentation whose generators are pairs.
inline Transitions pair_translations(const FinCommMonoid& m, const GeneratorTable<Pair>& gens,
                                     const std::vector<FGAbGroup>& fibers) {
  const std::size_t n = m.size();
  Transitions t(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t z = 0; z < n; ++z) {
      std::size_t vz = m.mul(v, z);
      IntMatrix mat(fibers[vz].ngens(), fibers[z].ngens());
      for (std::size_t j = 0; j < gens.per_fiber[z].size(); ++j) {
        auto [w, x] = gens.per_fiber[z][j];
        mat(gens.index({m.mul(v, w), x}), j) = 1;
      }
      t[v].emplace_back(fibers[z], fibers[vz], mat);
    }
  return t;
}

inline std::vector<std::size_t> sizes(const GeneratorTable<Pair>& g) {
  std::vector<std::size_t> s;
  for (const auto& f : g.per_fiber) s.push_back(f.size());
  return s;
}

}  // namespace detail

/// Omega_X by generators and Leibniz relations; eta_x = (1, x).
inline MonCotangent omega(const FinCommMonoid& m) {
  auto p = detail::omega_presentation(m);
  auto fibers = p.rels.groups(detail::sizes(p.gens));
  auto t = detail::pair_translations(m, p.gens, fibers);
  MonDerivation unit;
  for (std::size_t x = 0; x < m.size(); ++x) unit.push_back(unit_vector(fibers[x].ngens(), p.gens.index({m.unit(), x})));
  return {MonBeckModule::trusted(m, fibers, t), unit};
}

/// Der(X, A) as the solutions of the Leibniz system over (+)_x A_x.
struct MonDerivations {
  FGAbGroup group;
  AbHom embedding;
  MonBeckModule module;

  MonDerivation decode(const IntVector& element) const {
    IntVector flat = embedding.apply(element);
    MonDerivation s;
    std::size_t off = 0;
    for (const auto& g : module.fibers()) {
      s.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(off),
                     flat.begin() + static_cast<std::ptrdiff_t>(off + g.ngens()));
      off += g.ngens();
    }
    return s;
  }
};

inline MonDerivations derivations(const MonBeckModule& a) {
  const FinCommMonoid& m = a.base();
  ConstraintSystem sys(a.fibers());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x; y < m.size(); ++y) {
      std::size_t xy = m.mul(x, y);
      std::size_t c = sys.add_condition(a.fiber(xy));
      sys.add_block(c, xy, IntMatrix::identity(a.fiber(xy).ngens()));
      sys.add_block(c, y, -a.h(x, y).matrix());
      sys.add_block(c, x, -a.h(y, x).matrix());
    }
  GroupWithMap sol = sys.solve();
  return {sol.group, sol.map, a};
}

inline bool is_derivation(const MonBeckModule& a, const MonDerivation& s) {
  const FinCommMonoid& m = a.base();
  if (s.size() != m.size()) return false;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) {
      IntVector rhs = a.h(x, y).apply(s[y]);
      IntVector other = a.h(y, x).apply(s[x]);
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += other[i];
      if (!a.fiber(m.mul(x, y)).same_element(s[m.mul(x, y)], rhs)) return false;
    }
  return true;
}

inline bool is_zero_derivation(const MonBeckModule& a, const MonDerivation& s) {
  if (s.size() != a.fibers().size()) throw ShapeMismatch("derivation: one value per element required");
  for (std::size_t x = 0; x < s.size(); ++x)
    if (!a.fiber(x).is_neutral(s[x])) return false;
  return true;
}

/// Hom(A, B) in Beck modules: families of fiber homomorphisms commuting with
/// the translations, as solutions of a linear system.
struct MonHomGroup {
  FGAbGroup group;
  AbHom embedding;
  MonBeckModule source;
  MonBeckModule target;

  MonBeckHom decode(const IntVector& element) const {
    IntVector flat = embedding.apply(element);
    std::vector<AbHom> c;
    std::size_t off = 0;
    for (std::size_t x = 0; x < source.fibers().size(); ++x) {
      const std::size_t rows = target.fiber(x).ngens(), cols = source.fiber(x).ngens();
      IntMatrix mat(rows, cols);
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) mat(i, j) = flat[off + j * rows + i];
      off += rows * cols;
      c.emplace_back(source.fiber(x), target.fiber(x), mat);
    }
    return MonBeckHom(source, target, c);
  }
};

inline MonHomGroup hom_group(const MonBeckModule& a, const MonBeckModule& b) {
  const FinCommMonoid& m = a.base();
  if (!(m == b.base())) throw ShapeMismatch("hom_group: modules over different monoids");
  const std::size_t n = m.size();
  std::vector<FGAbGroup> unknowns;
  for (std::size_t x = 0; x < n; ++x) unknowns.push_back(power(b.fiber(x), a.fiber(x).ngens()));
  ConstraintSystem sys(unknowns);

  // Places `block` (columns indexed by generators of B_x) at generator block j of unknown x.
  auto place = [&](std::size_t cond, std::size_t x, std::size_t j, const IntMatrix& block) {
    const std::size_t rows = block.rows(), k = b.fiber(x).ngens();
    IntMatrix full(rows, a.fiber(x).ngens() * k);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t i = 0; i < k; ++i) full(r, j * k + i) = block(r, i);
    sys.add_block(cond, x, full);
  };

  for (std::size_t x = 0; x < n; ++x) {
    const IntMatrix& rel = a.fiber(x).relations();
    const std::size_t k = b.fiber(x).ngens();
    for (std::size_t col = 0; col < rel.cols(); ++col) {
      std::size_t c = sys.add_condition(b.fiber(x));
      for (std::size_t j = 0; j < a.fiber(x).ngens(); ++j)
        if (rel(j, col) != 0) place(c, x, j, IntMatrix::scalar(k, rel(j, col)));
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = m.mul(x, y);
      const IntMatrix& ha = a.h(x, y).matrix();
      const std::size_t kxy = b.fiber(xy).ngens();
      for (std::size_t j = 0; j < a.fiber(y).ngens(); ++j) {
        // f_{xy}(h^A_x(g_j)) - h^B_x(f_y(g_j)) = 0 in B_{xy}
        std::size_t c = sys.add_condition(b.fiber(xy));
        for (std::size_t i = 0; i < a.fiber(xy).ngens(); ++i)
          if (ha(i, j) != 0) place(c, xy, i, IntMatrix::scalar(kxy, ha(i, j)));
        place(c, y, j, -b.h(x, y).matrix());
      }
    }
  GroupWithMap sol = sys.solve();
  return {sol.group, sol.map, a, b};
}

/// A_x = B_{f(x)}, h^A_x = h^B_{f(x)}.
inline MonBeckModule pullback(const MonoidHom& f, const MonBeckModule& b) {
  if (!(b.base() == f.target())) throw ShapeMismatch("pullback: module is not over the target of f");
  const FinCommMonoid& m = f.source();
  std::vector<FGAbGroup> fib;
  for (std::size_t x = 0; x < m.size(); ++x) fib.push_back(b.fiber(f(x)));
  Transitions t(m.size());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) t[x].push_back(b.h(f(x), f(y)));
  return MonBeckModule::trusted(m, fib, t);
}

namespace detail {

// (w, x, a): translation w in Y, source element x, generator a of A_x.
using PushKey = std::tuple<std::size_t, std::size_t, std::size_t>;

}  // namespace detail

/// Pushforward as a left Kan extension: fiber y is generated by (w, x, a)
/// with w*f(x) = y and a a generator of A_x, subject to the relations of A_x
/// and (w*f(u), x, a) = (w, u*x, h_u(a)).
inline MonBeckModule pushforward(const MonoidHom& f, const MonBeckModule& a) {
  if (!(a.base() == f.source())) throw ShapeMismatch("pushforward: module is not over the source of f");
  const FinCommMonoid& xm = f.source();
  const FinCommMonoid& ym = f.target();
  detail::GeneratorTable<detail::PushKey> gens(ym.size());
  for (std::size_t w = 0; w < ym.size(); ++w)
    for (std::size_t x = 0; x < xm.size(); ++x)
      for (std::size_t g = 0; g < a.fiber(x).ngens(); ++g) gens.add(ym.mul(w, f(x)), {w, x, g});

  detail::RelationBuilder rels(ym.size());
  for (std::size_t w = 0; w < ym.size(); ++w)
    for (std::size_t x = 0; x < xm.size(); ++x) {
      const std::size_t y = ym.mul(w, f(x));
      const std::size_t ny = gens.per_fiber[y].size();
      const IntMatrix& r = a.fiber(x).relations();
      for (std::size_t k = 0; k < r.cols(); ++k) {
        IntVector col = zero_vector(ny);
        for (std::size_t g = 0; g < r.rows(); ++g) col[gens.index({w, x, g})] += r(g, k);
        rels.cols[y].push_back(col);
      }
      for (std::size_t u = 0; u < xm.size(); ++u) {
        const std::size_t ux = xm.mul(u, x);
        const std::size_t wu = ym.mul(w, f(u));
        const std::size_t target = ym.mul(wu, f(x));
        const IntMatrix& hu = a.h(u, x).matrix();
        for (std::size_t g = 0; g < a.fiber(x).ngens(); ++g) {
          IntVector col = zero_vector(gens.per_fiber[target].size());
          col[gens.index({wu, x, g})] += 1;
          for (std::size_t i = 0; i < hu.rows(); ++i) col[gens.index({w, ux, i})] -= hu(i, g);
          rels.cols[target].push_back(col);
        }
      }
    }
  std::vector<std::size_t> ng;
  for (const auto& fib : gens.per_fiber) ng.push_back(fib.size());
  auto fibers = rels.groups(ng);
  Transitions t(ym.size());
  for (std::size_t v = 0; v < ym.size(); ++v)
    for (std::size_t z = 0; z < ym.size(); ++z) {
      const std::size_t vz = ym.mul(v, z);
      IntMatrix mat(ng[vz], ng[z]);
      for (std::size_t j = 0; j < ng[z]; ++j) {
        auto [w, x, g] = gens.per_fiber[z][j];
        mat(gens.index({ym.mul(v, w), x, g}), j) = 1;
      }
      t[v].emplace_back(fibers[z], fibers[vz], mat);
    }
  return MonBeckModule::trusted(ym, fibers, t);
}

/// f_!(Omega_X) -> Omega_Y, (w, x, (v, u)) |-> (w*f(v), f(u)).
inline MonBeckHom delta_tilde(const MonoidHom& f) {
  const FinCommMonoid& xm = f.source();
  const FinCommMonoid& ym = f.target();
  MonCotangent ox = omega(xm), oy = omega(ym);
  MonBeckModule push = pushforward(f, ox.omega);
  auto px = detail::omega_presentation(xm);
  auto py = detail::omega_presentation(ym);
  std::vector<AbHom> comps;
  for (std::size_t y = 0; y < ym.size(); ++y) {
    IntMatrix mat(oy.omega.fiber(y).ngens(), push.fiber(y).ngens());
    std::size_t col = 0;
    // Same enumeration order as pushforward: w, then x, then generators of (Omega_X)_x.
    for (std::size_t w = 0; w < ym.size(); ++w)
      for (std::size_t x = 0; x < xm.size(); ++x)
        for (const auto& [v, u] : px.gens.per_fiber[x]) {
          if (ym.mul(w, f(x)) != y) continue;
          mat(py.gens.index({ym.mul(w, f(v)), f(u)}), col++) = 1;
        }
    comps.emplace_back(push.fiber(y), oy.omega.fiber(y), mat);
  }
  return MonBeckHom(push, oy.omega, comps);
}

/// Omega_f: Omega_Y modulo the translates (w, f(x)) of eta_{f(x)}.
inline MonCotangent omega_rel(const MonoidHom& f) {
  const FinCommMonoid& ym = f.target();
  auto p = detail::omega_presentation(ym);
  for (std::size_t w = 0; w < ym.size(); ++w)
    for (std::size_t x = 0; x < f.source().size(); ++x) {
      std::size_t z = ym.mul(w, f(x));
      IntVector col = zero_vector(p.gens.per_fiber[z].size());
      col[p.gens.index({w, f(x)})] = 1;
      p.rels.cols[z].push_back(col);
    }
  auto fibers = p.rels.groups(detail::sizes(p.gens));
  auto t = detail::pair_translations(ym, p.gens, fibers);
  MonDerivation unit;
  for (std::size_t y = 0; y < ym.size(); ++y) unit.push_back(unit_vector(fibers[y].ngens(), p.gens.index({ym.unit(), y})));
  return {MonBeckModule::trusted(ym, fibers, t), unit};
}

inline MonBeckHom gamma(const MonoidHom& f) {
  MonBeckModule s = omega(f.target()).omega, t = omega_rel(f).omega;
  std::vector<AbHom> c;
  for (std::size_t y = 0; y < f.target().size(); ++y)
    c.emplace_back(s.fiber(y), t.fiber(y), IntMatrix::identity(s.fiber(y).ngens()));
  return MonBeckHom(s, t, c);
}

/// z x x with g(c) = (c, 1) and f(a) = (1, a).
inline Coproduct<FinCommMonoid, MonoidHom> coproduct(const FinCommMonoid& x, const FinCommMonoid& z) {
  FinCommMonoid y = product(z, x);
  std::vector<std::size_t> fi, gi;
  for (std::size_t a = 0; a < x.size(); ++a) fi.push_back(z.unit() * x.size() + a);
  for (std::size_t c = 0; c < z.size(); ++c) gi.push_back(c * x.size() + x.unit());
  return {y, MonoidHom(x, y, fi), MonoidHom(z, y, gi)};
}

/// Omega of (N, +) on fibers 0..N, each positive fiber written as Z.
struct NatOmega {
  std::size_t bound = 0;
  std::vector<FGAbGroup> fibers;
  /// transitions[n] : fiber n -> fiber n+1 (translation by 1), for n < bound.
  std::vector<AbHom> transitions;
  /// eta_n in each fiber.
  std::vector<IntVector> unit;
};

/// Computes Omega of the truncated monoid {0..N, inf} and reads off fibers
/// 0..N, which agree with those of N. Every positive fiber is rewritten in
/// its canonical coordinates, oriented so that the generator (n-1, 1) is +1.
inline NatOmega omega_nat_truncated(std::size_t bound) {
  if (bound < 1) throw InvalidObject("omega_nat_truncated: bound must be at least 1");
  FinCommMonoid m = FinCommMonoid::nat_truncated(bound);
  auto p = detail::omega_presentation(m);
  MonCotangent om = omega(m);

  std::vector<CanonicalForm> canon;
  std::vector<Integer> sign;
  for (std::size_t n = 0; n <= bound; ++n) {
    canon.push_back(canonicalize(om.omega.fiber(n)));
    Integer s = 1;
    if (n >= 1 && canon[n].group.ngens() == 1) {
      IntVector c = canon[n].to_canonical.apply(unit_vector(om.omega.fiber(n).ngens(), p.gens.index({n - 1, 1})));
      if (c[0] < 0) s = -1;
    }
    sign.push_back(s);
  }

  NatOmega out;
  out.bound = bound;
  for (std::size_t n = 0; n <= bound; ++n) {
    out.fibers.push_back(canon[n].group);
    IntVector u = canon[n].to_canonical.apply(om.unit[n]);
    for (auto& v : u) v *= sign[n];
    out.unit.push_back(u);
  }
  for (std::size_t n = 0; n < bound; ++n) {
    AbHom h = compose(canon[n + 1].to_canonical, compose(om.omega.h(1, n), canon[n].from_canonical));
    IntMatrix mat = h.matrix();
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) *= sign[n] * sign[n + 1];
    // Reduce entries into canonical range so identities print as [[1]].
    for (std::size_t j = 0; j < mat.cols(); ++j) mat.set_column(j, canon[n + 1].group.canonical(mat.column(j)));
    out.transitions.emplace_back(canon[n].group, canon[n + 1].group, mat);
  }
  return out;
}

/// The context binding used by the generic theorem checkers. The
/// epimorphism checker accepts surjective homomorphisms only.
struct Context {
  using Object = FinCommMonoid;
  using Morphism = MonoidHom;
  using Module = MonBeckModule;
  using Hom = MonBeckHom;
  using Unit = MonDerivation;

  static MonCotangent omega(const FinCommMonoid& x) { return monoids::omega(x); }
  static MonBeckModule pullback(const MonoidHom& f, const MonBeckModule& m) { return monoids::pullback(f, m); }
  static MonBeckModule pushforward(const MonoidHom& f, const MonBeckModule& m) { return monoids::pushforward(f, m); }
  static MonBeckHom delta_tilde(const MonoidHom& f) { return monoids::delta_tilde(f); }
  static MonCotangent omega_rel(const MonoidHom& f) { return monoids::omega_rel(f); }
  static MonBeckHom gamma(const MonoidHom& f) { return monoids::gamma(f); }
  static MonBeckHom compose(const MonBeckHom& a, const MonBeckHom& b) { return monoids::compose(a, b); }
  static HomClass classify(const MonBeckHom& h) { return monoids::classify(h); }
  static std::optional<MonBeckHom> inverse(const MonBeckHom& h) { return monoids::inverse(h); }
  static bool is_identity(const MonBeckHom& h) {
    return h.source() == h.target() && monoids::equal_maps(h, MonBeckHom::identity(h.source()));
  }
  static SequenceVerdict check_right_exact(const MonBeckHom& r, const MonBeckHom& s) {
    return monoids::check_right_exact(r, s);
  }
  static bool is_epimorphism(const MonoidHom& f) { return f.is_surjective(); }
  static Coproduct<FinCommMonoid, MonoidHom> coproduct(const FinCommMonoid& x, const FinCommMonoid& z) {
    return monoids::coproduct(x, z);
  }
};

static_assert(BeckContext<Context>);

/// trivial, {1, e}, Z/2, Z/3, Z/2 x Z/2.
inline std::vector<std::pair<std::string, FinCommMonoid>> catalog() {
  return {{"trivial", FinCommMonoid::trivial()},
          {"idempotent", FinCommMonoid::idempotent()},
          {"Z/2", FinCommMonoid::cyclic_group(2)},
          {"Z/3", FinCommMonoid::cyclic_group(3)},
          {"Z/2xZ/2", product(FinCommMonoid::cyclic_group(2), FinCommMonoid::cyclic_group(2))}};
}

}  // namespace cotangent::monoids
