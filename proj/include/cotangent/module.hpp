#pragma once

// Finitely presented modules A^n / (relations) over a finitely presented
// algebra A = k[x]/I, computed as submodules of k[x]^n containing I k[x]^n.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/algebra.hpp"
#include "cotangent/errors.hpp"
#include "cotangent/groebner.hpp"
#include "cotangent/verdict.hpp"

namespace cotangent::ring {

/// An element of A^n, one coefficient per generator.
using Column = std::vector<Polynomial>;

class FPModule {
 public:
  FPModule(FPAlgebra algebra, std::vector<std::string> names, std::vector<Column> relations) {
    const std::size_t n = names.size();
    auto d = std::make_shared<Data>(Data{algebra, std::move(names), {}, VectorOps(algebra.ring()), {}});
    for (auto& r : relations) {
      if (r.size() != n) throw ShapeMismatch("relation length differs from the number of generators");
      Column c;
      bool zero = true;
      for (auto& p : r) {
        c.push_back(algebra.normal_form(p));
        zero = zero && c.back().is_zero();
      }
      if (!zero) d->relations.push_back(std::move(c));
    }
    std::vector<ModVector> gens;
    for (const auto& r : d->relations) gens.push_back(d->ops.from_column(r));
    for (const auto& g : algebra.groebner_basis())
      for (std::size_t j = 0; j < n; ++j) gens.push_back(d->ops.from_column({g}, j));
    d->gb = ring::groebner_basis(d->ops, std::move(gens));
    d_ = std::move(d);
  }

  static FPModule free(const FPAlgebra& a, std::size_t n, const std::string& stem = "e") {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < n; ++j) names.push_back(stem + std::to_string(j + 1));
    return FPModule(a, names, {});
  }

  static FPModule zero(const FPAlgebra& a) { return FPModule(a, {}, {}); }

  const FPAlgebra& algebra() const { return d_->algebra; }
  std::size_t rank() const { return d_->names.size(); }
  const std::vector<std::string>& names() const { return d_->names; }
  const std::vector<Column>& relations() const { return d_->relations; }
  const std::vector<ModVector>& groebner_basis() const { return d_->gb; }
  const VectorOps& ops() const { return d_->ops; }

  Column zero_element() const { return Column(rank()); }

  Column generator(std::size_t j) const {
    Column c = zero_element();
    c.at(j) = algebra().ring().one();
    return c;
  }

  /// Canonical representative: full reduction modulo the relation submodule.
  Column reduce(const Column& v) const {
    check(v);
    return d_->ops.to_column(d_->ops.reduce(d_->ops.from_column(v), d_->gb), rank());
  }

  bool is_zero_element(const Column& v) const {
    for (const auto& p : reduce(v))
      if (!p.is_zero()) return false;
    return true;
  }

  bool equal_elements(const Column& a, const Column& b) const { return is_zero_element(sub(a, b)); }

  Column add(const Column& a, const Column& b) const {
    check(a);
    check(b);
    Column c;
    for (std::size_t j = 0; j < rank(); ++j) c.push_back(algebra().ring().add(a[j], b[j]));
    return reduce(c);
  }

  Column sub(const Column& a, const Column& b) const {
    check(a);
    check(b);
    Column c;
    for (std::size_t j = 0; j < rank(); ++j) c.push_back(algebra().ring().sub(a[j], b[j]));
    return c;
  }

  Column scale(const Polynomial& p, const Column& v) const {
    check(v);
    Column c;
    for (const auto& x : v) c.push_back(algebra().ring().mul(p, x));
    return reduce(c);
  }

  bool is_zero() const {
    for (std::size_t j = 0; j < rank(); ++j)
      if (!is_zero_element(generator(j))) return false;
    return true;
  }

  /// Standard monomials position by position: a k-basis of the module, or
  /// nothing when it is infinite-dimensional.
  std::optional<std::vector<std::pair<std::size_t, Monomial>>> standard_basis() const {
    const std::size_t n = algebra().nvars();
    std::vector<std::pair<std::size_t, Monomial>> out;
    for (std::size_t p = 0; p < rank(); ++p) {
      std::vector<Monomial> leads;
      for (const auto& g : d_->gb)
        if (g.front().pos == p) leads.push_back(g.front().m);
      std::vector<unsigned> bound(n, 0);
      bool dead = false;
      for (const auto& m : leads) {
        std::size_t support = 0, which = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (m.e[i]) {
            ++support;
            which = i;
          }
        if (support == 0) dead = true;
        if (support == 1 && (bound[which] == 0 || m.e[which] < bound[which])) bound[which] = m.e[which];
      }
      if (dead) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (bound[i] == 0) return std::nullopt;
      std::vector<Monomial> found;
      Monomial m;
      for (;;) {
        bool standard = true;
        for (const auto& l : leads)
          if (l.divides(m)) {
            standard = false;
            break;
          }
        if (standard) found.push_back(m);
        std::size_t k = 0;
        while (k < n) {
          if (++m.e[k] < bound[k]) break;
          m.e[k] = 0;
          ++k;
        }
        if (k == n) break;
      }
      std::sort(found.begin(), found.end(),
                [&](const Monomial& a, const Monomial& b) { return algebra().ring().cmp(a, b) > 0; });
      for (const auto& f : found) out.push_back({p, f});
    }
    return out;
  }

  std::optional<std::size_t> dimension() const {
    auto b = standard_basis();
    if (!b) return std::nullopt;
    return b->size();
  }

  /// Coordinates of v in the standard basis; the module must be finite-dimensional.
  std::vector<Rational> coordinates(const Column& v) const {
    auto basis = standard_basis();
    if (!basis) throw SizeLimit("coordinates need a finite-dimensional module");
    std::vector<Rational> out(basis->size());
    for (const auto& t : d_->ops.from_column(reduce(v))) {
      std::size_t k = 0;
      while (k < basis->size() && !((*basis)[k].first == t.pos && (*basis)[k].second == t.m)) ++k;
      if (k == basis->size()) throw Error("reduced element left the standard basis");
      out[k] = t.c;
    }
    return out;
  }

  /// The basis element as a column.
  Column basis_element(const std::pair<std::size_t, Monomial>& b) const {
    Column c = zero_element();
    c[b.first] = algebra().ring().monomial(b.second);
    return c;
  }

  std::string format_element(const Column& v) const {
    const PolyRing& r = algebra().ring();
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Polynomial& p = v[j];
      if (p.is_zero()) continue;
      bool negative = false;
      std::string body;
      if (p.size() == 1) {
        const Term& t = p.leading();
        negative = t.c < 0;
        Rational mag = negative ? Rational(-t.c) : t.c;
        body = (mag == 1 && t.m.is_one()) ? names()[j] : r.format_magnitude(mag, t.m) + "*" + names()[j];
      } else {
        body = "(" + r.format(p) + ")*" + names()[j];
      }
      if (s.empty())
        s = (negative ? "-" : "") + body;
      else
        s += (negative ? " - " : " + ") + body;
    }
    return s.empty() ? "0" : s;
  }

  /// "gens dx,dy; rel -3x^2*dx + 2y*dy".
  std::string describe() const {
    if (rank() == 0) return "0";
    std::string s = "gens ";
    for (std::size_t j = 0; j < rank(); ++j) s += (j ? "," : "") + names()[j];
    for (const auto& r : relations()) s += "; rel " + format_element(r);
    return s;
  }

  /// Same algebra, rank and relation submodule.
  bool operator==(const FPModule& o) const {
    if (d_ == o.d_) return true;
    if (!(algebra() == o.algebra()) || rank() != o.rank() || d_->gb.size() != o.d_->gb.size()) return false;
    for (std::size_t i = 0; i < d_->gb.size(); ++i) {
      const auto& a = d_->gb[i];
      const auto& b = o.d_->gb[i];
      if (a.size() != b.size()) return false;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].pos != b[k].pos || !(a[k].m == b[k].m) || a[k].c != b[k].c) return false;
    }
    return true;
  }

 private:
  void check(const Column& v) const {
    if (v.size() != rank()) throw ShapeMismatch("element length differs from the number of generators");
  }

  struct Data {
    FPAlgebra algebra;
    std::vector<std::string> names;
    std::vector<Column> relations;
    VectorOps ops;
    std::vector<ModVector> gb;
  };
  std::shared_ptr<const Data> d_;
};

/// Direct sum with generators of a first, then of b.
inline FPModule direct_sum(const FPModule& a, const FPModule& b) {
  if (!(a.algebra() == b.algebra())) throw ShapeMismatch("direct_sum: modules over different algebras");
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  std::vector<Column> rel;
  for (const auto& r : a.relations()) {
    Column c = r;
    c.resize(names.size());
    rel.push_back(c);
  }
  for (const auto& r : b.relations()) {
    Column c(a.rank());
    c.insert(c.end(), r.begin(), r.end());
    rel.push_back(c);
  }
  return FPModule(a.algebra(), names, rel);
}

/// M^n, generator names suffixed by the summand index.
inline FPModule power(const FPModule& m, std::size_t n) {
  std::vector<std::string> names;
  std::vector<Column> rel;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : m.names()) names.push_back(s + "_" + std::to_string(i + 1));
    for (const auto& r : m.relations()) {
      Column c(m.rank() * n);
      for (std::size_t j = 0; j < m.rank(); ++j) c[i * m.rank() + j] = r[j];
      rel.push_back(c);
    }
  }
  return FPModule(m.algebra(), names, rel);
}

class ModuleHom {
 public:
  /// images[j] is the image of source generator j, an element of the target.
  ModuleHom(FPModule source, FPModule target, std::vector<Column> images)
      : source_(std::move(source)), target_(std::move(target)) {
    if (!(source_.algebra() == target_.algebra())) throw ShapeMismatch("module hom between different algebras");
    if (images.size() != source_.rank()) throw ShapeMismatch("one image per source generator required");
    for (const auto& c : images) images_.push_back(target_.reduce(c));
    for (std::size_t k = 0; k < source_.relations().size(); ++k)
      if (!target_.is_zero_element(apply_free(source_.relations()[k])))
        throw IllFormedHom("relation " + std::to_string(k) + " of the source does not map to zero");
  }

  static ModuleHom identity(const FPModule& m) {
    std::vector<Column> im;
    for (std::size_t j = 0; j < m.rank(); ++j) im.push_back(m.generator(j));
    return ModuleHom(m, m, im);
  }

  static ModuleHom zero(const FPModule& s, const FPModule& t) {
    return ModuleHom(s, t, std::vector<Column>(s.rank(), t.zero_element()));
  }

  const FPModule& source() const { return source_; }
  const FPModule& target() const { return target_; }
  const std::vector<Column>& images() const { return images_; }

  Column apply(const Column& v) const { return target_.reduce(apply_free(v)); }

 private:
  Column apply_free(const Column& v) const {
    if (v.size() != source_.rank()) throw ShapeMismatch("element length differs from the source rank");
    const PolyRing& r = source_.algebra().ring();
    Column out = target_.zero_element();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.add(out[i], r.mul(v[j], images_[j][i]));
    }
    return out;
  }

  FPModule source_;
  FPModule target_;
  std::vector<Column> images_;
};

/// second o first.
inline ModuleHom compose(const ModuleHom& second, const ModuleHom& first) {
  if (!(first.target() == second.source())) throw ShapeMismatch("compose: modules do not match");
  std::vector<Column> im;
  for (const auto& c : first.images()) im.push_back(second.apply(c));
  return ModuleHom(first.source(), second.target(), im);
}

inline bool equal_maps(const ModuleHom& a, const ModuleHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  for (std::size_t j = 0; j < a.images().size(); ++j)
    if (!a.target().equal_elements(a.images()[j], b.images()[j])) return false;
  return true;
}

inline bool is_identity(const ModuleHom& h) {
  return h.source() == h.target() && equal_maps(h, ModuleHom::identity(h.source()));
}

namespace detail {

/// Submodule of k[x]^{m+n} generated by (h(e_j), e_j) and the relations of
/// the target in the first m positions. Under position over term the basis
/// elements with zero head describe the kernel and reduction of (w, 0)
/// decides membership in the image.
class GraphBasis {
 public:
  explicit GraphBasis(const ModuleHom& h)
      : ops_(h.source().algebra().ring()), m_(h.target().rank()), n_(h.source().rank()) {
    std::vector<ModVector> gens = h.target().groebner_basis();
    for (std::size_t j = 0; j < n_; ++j) {
      ModVector v = ops_.from_column(h.images()[j]);
      ModVector e = ops_.from_column({h.source().algebra().ring().one()}, m_ + j);
      v.insert(v.end(), e.begin(), e.end());
      gens.push_back(std::move(v));
    }
    gb_ = groebner_basis(ops_, std::move(gens));
  }

  /// Generators of ker h as elements of the free cover of the source.
  std::vector<Column> kernel() const {
    std::vector<Column> out;
    for (const auto& g : gb_)
      if (g.front().pos >= m_) out.push_back(ops_.to_column(g, n_, m_));
    return out;
  }

  /// v with h(v) = w modulo the target relations, if any.
  std::optional<Column> preimage(const Column& w) const {
    ModVector r = ops_.reduce(ops_.from_column(w), gb_);
    if (!r.empty() && r.front().pos < m_) return std::nullopt;
    Column c = ops_.to_column(r, n_, m_);
    for (auto& p : c) p = ops_.ring().neg(p);
    return c;
  }

 private:
  VectorOps ops_;
  std::size_t m_, n_;
  std::vector<ModVector> gb_;
};

}  // namespace detail

/// Generators of ker h that are nonzero in the source.
inline std::vector<Column> kernel_generators(const ModuleHom& h) {
  std::vector<Column> out;
  for (auto& c : detail::GraphBasis(h).kernel()) {
    Column r = h.source().reduce(c);
    bool zero = true;
    for (const auto& p : r) zero = zero && p.is_zero();
    if (!zero) out.push_back(std::move(r));
  }
  return out;
}

struct SubmoduleData {
  FPModule module;
  ModuleHom inclusion;
};

/// ker h as a presented module with its inclusion into the source.
inline SubmoduleData kernel(const ModuleHom& h) {
  auto gens = kernel_generators(h);
  const FPAlgebra& a = h.source().algebra();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("k" + std::to_string(i + 1));
  FPModule free = FPModule(a, names, {});
  ModuleHom onto(free, h.source(), gens);
  FPModule k(a, names, detail::GraphBasis(onto).kernel());
  return {k, ModuleHom(k, h.source(), gens)};
}

struct QuotientData {
  FPModule module;
  ModuleHom projection;
};

/// coker h with its projection from the target.
inline QuotientData cokernel(const ModuleHom& h) {
  std::vector<Column> rel = h.target().relations();
  for (const auto& c : h.images()) rel.push_back(c);
  FPModule q(h.target().algebra(), h.target().names(), rel);
  std::vector<Column> im;
  for (std::size_t j = 0; j < q.rank(); ++j) im.push_back(q.generator(j));
  return {q, ModuleHom(h.target(), q, im)};
}

inline std::optional<Column> preimage(const ModuleHom& h, const Column& w) {
  auto p = detail::GraphBasis(h).preimage(w);
  if (!p) return std::nullopt;
  return h.source().reduce(*p);
}

inline HomClass classify(const ModuleHom& h) {
  detail::GraphBasis g(h);
  HomClass c;
  c.is_epi = true;
  for (std::size_t k = 0; k < h.target().rank() && c.is_epi; ++k)
    if (!g.preimage(h.target().generator(k))) c.is_epi = false;
  c.is_mono = true;
  for (const auto& v : g.kernel())
    if (!h.source().is_zero_element(v)) {
      c.is_mono = false;
      break;
    }
  c.is_iso = c.is_epi && c.is_mono;
  return c;
}

/// The inverse of an isomorphism, built from preimages of the target generators.
inline std::optional<ModuleHom> inverse(const ModuleHom& h) {
  if (!classify(h).is_iso) return std::nullopt;
  detail::GraphBasis g(h);
  std::vector<Column> im;
  for (std::size_t k = 0; k < h.target().rank(); ++k) im.push_back(*g.preimage(h.target().generator(k)));
  return ModuleHom(h.target(), h.source(), im);
}

/// X -r-> Y -s-> Z -> 0 is exact: s r = 0, s onto, ker s inside im r.
inline SequenceVerdict check_right_exact(const ModuleHom& r, const ModuleHom& s) {
  if (!(r.target() == s.source())) throw ShapeMismatch("check_right_exact: the maps are not composable");
  for (std::size_t j = 0; j < r.source().rank(); ++j)
    if (!s.target().is_zero_element(s.apply(r.images()[j])))
      return SequenceVerdict::failure(SequenceFailure::composite_nonzero, {"", j});
  detail::GraphBasis gs(s);
  for (std::size_t k = 0; k < s.target().rank(); ++k)
    if (!gs.preimage(s.target().generator(k)))
      return SequenceVerdict::failure(SequenceFailure::not_epi, {"", k});
  detail::GraphBasis gr(r);
  auto ker = gs.kernel();
  for (std::size_t i = 0; i < ker.size(); ++i)
    if (!gr.preimage(ker[i])) return SequenceVerdict::failure(SequenceFailure::induced_not_iso, {"", i});
  return SequenceVerdict::success();
}

struct Simplified {
  FPModule module;
  ModuleHom to;    // original -> simplified
  ModuleHom from;  // simplified -> original
};

/// Removes generators that vanish or that some relation expresses through the
/// others (a relation whose coefficient at that generator is a nonzero constant).
inline Simplified simplify(const FPModule& m) {
  const FPAlgebra& a = m.algebra();
  const PolyRing& r = a.ring();
  const std::size_t n = m.rank();
  std::vector<Column> rel = m.relations();
  // a generator that vanishes may be added as a relation of its own
  for (std::size_t j = 0; j < n; ++j)
    if (m.is_zero_element(m.generator(j))) rel.push_back(m.generator(j));
  std::vector<Column> expr;  // expr[j]: generator j in terms of the survivors
  for (std::size_t j = 0; j < n; ++j) expr.push_back(m.generator(j));
  std::vector<bool> alive(n, true);

  auto eliminate = [&](Column& v, const Column& piv, std::size_t j, const Rational& c) {
    if (v[j].is_zero()) return;
    Polynomial q = r.scale(v[j], a.field().inv(c));
    for (std::size_t i = 0; i < n; ++i) v[i] = a.normal_form(r.sub(v[i], r.mul(q, piv[i])));
  };

  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t k = 0; k < rel.size() && !pick; ++k)
      for (std::size_t j = 0; j < n && !pick; ++j)
        if (alive[j] && !rel[k][j].is_zero() && rel[k][j].is_constant()) pick = {k, j};
    if (!pick) break;
    auto [k, j] = *pick;
    Column piv = rel[k];
    Rational c = piv[j].constant_value();
    rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& v : rel) eliminate(v, piv, j, c);
    for (auto& v : expr) eliminate(v, piv, j, c);
    alive[j] = false;
  }

  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (alive[j]) keep.push_back(j);
  auto restrict = [&](const Column& v) {
    Column c;
    for (auto j : keep) c.push_back(v[j]);
    return c;
  };
  std::vector<std::string> names;
  for (auto j : keep) names.push_back(m.names()[j]);
  std::vector<Column> rels;
  for (const auto& v : rel) rels.push_back(restrict(v));
  FPModule s(a, names, rels);
  std::vector<Column> to, from;
  for (const auto& e : expr) to.push_back(restrict(e));
  for (auto j : keep) from.push_back(m.generator(j));
  return {s, ModuleHom(m, s, to), ModuleHom(s, m, from)};
}

/// Matrix over k of v |-> p v on a finite-dimensional module, columns indexed
/// by the standard basis.
inline std::vector<std::vector<Rational>> multiplication_matrix(const FPModule& m, const Polynomial& p) {
  auto basis = m.standard_basis();
  if (!basis) throw SizeLimit("multiplication_matrix needs a finite-dimensional module");
  const std::size_t d = basis->size();
  std::vector<std::vector<Rational>> mat(d, std::vector<Rational>(d));
  for (std::size_t j = 0; j < d; ++j) {
    auto c = m.coordinates(m.scale(p, m.basis_element((*basis)[j])));
    for (std::size_t i = 0; i < d; ++i) mat[i][j] = c[i];
  }
  return mat;
}

/// dim_k Hom_A(P, M) for M finite-dimensional: tuples (m_j) with
/// sum_j r_j m_j = 0 for every relation r of P.
inline std::size_t hom_dimension(const FPModule& p, const FPModule& m) {
  auto basis = m.standard_basis();
  if (!basis) throw SizeLimit("hom_dimension needs a finite-dimensional target");
  const std::size_t d = basis->size();
  const std::size_t n = p.rank();
  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : p.relations()) {
    std::vector<std::vector<Rational>> block(d, std::vector<Rational>(n * d));
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[j].is_zero()) continue;
      auto mat = multiplication_matrix(m, rel[j]);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) block[i][j * d + k] = mat[i][k];
    }
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return n * d - linear_rank(rows, m.algebra().field());
}

}  // namespace cotangent::ring
