#pragma once

// Finitely presented commutative algebras k[x]/I over a field, with a reduced
// Groebner basis computed at construction, and their homomorphisms.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/errors.hpp"
#include "cotangent/groebner.hpp"
#include "cotangent/polynomial.hpp"

namespace cotangent::ring {

/// Bound on the variables of a user-supplied algebra.
inline constexpr std::size_t user_variable_limit = 6;

class FPAlgebra {
 public:
  FPAlgebra(PolyRing ring, std::vector<Polynomial> relators) {
    auto d = std::make_shared<Data>(Data{ring, {}, {}, VectorOps(ring)});
    for (auto& r : relators) {
      Polynomial p = ring.adopt(r);
      if (!p.is_zero()) d->relators.push_back(std::move(p));
    }
    std::vector<ModVector> gens;
    for (const auto& p : d->relators) gens.push_back(d->ops.from_column({p}));
    d->gb = ring::groebner_basis(d->ops, std::move(gens));
    d_ = std::move(d);
  }

  /// k[vars]/(relators), relators in the infix grammar.
  static FPAlgebra parse(Field field, std::vector<std::string> vars, const std::vector<std::string>& relators,
                         MonomialOrder order = MonomialOrder::grevlex) {
    PolyRing r(field, std::move(vars), order);
    std::vector<Polynomial> rel;
    for (const auto& s : relators) rel.push_back(r.parse(s));
    return FPAlgebra(r, rel);
  }

  static FPAlgebra polynomial(Field field, std::vector<std::string> vars) {
    return FPAlgebra(PolyRing(field, std::move(vars)), {});
  }

  const PolyRing& ring() const { return d_->ring; }
  const Field& field() const { return d_->ring.field(); }
  const std::vector<std::string>& variables() const { return d_->ring.variables(); }
  std::size_t nvars() const { return d_->ring.nvars(); }
  const std::vector<Polynomial>& relators() const { return d_->relators; }

  std::vector<Polynomial> groebner_basis() const {
    std::vector<Polynomial> out;
    for (const auto& v : d_->gb) out.push_back(d_->ops.to_column(v, 1)[0]);
    return out;
  }

  /// Leading monomials of the reduced basis, in basis order.
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& v : d_->gb) out.push_back(v.front().m);
    return out;
  }

  Polynomial normal_form(const Polynomial& p) const {
    return d_->ops.to_column(d_->ops.reduce(d_->ops.from_column({ring().adopt(p)}), d_->gb), 1)[0];
  }

  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  bool is_zero_ring() const { return contains(ring().one()); }

  /// Parses and reduces an element.
  Polynomial element(const std::string& s) const { return normal_form(ring().parse(s)); }

  Polynomial add(const Polynomial& a, const Polynomial& b) const { return normal_form(ring().add(a, b)); }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return normal_form(ring().sub(a, b)); }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return normal_form(ring().mul(a, b)); }

  std::string format(const Polynomial& p) const { return ring().format(p); }

  /// Monomials outside the initial ideal, the canonical basis of A over k,
  /// or nothing when A is infinite-dimensional.
  std::optional<std::vector<Monomial>> standard_monomials() const {
    const std::size_t n = nvars();
    auto leads = leading_monomials();
    std::vector<unsigned> bound(n, 0);
    for (const auto& m : leads) {
      std::size_t support = 0, which = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (m.e[i]) {
          ++support;
          which = i;
        }
      if (support == 0) return std::vector<Monomial>{};
      if (support == 1 && (bound[which] == 0 || m.e[which] < bound[which])) bound[which] = m.e[which];
    }
    for (std::size_t i = 0; i < n; ++i)
      if (bound[i] == 0) return std::nullopt;
    std::vector<Monomial> out;
    Monomial m;
    for (;;) {
      bool standard = true;
      for (const auto& l : leads)
        if (l.divides(m)) {
          standard = false;
          break;
        }
      if (standard) out.push_back(m);
      std::size_t k = 0;
      while (k < n) {
        if (++m.e[k] < bound[k]) break;
        m.e[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring().cmp(a, b) > 0; });
    return out;
  }

  std::optional<std::size_t> dimension() const {
    auto s = standard_monomials();
    if (!s) return std::nullopt;
    return s->size();
  }

  /// Same variables, order and ideal.
  bool operator==(const FPAlgebra& o) const {
    if (d_ == o.d_) return true;
    if (!(ring() == o.ring()) || d_->gb.size() != o.d_->gb.size()) return false;
    auto a = groebner_basis();
    auto b = o.groebner_basis();
    return a == b;
  }

  std::string describe() const {
    std::string s = field().tag() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + variables()[i];
    s += "]";
    if (!relators().empty()) {
      s += "/(";
      for (std::size_t i = 0; i < relators().size(); ++i) s += (i ? ", " : "") + format(relators()[i]);
      s += ")";
    }
    return s;
  }

 private:
  struct Data {
    PolyRing ring;
    std::vector<Polynomial> relators;
    std::vector<ModVector> gb;
    VectorOps ops;
  };
  std::shared_ptr<const Data> d_;
};

/// Checks the user-facing variable guard.
inline void check_user_algebra(const FPAlgebra& a) {
  if (a.nvars() > user_variable_limit)
    throw SizeLimit("at most " + std::to_string(user_variable_limit) + " variables are accepted, got " +
                    std::to_string(a.nvars()));
}

class AlgebraHom {
 public:
  /// images[i] is the image of source variable i, an element of the target.
  AlgebraHom(FPAlgebra source, FPAlgebra target, std::vector<Polynomial> images)
      : source_(std::move(source)), target_(std::move(target)) {
    if (!(source_.field() == target_.field())) throw ShapeMismatch("algebra hom between different fields");
    if (images.size() != source_.nvars()) throw ShapeMismatch("one image per source variable required");
    for (auto& p : images) images_.push_back(target_.normal_form(p));
    for (std::size_t i = 0; i < source_.relators().size(); ++i)
      if (!apply(source_.relators()[i]).is_zero())
        throw NotAHomomorphism("relator " + source_.format(source_.relators()[i]) +
                               " does not map into the target ideal");
  }

  static AlgebraHom identity(const FPAlgebra& a) {
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < a.nvars(); ++i) im.push_back(a.ring().variable(i));
    return AlgebraHom(a, a, im);
  }

  /// Images given as strings in the target's variables.
  static AlgebraHom parse(const FPAlgebra& source, const FPAlgebra& target, const std::vector<std::string>& images) {
    std::vector<Polynomial> im;
    for (const auto& s : images) im.push_back(target.ring().parse(s));
    return AlgebraHom(source, target, im);
  }

  const FPAlgebra& source() const { return source_; }
  const FPAlgebra& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& p) const {
    return target_.normal_form(source_.ring().substitute(p, images_, target_.ring()));
  }

  bool operator==(const AlgebraHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }

 private:
  FPAlgebra source_;
  FPAlgebra target_;
  std::vector<Polynomial> images_;
};

/// second o first.
inline AlgebraHom compose(const AlgebraHom& second, const AlgebraHom& first) {
  if (!(first.target() == second.source())) throw ShapeMismatch("compose: algebras do not match");
  std::vector<Polynomial> im;
  for (const auto& p : first.images()) im.push_back(second.apply(p));
  return AlgebraHom(first.source(), second.target(), im);
}

namespace detail {

/// Names not clashing with `taken`.
inline std::vector<std::string> fresh_names(const std::vector<std::string>& taken, std::size_t n,
                                            const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = stem + std::to_string(i);
    while (std::find(taken.begin(), taken.end(), s) != taken.end()) s += "_";
    out.push_back(s);
  }
  return out;
}

/// Moves exponents of variables [from, from + n) to [to, to + n).
inline Polynomial shift_variables(const Polynomial& p, std::size_t from, std::size_t to, std::size_t n,
                                  const PolyRing& target) {
  std::vector<Term> t;
  for (const auto& x : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m.e[to + i] = x.m.e[from + i];
    t.push_back({m, x.c});
  }
  return target.make(std::move(t));
}

/// Lex elimination for the image of f: k[y, t] / (J, t_i - f(x_i)), y > t.
class ImageElimination {
 public:
  explicit ImageElimination(const AlgebraHom& f) : f_(f), ring_(make_ring(f)) {
    const std::size_t m = f.target().nvars();
    std::vector<Polynomial> gens;
    for (const auto& g : f.target().groebner_basis()) gens.push_back(ring_.adopt(g));
    for (std::size_t i = 0; i < f.source().nvars(); ++i)
      gens.push_back(ring_.sub(ring_.variable(m + i), ring_.adopt(f.images()[i])));
    gb_ = groebner_basis(ring_, gens);
  }

  /// Some a with f(a) = p, if one exists.
  std::optional<Polynomial> lift(const Polynomial& p) const {
    const std::size_t m = f_.target().nvars();
    const std::size_t n = f_.source().nvars();
    VectorOps ops(ring_);
    std::vector<ModVector> g;
    for (const auto& b : gb_) g.push_back(ops.from_column({b}));
    Polynomial r = ops.to_column(ops.reduce(ops.from_column({ring_.adopt(p)}), g), 1)[0];
    for (std::size_t i = 0; i < m; ++i)
      if (r.uses_variable(i)) return std::nullopt;
    return f_.source().normal_form(shift_variables(r, m, 0, n, f_.source().ring()));
  }

 private:
  static PolyRing make_ring(const AlgebraHom& f) {
    std::vector<std::string> names = f.target().variables();
    auto t = fresh_names(names, f.source().nvars(), "t");
    names.insert(names.end(), t.begin(), t.end());
    return PolyRing(f.target().field(), names, MonomialOrder::lex);
  }

  AlgebraHom f_;
  PolyRing ring_;
  std::vector<Polynomial> gb_;
};

}  // namespace detail

/// Preimage of p under f, if p lies in the image.
inline std::optional<Polynomial> lift(const AlgebraHom& f, const Polynomial& p) {
  return detail::ImageElimination(f).lift(p);
}

inline bool is_surjective(const AlgebraHom& f) {
  detail::ImageElimination e(f);
  for (std::size_t j = 0; j < f.target().nvars(); ++j)
    if (!e.lift(f.target().ring().variable(j))) return false;
  return true;
}

/// Preimages of the target variables when f is onto.
inline std::optional<std::vector<Polynomial>> section_images(const AlgebraHom& f) {
  detail::ImageElimination e(f);
  std::vector<Polynomial> out;
  for (std::size_t j = 0; j < f.target().nvars(); ++j) {
    auto l = e.lift(f.target().ring().variable(j));
    if (!l) return std::nullopt;
    out.push_back(*l);
  }
  return out;
}

/// B = A[y]/(s*y - 1) with f the inclusion: the source variables map to
/// distinct target variables, one target variable y is left over, a target
/// relator has the shape s*y - 1 with s free of y, and the target ideal is
/// generated by the image of the source ideal and that relator.
struct Localization {
  Polynomial s;  // in the source
  std::size_t inverse_variable;
};

inline std::optional<Localization> as_localization(const AlgebraHom& f) {
  const FPAlgebra& a = f.source();
  const FPAlgebra& b = f.target();
  if (b.nvars() != a.nvars() + 1) return std::nullopt;
  std::vector<bool> hit(b.nvars(), false);
  std::vector<std::size_t> where(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    const Polynomial& p = f.images()[i];
    if (p.size() != 1 || p.leading().c != 1 || p.leading().m.degree() != 1) return std::nullopt;
    std::size_t v = 0;
    while (p.leading().m.e[v] == 0) ++v;
    if (hit[v]) return std::nullopt;
    hit[v] = true;
    where[i] = v;
  }
  std::size_t y = 0;
  while (hit[y]) ++y;
  const PolyRing& rb = b.ring();
  for (const auto& rel : b.relators()) {
    // rel = s(x) * y - 1
    std::vector<Term> s_terms;
    bool shape = true;
    Rational constant = 0;
    for (const auto& t : rel.terms()) {
      if (t.m.e[y] == 1) {
        Monomial m = t.m;
        m.e[y] = 0;
        s_terms.push_back({m, t.c});
      } else if (t.m.is_one()) {
        constant = t.c;
      } else {
        shape = false;
      }
    }
    if (!shape || s_terms.empty() || constant == 0) continue;
    // normalize to s*y - 1
    Rational scale = b.field().neg(b.field().inv(constant));
    Polynomial s_b = rb.scale(rb.make(s_terms), scale);
    // translate s back to the source variables
    std::vector<Term> st;
    bool ok = true;
    for (const auto& t : s_b.terms()) {
      Monomial m;
      for (std::size_t v = 0; v < b.nvars(); ++v) {
        if (!t.m.e[v]) continue;
        auto it = std::find(where.begin(), where.end(), v);
        if (it == where.end()) {
          ok = false;
          break;
        }
        m.e[static_cast<std::size_t>(it - where.begin())] = t.m.e[v];
      }
      if (!ok) break;
      st.push_back({m, t.c});
    }
    if (!ok) continue;
    Polynomial s = a.ring().make(st);
    std::vector<Polynomial> gens;
    for (const auto& r : a.relators()) gens.push_back(a.ring().substitute(r, f.images(), rb));
    gens.push_back(rb.sub(rb.mul(a.ring().substitute(s, f.images(), rb), rb.variable(y)), rb.one()));
    if (FPAlgebra(rb, gens) == b) return Localization{a.normal_form(s), y};
  }
  return std::nullopt;
}

/// Rank of a matrix over the field (rows of coefficients).
inline std::size_t linear_rank(std::vector<std::vector<Rational>> rows, const Field& k) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    Rational inv = k.inv(rows[rank][c]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational q = k.mul(rows[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = k.sub(rows[r][j], k.mul(q, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace cotangent::ring
