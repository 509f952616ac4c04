#pragma once

// Finitely generated abelian groups given by generators and relations,
// their homomorphisms, kernels, cokernels and right-exactness checks.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/errors.hpp"
#include "cotangent/int_matrix.hpp"
#include "cotangent/smith.hpp"
#include "cotangent/verdict.hpp"

namespace cotangent {

/// Z^ngens modulo the column span of `relations` (an ngens x r matrix).
///
/// The Smith data of the relation matrix is computed once at construction;
/// copies share it.
class FGAbGroup {
 public:
  FGAbGroup() : FGAbGroup(0, IntMatrix(0, 0)) {}

  FGAbGroup(std::size_t ngens, IntMatrix relations) {
    if (relations.rows() != ngens)
      throw ShapeMismatch("FGAbGroup: relation matrix must have one row per generator");
    auto impl = std::make_shared<Impl>();
    impl->ngens = ngens;
    impl->relations = std::move(relations);
    SmithForm snf = smith_normal_form(impl->relations);
    impl->to_diagonal = std::move(snf.U);
    impl->from_diagonal = std::move(snf.U_inverse);
    impl->diagonal.assign(ngens, Integer(0));
    for (std::size_t i = 0; i < snf.rank; ++i) impl->diagonal[i] = snf.S(i, i);
    for (std::size_t i = 0; i < ngens; ++i) {
      if (impl->diagonal[i] == 1) continue;
      impl->nontrivial.push_back(i);
      impl->invariant_factors.push_back(impl->diagonal[i]);
    }
    impl_ = std::move(impl);
  }

  static FGAbGroup free(std::size_t rank) { return FGAbGroup(rank, IntMatrix(rank, 0)); }

  /// Z/order, with order 0 meaning Z.
  static FGAbGroup cyclic(const Integer& order) { return from_invariants({order}); }

  /// One generator per listed factor; a factor 0 contributes a free summand.
  static FGAbGroup from_invariants(const std::vector<Integer>& factors) {
    std::vector<IntVector> rels;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (factors[i] != 0) {
        IntVector col = zero_vector(factors.size());
        col[i] = factors[i];
        rels.push_back(std::move(col));
      }
    return FGAbGroup(factors.size(), IntMatrix::from_columns(factors.size(), rels));
  }

  static FGAbGroup zero() { return FGAbGroup(); }

  std::size_t ngens() const { return impl_->ngens; }
  const IntMatrix& relations() const { return impl_->relations; }

  /// Divisor chain with the 1s dropped: d_1 | d_2 | ... , free summands (0) last.
  const std::vector<Integer>& invariant_factors() const { return impl_->invariant_factors; }

  bool is_zero() const { return impl_->invariant_factors.empty(); }

  bool is_finite() const {
    for (const auto& d : impl_->invariant_factors)
      if (d == 0) return false;
    return true;
  }

  std::optional<Integer> order() const {
    Integer n = 1;
    for (const auto& d : impl_->invariant_factors) {
      if (d == 0) return std::nullopt;
      n *= d;
    }
    return n;
  }

  /// Coordinates of x in the decomposition (+)_i Z/d_i over the nontrivial factors;
  /// finite coordinates are reduced into [0, d_i).
  IntVector canonical(const IntVector& x) const {
    check_length(x);
    IntVector y = impl_->to_diagonal * x;
    IntVector out;
    out.reserve(impl_->nontrivial.size());
    for (std::size_t i : impl_->nontrivial) {
      const Integer& d = impl_->diagonal[i];
      if (d == 0) {
        out.push_back(y[i]);
      } else {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
        out.push_back(r);
      }
    }
    return out;
  }

  /// Inverse of `canonical` up to relations: a generator-coordinate representative.
  IntVector from_canonical(const IntVector& c) const {
    if (c.size() != impl_->nontrivial.size())
      throw ShapeMismatch("FGAbGroup::from_canonical: wrong coordinate count");
    IntVector y = zero_vector(ngens());
    for (std::size_t k = 0; k < c.size(); ++k) y[impl_->nontrivial[k]] = c[k];
    return impl_->from_diagonal * y;
  }

  /// x lies in the relation lattice, i.e. represents the neutral element.
  bool is_neutral(const IntVector& x) const { return is_zero_vector(canonical(x)); }

  bool same_element(const IntVector& x, const IntVector& y) const {
    check_length(x);
    check_length(y);
    IntVector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return is_neutral(d);
  }

  /// Every element, in generator coordinates (finite groups only).
  std::vector<IntVector> elements() const {
    if (!is_finite()) throw SizeLimit("FGAbGroup::elements: group is infinite");
    const auto& f = impl_->invariant_factors;
    std::vector<IntVector> out;
    IntVector c = zero_vector(f.size());
    for (;;) {
      out.push_back(from_canonical(c));
      std::size_t k = 0;
      while (k < f.size()) {
        c[k] += 1;
        if (c[k] < f[k]) break;
        c[k] = 0;
        ++k;
      }
      if (k == f.size()) break;
    }
    return out;
  }

  /// Same generators and the same relation matrix (not mere isomorphism).
  friend bool operator==(const FGAbGroup& a, const FGAbGroup& b) {
    return a.impl_ == b.impl_ || (a.ngens() == b.ngens() && a.relations() == b.relations());
  }

  bool isomorphic_to(const FGAbGroup& other) const {
    return invariant_factors() == other.invariant_factors();
  }

  /// "0", "Z", "Z/6", "Z/2 + Z/2 + Z".
  std::string describe() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : invariant_factors()) {
      os << (first ? "" : " + ") << (d == 0 ? std::string("Z") : "Z/" + d.get_str());
      first = false;
    }
    return os.str();
  }

 private:
  struct Impl {
    std::size_t ngens = 0;
    IntMatrix relations;
    IntMatrix to_diagonal;
    IntMatrix from_diagonal;
    std::vector<Integer> diagonal;
    std::vector<std::size_t> nontrivial;
    std::vector<Integer> invariant_factors;
  };

  void check_length(const IntVector& x) const {
    if (x.size() != ngens()) throw ShapeMismatch("FGAbGroup: element has wrong number of coordinates");
  }

  std::shared_ptr<const Impl> impl_;
};

/// Homomorphism acting on generator columns: generator j of the source maps to column j.
class AbHom {
 public:
  AbHom(FGAbGroup source, FGAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
      throw ShapeMismatch("AbHom: matrix shape must be ngens(target) x ngens(source)");
    IntMatrix images = matrix_ * source_.relations();
    for (std::size_t j = 0; j < images.cols(); ++j)
      if (!target_.is_neutral(images.column(j)))
        throw IllFormedHom("AbHom: source relation " + std::to_string(j) +
                           " is not sent into the target relations");
  }

  static AbHom identity(const FGAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.ngens())); }
  static AbHom zero(const FGAbGroup& s, const FGAbGroup& t) {
    return AbHom(s, t, IntMatrix(t.ngens(), s.ngens()));
  }

  const FGAbGroup& source() const { return source_; }
  const FGAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }

  bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!target_.is_neutral(matrix_.column(j))) return false;
    return true;
  }

 private:
  FGAbGroup source_;
  FGAbGroup target_;
  IntMatrix matrix_;
};

/// second ∘ first
inline AbHom compose(const AbHom& second, const AbHom& first) {
  if (!(first.target() == second.source())) throw ShapeMismatch("compose: middle groups differ");
  return AbHom(first.source(), second.target(), second.matrix() * first.matrix());
}

inline bool equal_maps(const AbHom& a, const AbHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  for (std::size_t j = 0; j < a.source().ngens(); ++j)
    if (!a.target().same_element(a.matrix().column(j), b.matrix().column(j))) return false;
  return true;
}

inline FGAbGroup direct_sum(const std::vector<FGAbGroup>& parts) {
  std::size_t n = 0;
  std::vector<IntMatrix> blocks;
  for (const auto& g : parts) {
    n += g.ngens();
    blocks.push_back(g.relations());
  }
  return FGAbGroup(n, block_diagonal(blocks));
}

inline FGAbGroup power(const FGAbGroup& g, std::size_t copies) {
  return direct_sum(std::vector<FGAbGroup>(copies, g));
}

/// A group together with a map out of it (kernel inclusion) or into it (cokernel projection).
struct GroupWithMap {
  FGAbGroup group;
  AbHom map;
};

inline GroupWithMap cokernel(const AbHom& h) {
  FGAbGroup c(h.target().ngens(), hconcat(h.target().relations(), h.matrix()));
  AbHom proj(h.target(), c, IntMatrix::identity(h.target().ngens()));
  return {c, proj};
}

namespace detail {

// Generators of {v in Z^n : M v lies in the column span of R}, as columns.
inline IntMatrix lattice_preimage(const IntMatrix& m, const IntMatrix& r) {
  IntMatrix stacked = hconcat(m, r);
  return integer_kernel(stacked).row_range(0, m.cols());
}

}  // namespace detail

/// Kernel via the integer kernel of [matrix | target relations], then a
/// quotient by the source relations.
inline GroupWithMap kernel(const AbHom& h) {
  IntMatrix gens = detail::lattice_preimage(h.matrix(), h.target().relations());
  IntMatrix rels = detail::lattice_preimage(gens, h.source().relations());
  FGAbGroup k(gens.cols(), rels);
  return {k, AbHom(k, h.source(), gens)};
}

inline HomClass classify_hom(const AbHom& h) {
  HomClass c;
  c.is_epi = cokernel(h).group.is_zero();
  c.is_mono = kernel(h).group.is_zero();
  c.is_iso = c.is_epi && c.is_mono;
  return c;
}

/// Some x in the source with h(x) = y in the target, if y lies in the image.
inline std::optional<IntVector> preimage(const AbHom& h, const IntVector& y) {
  auto z = solve_integer(hconcat(h.matrix(), h.target().relations()), y);
  if (!z) return std::nullopt;
  return IntVector(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(h.source().ngens()));
}

/// The inverse homomorphism when h is an isomorphism.
inline std::optional<AbHom> inverse(const AbHom& h) {
  if (!classify_hom(h).is_iso) return std::nullopt;
  IntMatrix m(h.source().ngens(), h.target().ngens());
  for (std::size_t j = 0; j < h.target().ngens(); ++j) {
    auto x = preimage(h, unit_vector(h.target().ngens(), j));
    if (!x) return std::nullopt;
    m.set_column(j, *x);
  }
  return AbHom(h.target(), h.source(), m);
}

/// Right exactness of A -r-> B -s-> C -> 0 through the cokernel criterion.
inline SequenceVerdict check_right_exact(const AbHom& r, const AbHom& s, const std::string& fiber = {}) {
  if (!(r.target() == s.source())) throw ShapeMismatch("check_right_exact: target(r) != source(s)");
  IntMatrix composite = s.matrix() * r.matrix();
  for (std::size_t j = 0; j < composite.cols(); ++j)
    if (!s.target().is_neutral(composite.column(j)))
      return SequenceVerdict::failure(SequenceFailure::composite_nonzero, {fiber, j});

  FGAbGroup coker_s = cokernel(s).group;
  for (std::size_t j = 0; j < coker_s.ngens(); ++j)
    if (!coker_s.is_neutral(unit_vector(coker_s.ngens(), j)))
      return SequenceVerdict::failure(SequenceFailure::not_epi, {fiber, j});

  FGAbGroup coker_r = cokernel(r).group;
  AbHom induced(coker_r, s.target(), s.matrix());
  GroupWithMap k = kernel(induced);
  for (std::size_t j = 0; j < k.group.ngens(); ++j)
    if (!coker_r.is_neutral(k.map.matrix().column(j)))
      return SequenceVerdict::failure(SequenceFailure::induced_not_iso, {fiber, j});
  return SequenceVerdict::success();
}

/// Linear conditions on a direct sum of groups: unknowns live in the column
/// blocks, each condition block is a target group, and the solution set is
/// the kernel of the assembled homomorphism.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(std::vector<FGAbGroup> unknowns) : unknowns_(std::move(unknowns)) {
    std::size_t off = 0;
    for (const auto& g : unknowns_) {
      col_offsets_.push_back(off);
      off += g.ngens();
    }
    ncols_ = off;
  }

  /// Adds a condition valued in `target`; returns its block index.
  std::size_t add_condition(const FGAbGroup& target) {
    row_offsets_.push_back(nrows_);
    nrows_ += target.ngens();
    conditions_.push_back(target);
    entries_.emplace_back();
    return conditions_.size() - 1;
  }

  /// Adds `block` (ngens(condition) x ngens(unknown)) into the assembled matrix.
  void add_block(std::size_t condition, std::size_t unknown, const IntMatrix& block) {
    if (block.rows() != conditions_.at(condition).ngens() || block.cols() != unknowns_.at(unknown).ngens())
      throw ShapeMismatch("ConstraintSystem::add_block: block shape mismatch");
    entries_[condition].push_back({unknown, block});
  }

  const std::vector<std::size_t>& unknown_offsets() const { return col_offsets_; }
  FGAbGroup ambient() const { return direct_sum(unknowns_); }

  /// The solution group with its inclusion into the ambient direct sum.
  GroupWithMap solve() const {
    IntMatrix m(nrows_, ncols_);
    for (std::size_t c = 0; c < conditions_.size(); ++c)
      for (const auto& [u, block] : entries_[c])
        for (std::size_t i = 0; i < block.rows(); ++i)
          for (std::size_t j = 0; j < block.cols(); ++j) m(row_offsets_[c] + i, col_offsets_[u] + j) += block(i, j);
    return kernel(AbHom(ambient(), direct_sum(conditions_), m));
  }

 private:
  struct Entry {
    std::size_t unknown;
    IntMatrix block;
  };
  std::vector<FGAbGroup> unknowns_;
  std::vector<FGAbGroup> conditions_;
  std::vector<std::size_t> col_offsets_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::vector<Entry>> entries_;
  std::size_t ncols_ = 0;
  std::size_t nrows_ = 0;
};

/// Hom(G, H) as a group; an element decodes to the homomorphism sending
/// generator j of G to the j-th block of its image in H^ngens(G).
struct HomGroup {
  FGAbGroup group;
  AbHom embedding;
  FGAbGroup source;
  FGAbGroup target;

  AbHom decode(const IntVector& element) const {
    IntVector flat = embedding.apply(element);
    const std::size_t m = target.ngens();
    IntMatrix mat(m, source.ngens());
    for (std::size_t j = 0; j < source.ngens(); ++j)
      for (std::size_t i = 0; i < m; ++i) mat(i, j) = flat[j * m + i];
    return AbHom(source, target, mat);
  }
};

inline HomGroup hom_group(const FGAbGroup& source, const FGAbGroup& target) {
  const std::size_t n = source.ngens();
  ConstraintSystem sys(std::vector<FGAbGroup>(n, target));
  const IntMatrix& rel = source.relations();
  for (std::size_t k = 0; k < rel.cols(); ++k) {
    std::size_t c = sys.add_condition(target);
    for (std::size_t j = 0; j < n; ++j)
      if (rel(j, k) != 0) sys.add_block(c, j, IntMatrix::scalar(target.ngens(), rel(j, k)));
  }
  GroupWithMap sol = sys.solve();
  return {sol.group, sol.map, source, target};
}

/// The diagonal presentation (+) Z/d_i of G with the isomorphisms both ways.
struct CanonicalForm {
  FGAbGroup group;
  AbHom to_canonical;
  AbHom from_canonical;
};

inline CanonicalForm canonicalize(const FGAbGroup& g) {
  FGAbGroup c = FGAbGroup::from_invariants(g.invariant_factors());
  IntMatrix to(c.ngens(), g.ngens());
  for (std::size_t j = 0; j < g.ngens(); ++j) to.set_column(j, g.canonical(unit_vector(g.ngens(), j)));
  IntMatrix from(g.ngens(), c.ngens());
  for (std::size_t j = 0; j < c.ngens(); ++j) from.set_column(j, g.from_canonical(unit_vector(c.ngens(), j)));
  return {c, AbHom(g, c, to), AbHom(c, g, from)};
}

}  // namespace cotangent
