#pragma once

// Buchberger's algorithm for submodules of a free module k[x]^r, ideals being
// the case r = 1. Vectors are ordered position over term, position 0 highest.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cotangent/errors.hpp"
#include "cotangent/polynomial.hpp"

namespace cotangent::ring {

/// Default bound on the total degree of a basis element.
inline constexpr unsigned default_degree_limit = 12;
inline constexpr std::size_t basis_size_limit = 4000;

/// COTANGENT_GUARD_DEGREE overrides the default.
inline unsigned degree_limit() {
  if (const char* s = std::getenv("COTANGENT_GUARD_DEGREE")) {
    try {
      long v = std::stol(s);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return default_degree_limit;
}

struct VTerm {
  std::size_t pos;
  Monomial m;
  Rational c;
};

/// Sparse element of k[x]^r with terms sorted decreasingly.
using ModVector = std::vector<VTerm>;

/// Arithmetic on module vectors for one polynomial ring.
class VectorOps {
 public:
  explicit VectorOps(PolyRing r) : r_(std::move(r)) {}

  const PolyRing& ring() const { return r_; }

  int cmp(const VTerm& a, const VTerm& b) const {
    if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
    return r_.cmp(a.m, b.m);
  }

  ModVector from_column(const std::vector<Polynomial>& col, std::size_t offset = 0) const {
    ModVector v;
    for (std::size_t i = 0; i < col.size(); ++i)
      for (const auto& t : col[i].terms()) v.push_back({i + offset, t.m, t.c});
    return v;
  }

  std::vector<Polynomial> to_column(const ModVector& v, std::size_t rank, std::size_t offset = 0) const {
    std::vector<std::vector<Term>> parts(rank);
    for (const auto& t : v)
      if (t.pos >= offset && t.pos < offset + rank) parts[t.pos - offset].push_back({t.m, t.c});
    std::vector<Polynomial> out;
    for (auto& p : parts) out.push_back(Polynomial(std::move(p)));
    return out;
  }

  ModVector sub(const ModVector& x, const ModVector& y) const {
    ModVector out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    const Field& f = r_.field();
    while (i < x.size() || j < y.size()) {
      int c = i == x.size() ? -1 : j == y.size() ? 1 : cmp(x[i], y[j]);
      if (c > 0) {
        out.push_back(x[i++]);
      } else if (c < 0) {
        out.push_back({y[j].pos, y[j].m, f.neg(y[j].c)});
        ++j;
      } else {
        Rational v = f.sub(x[i].c, y[j].c);
        if (v != 0) out.push_back({x[i].pos, x[i].m, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  ModVector mul_term(const ModVector& x, const Monomial& m, const Rational& c) const {
    ModVector out;
    out.reserve(x.size());
    for (const auto& t : x) out.push_back({t.pos, t.m * m, r_.field().mul(t.c, c)});
    return out;
  }

  ModVector monic(const ModVector& x) const {
    if (x.empty()) return x;
    return mul_term(x, Monomial::one(), r_.field().inv(x.front().c));
  }

  static unsigned degree(const ModVector& x) {
    unsigned d = 0;
    for (const auto& t : x) d = std::max(d, t.m.degree());
    return d;
  }

  /// Full reduction of v by g: no term of the result is divisible by a
  /// leading term of g.
  ModVector reduce(ModVector v, const std::vector<ModVector>& g) const {
    ModVector rest;
    while (!v.empty()) {
      const VTerm& lt = v.front();
      const ModVector* div = nullptr;
      for (const auto& b : g)
        if (b.front().pos == lt.pos && b.front().m.divides(lt.m)) {
          div = &b;
          break;
        }
      if (!div) {
        rest.push_back(lt);
        v.erase(v.begin());
        continue;
      }
      Rational q = r_.field().mul(lt.c, r_.field().inv(div->front().c));
      v = sub(v, mul_term(*div, lt.m / div->front().m, q));
    }
    return rest;
  }

 private:
  PolyRing r_;
};

namespace detail {

inline bool single_position(const ModVector& v) {
  for (const auto& t : v)
    if (t.pos != v.front().pos) return false;
  return true;
}

}  // namespace detail

/// Reduced Groebner basis of the submodule generated by gens, sorted by
/// decreasing leading term. Throws DegreeLimitExceeded past the guard.
inline std::vector<ModVector> groebner_basis(const VectorOps& ops, std::vector<ModVector> gens) {
  const unsigned limit = degree_limit();
  std::vector<ModVector> g;
  for (auto& v : gens) {
    if (v.empty()) continue;
    if (VectorOps::degree(v) > limit)
      throw DegreeLimitExceeded("input of degree " + std::to_string(VectorOps::degree(v)) + " exceeds the limit " +
                                std::to_string(limit));
    g.push_back(ops.monic(v));
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (g[i].front().pos != g[k].front().pos) continue;
      const Monomial& a = g[i].front().m;
      const Monomial& b = g[k].front().m;
      if (Monomial::coprime(a, b) && detail::single_position(g[i]) && detail::single_position(g[k])) continue;
      pairs.push_back({i, k, Monomial::lcm(a, b)});
      pending.insert({i, k});
    }
  };
  for (std::size_t k = 0; k < g.size(); ++k) add_pairs(k);

  const PolyRing& r = ops.ring();
  while (!pairs.empty()) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < pairs.size(); ++p) {
      const Pair& a = pairs[p];
      const Pair& b = pairs[best];
      unsigned da = a.lcm.degree(), db = b.lcm.degree();
      if (da < db || (da == db && r.cmp(a.lcm, b.lcm) < 0)) best = p;
    }
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    pending.erase({pr.i, pr.j});

    bool chain = false;
    std::size_t pos = g[pr.i].front().pos;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || g[k].front().pos != pos) continue;
      if (!g[k].front().m.divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
      if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;

    const ModVector& a = g[pr.i];
    const ModVector& b = g[pr.j];
    ModVector s = ops.sub(ops.mul_term(a, pr.lcm / a.front().m, 1), ops.mul_term(b, pr.lcm / b.front().m, 1));
    ModVector h = ops.reduce(std::move(s), g);
    if (h.empty()) continue;
    if (VectorOps::degree(h) > limit)
      throw DegreeLimitExceeded("Groebner basis element of degree " + std::to_string(VectorOps::degree(h)) +
                                " exceeds the limit " + std::to_string(limit));
    if (g.size() >= basis_size_limit) throw SizeLimit("Groebner basis grew past the size limit");
    g.push_back(ops.monic(h));
    add_pairs(g.size() - 1);
  }

  // Keep one element per minimal leading term, then interreduce.
  std::vector<ModVector> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || g[j].front().pos != g[i].front().pos) continue;
      if (!g[j].front().m.divides(g[i].front().m)) continue;
      if (!(g[j].front().m == g[i].front().m) || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<ModVector> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModVector> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    ModVector head{minimal[i].front()};
    ModVector tail(minimal[i].begin() + 1, minimal[i].end());
    ModVector t = ops.reduce(std::move(tail), others);
    head.insert(head.end(), t.begin(), t.end());
    reduced.push_back(ops.monic(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const ModVector& x, const ModVector& y) { return ops.cmp(x.front(), y.front()) > 0; });
  return reduced;
}

/// Ideal Groebner basis as polynomials.
inline std::vector<Polynomial> groebner_basis(const PolyRing& r, const std::vector<Polynomial>& gens) {
  VectorOps ops(r);
  std::vector<ModVector> v;
  for (const auto& p : gens) v.push_back(ops.from_column({r.adopt(p)}));
  std::vector<Polynomial> out;
  for (const auto& b : groebner_basis(ops, std::move(v))) out.push_back(ops.to_column(b, 1)[0]);
  return out;
}

}  // namespace cotangent::ring
