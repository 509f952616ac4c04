#pragma once

// The operations shared by every concrete Beck context, and the checkers for
// the three exact-sequence theorems written once against them.

#include <concepts>
#include <optional>
#include <string>

#include "cotangent/errors.hpp"
#include "cotangent/verdict.hpp"

namespace cotangent {

/// Omega_x together with the universal derivation eta_x.
template <class Module, class Unit>
struct CotangentData {
  Module omega;
  Unit unit;
};

/// y = z + x with the two coproduct injections f : x -> y and g : z -> y.
template <class Object, class Morphism>
struct Coproduct {
  Object y;
  Morphism f;
  Morphism g;
};

template <class C>
concept BeckContext = requires(const typename C::Object& x, const typename C::Morphism& f,
                               const typename C::Module& m, const typename C::Hom& h) {
  { C::omega(x) } -> std::same_as<CotangentData<typename C::Module, typename C::Unit>>;
  { C::pullback(f, m) } -> std::same_as<typename C::Module>;
  { C::pushforward(f, m) } -> std::same_as<typename C::Module>;
  { C::delta_tilde(f) } -> std::same_as<typename C::Hom>;
  { C::omega_rel(f) } -> std::same_as<CotangentData<typename C::Module, typename C::Unit>>;
  { C::gamma(f) } -> std::same_as<typename C::Hom>;
  { C::compose(h, h) } -> std::same_as<typename C::Hom>;
  { C::classify(h) } -> std::same_as<HomClass>;
  { C::inverse(h) } -> std::same_as<std::optional<typename C::Hom>>;
  { C::is_identity(h) } -> std::same_as<bool>;
  { C::check_right_exact(h, h) } -> std::same_as<SequenceVerdict>;
  { C::is_epimorphism(f) } -> std::same_as<bool>;
  { C::coproduct(x, x) } -> std::same_as<Coproduct<typename C::Object, typename C::Morphism>>;
};

/// Verdict of the epimorphism theorem: classification of delta_tilde.
struct EpiVerdict {
  bool epi = false;
  bool mono = false;
  bool iso = false;

  std::string describe() const {
    if (!epi) return "NOT EPI";
    return iso ? "EPI (iso)" : "EPI";
  }
};

/// Verdict of the coproduct theorem.
struct IsoVerdict {
  bool iso = false;
  std::string detail;

  std::string describe() const { return iso ? "ISO" : "NOT ISO (" + detail + ")"; }
};

/// f_!(Omega_x) -> Omega_y -> Omega_f -> 0 is right exact.
template <BeckContext C>
SequenceVerdict check_theorem1(const typename C::Morphism& f) {
  return C::check_right_exact(C::delta_tilde(f), C::gamma(f));
}

/// For an epimorphism f, delta_tilde(f) is an epimorphism.
template <BeckContext C>
EpiVerdict check_theorem2(const typename C::Morphism& f) {
  if (!C::is_epimorphism(f)) throw NotAnEpi("the morphism is not an epimorphism of the accepted class");
  HomClass c = C::classify(C::delta_tilde(f));
  return {c.is_epi, c.is_mono, c.is_iso};
}

/// With y = z + x, f_!(Omega_x) is isomorphic to Omega_g. The comparison
/// map gamma_g o delta_tilde_f is inverted explicitly and both composites
/// are checked against the identities.
template <BeckContext C>
IsoVerdict check_theorem3(const typename C::Object& x, const typename C::Object& z) {
  auto cp = C::coproduct(x, z);
  auto phi = C::compose(C::gamma(cp.g), C::delta_tilde(cp.f));
  auto psi = C::inverse(phi);
  if (!psi) return {false, "comparison map is not invertible"};
  if (!C::is_identity(C::compose(*psi, phi))) return {false, "psi o phi is not the identity"};
  if (!C::is_identity(C::compose(phi, *psi))) return {false, "phi o psi is not the identity"};
  return {true, {}};
}

}  // namespace cotangent
