#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace cotangent {

enum class SequenceFailure { composite_nonzero, not_epi, induced_not_iso };

inline const char* to_string(SequenceFailure f) {
  switch (f) {
    case SequenceFailure::composite_nonzero:
      return "composite_nonzero";
    case SequenceFailure::not_epi:
      return "not_epi";
    case SequenceFailure::induced_not_iso:
      return "induced_not_iso";
  }
  return "?";
}

/// Where a check failed: the fiber label (empty outside fibered contexts) and a generator index.
struct Witness {
  std::string fiber;
  std::size_t generator = 0;

  std::string describe() const {
    std::string s = fiber.empty() ? std::string() : "fiber " + fiber + ", ";
    return s + "generator " + std::to_string(generator);
  }
};

/// Outcome of a right-exactness check X -> Y -> Z -> 0.
struct SequenceVerdict {
  bool exact = true;
  std::optional<SequenceFailure> failed_at;
  std::optional<Witness> witness;

  static SequenceVerdict success() { return {}; }
  static SequenceVerdict failure(SequenceFailure f, Witness w) { return {false, f, std::move(w)}; }

  std::string describe() const {
    if (exact) return "EXACT";
    return std::string("NOT EXACT (") + to_string(*failed_at) + (witness ? ", " + witness->describe() : "") +
           ")";
  }
};

struct HomClass {
  bool is_mono = false;
  bool is_epi = false;
  bool is_iso = false;
};

}  // namespace cotangent
