#pragma once

// Seeded generators for property-style tests.

#include "cotangent/testing/generators.hpp"

namespace cotangent::testgen {

inline testing::Engine& engine() {
  static testing::Engine rng(20261018);
  return rng;
}

inline long uniform(long lo, long hi) { return testing::uniform(engine(), lo, hi); }

inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound) {
  return testing::random_matrix(engine(), rows, cols, bound);
}

inline FGAbGroup random_group(std::size_t max_gens, std::size_t max_rels, long bound) {
  return testing::random_group(engine(), max_gens, max_rels, bound);
}

inline AbHom random_hom_into(const FGAbGroup& target, std::size_t source_gens, long bound) {
  return testing::random_hom_into(engine(), target, source_gens, bound);
}

inline AbHom random_hom_from(const FGAbGroup& source, std::size_t target_gens, long bound) {
  return testing::random_hom_from(engine(), source, target_gens, bound);
}

}  // namespace cotangent::testgen
