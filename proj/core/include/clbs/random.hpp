#pragma once

// Seeded, platform-independent random draws for property checks and trials.

#include <cstdint>
#include <random>

#include "clbs/algebra.hpp"
#include "clbs/graph.hpp"

namespace clbs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0. Modulo bias is irrelevant at these sizes.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() & 1U) != 0; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Non-zero coefficient from {±1..±5} scaled by 1, 1/2 or 1/3.
Rational random_coefficient(Rng& rng);

/// Word of length 1..max_length over all vertices, edges and ghosts.
Word random_word(const SeparatedGraph& g, Rng& rng, std::size_t max_length);

/// 1..max_terms random words with random coefficients (may collect to 0).
Element random_element(const SeparatedGraph& g, Rng& rng,
                       std::size_t max_terms, std::size_t max_length);

}  // namespace clbs
