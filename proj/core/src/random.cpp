#include "clbs/random.hpp"

namespace clbs {

Rational random_coefficient(Rng& rng) {
  auto magnitude = static_cast<std::int64_t>(1 + rng.below(5));
  auto scale = static_cast<std::int64_t>(1 + rng.below(3));
  return Rational(rng.coin() ? magnitude : -magnitude, scale);
}

Word random_word(const SeparatedGraph& g, Rng& rng, std::size_t max_length) {
  const std::size_t nv = g.vertex_count();
  const std::size_t ne = g.edge_count();
  const std::size_t letters = nv + 2 * ne;
  Word w(1 + rng.below(max_length));
  for (auto& gen : w) {
    std::size_t k = rng.below(letters);
    if (k < nv) {
      gen = Generator::vertex(VertexId{k});
    } else if (k < nv + ne) {
      gen = Generator::edge(EdgeId{k - nv});
    } else {
      gen = Generator::ghost(EdgeId{k - nv - ne});
    }
  }
  return w;
}

Element random_element(const SeparatedGraph& g, Rng& rng,
                       std::size_t max_terms, std::size_t max_length) {
  Element x;
  const std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t i = 0; i < terms; ++i) {
    Word w = random_word(g, rng, max_length);
    x.add(w, random_coefficient(rng));
  }
  return x;
}

}  // namespace clbs
