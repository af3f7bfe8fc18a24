#include "posso/bench.hpp"

#include <string>

namespace posso {

PolyRing appendix_ring(std::size_t n, std::uint32_t p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return PolyRing(PrimeField(p), n, TermOrder::Kind::DRL, names);
}

std::vector<Polynomial> appendix_family(const PolyRing& ring, std::uint64_t seed) {
  const std::size_t n = ring.nvars();
  const PrimeField& field = ring.field();
  const TermOrder& order = ring.order();
  Rng rng(seed);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Monomial lead = Monomial::variable(i, 2);
    std::vector<Term> terms{{lead, 1}};
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const Monomial m = Monomial::variable(a) * Monomial::variable(b);
        if (order.less(m, lead)) terms.push_back({m, field.random_element(rng)});
      }
    }
    for (std::size_t j = 0; j < n; ++j) terms.push_back({Monomial::variable(j), field.random_element(rng)});
    terms.push_back({Monomial{}, field.random_element(rng)});
    out.push_back(ring.normalize(std::move(terms)));
  }
  return out;
}

}  // namespace posso
