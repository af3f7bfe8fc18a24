#pragma once

#include <cstdint>
#include <vector>

#include "posso/poly.hpp"

namespace posso {

/// Ring for the benchmark family: n variables x1..xn over F_p, DRL.
PolyRing appendix_ring(std::size_t n, std::uint32_t p = 65521);

/// f_i = x_i^2 + sum of c * x_a x_b over the squarefree products a < b that
/// are DRL-smaller than x_i^2 + a random linear form + a random constant.
/// Every f_i has leading monomial x_i^2 and the set is already a reduced
/// DRL Groebner basis. Deterministic in the seed.
std::vector<Polynomial> appendix_family(const PolyRing& ring, std::uint64_t seed);

}  // namespace posso
