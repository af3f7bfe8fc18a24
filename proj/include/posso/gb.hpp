#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posso/poly.hpp"
#include "posso/upoly.hpp"

namespace posso {

/// Reduced Groebner basis: monic, no term of any element divisible by the
/// leading monomial of another, sorted by increasing leading monomial.
struct GroebnerBasis {
  PolyRing ring;
  std::vector<Polynomial> polys;

  /// Leading monomials, which for a reduced basis are exactly the minimal
  /// generators of the initial ideal.
  std::vector<Monomial> leading_terms() const;
};

enum class GbEngine {
  /// One S-pair at a time, normal selection strategy, Gebauer-Moeller
  /// criteria, polynomial division for reduction.
  Classic,
  /// All pairs of minimal lcm degree at once, reduced together as rows of
  /// one sparse matrix.
  Batched,
};

struct GbStats {
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t matrices = 0;
  std::uint64_t max_rows = 0;
  std::uint64_t max_cols = 0;
};

/// Reduced basis of <f> for ring.order(). Inputs must be expressed in `ring`.
GroebnerBasis buchberger(const PolyRing& ring, std::span<const Polynomial> f,
                         GbEngine engine = GbEngine::Classic, GbStats* stats = nullptr);

/// Batched engine for DRL, classic engine otherwise.
GroebnerBasis groebner(const PolyRing& ring, std::span<const Polynomial> f, GbStats* stats = nullptr);

/// Minimalizes and inter-reduces an arbitrary Groebner basis.
GroebnerBasis reduce_basis(const PolyRing& ring, std::vector<Polynomial> g);

bool is_reduced(const GroebnerBasis& g);

/// True iff every variable has a pure power among the leading monomials.
bool is_zero_dimensional(const GroebnerBasis& g);

/// Number of standard monomials. Throws NotZeroDimensional.
std::size_t degree(const GroebnerBasis& g);

/// LEX basis of <f> from the classic engine, reshaped into Shape Position.
/// Throws NotZeroDimensional or NotShapePosition.
UnivariateRep lex_oracle(const PolyRing& ring, std::span<const Polynomial> f);

/// Reads a reduced LEX basis as {x_i - h_i(x_n), h_n}; throws NotShapePosition.
UnivariateRep shape_from_lex(const GroebnerBasis& lex);

}  // namespace posso
