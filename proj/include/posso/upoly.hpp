#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "posso/field.hpp"
#include "posso/poly.hpp"

namespace posso {

/// Dense univariate polynomial; c[k] is the coefficient of x^k and the
/// last entry is nonzero. The zero polynomial has no coefficients.
struct UPoly {
  std::vector<Elem> c;

  bool is_zero() const noexcept { return c.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c.size()) - 1; }
  Elem coeff(std::size_t k) const noexcept { return k < c.size() ? c[k] : 0; }
  bool operator==(const UPoly&) const = default;
};

void trim(UPoly& f);
UPoly make_upoly(std::vector<Elem> coeffs);
Elem evaluate(const PrimeField& field, const UPoly& f, Elem x);

/// Evaluates f at a square matrix by Horner's rule.
Matrix evaluate(const PrimeField& field, const UPoly& f, const Matrix& m);

/// Reads a polynomial involving only variable `var` as a UPoly. Throws
/// DimensionMismatch if another variable occurs.
UPoly to_upoly(const Polynomial& f, std::size_t var);
Polynomial from_upoly(const PolyRing& ring, const UPoly& f, std::size_t var);

/// Shape-Position output: h[i] for i < n-1 gives x_{i+1} = h[i](x_n), and
/// h[n-1] is the eliminating polynomial h_n.
struct UnivariateRep {
  std::vector<UPoly> h;

  std::size_t nvars() const noexcept { return h.size(); }
  const UPoly& eliminant() const { return h.back(); }
  bool operator==(const UnivariateRep&) const = default;
};

/// The represented LEX basis {x_1 - h_1, ..., x_{n-1} - h_{n-1}, h_n}.
std::vector<Polynomial> to_polynomials(const PolyRing& ring, const UnivariateRep& rep);

/// "x = y^2 ; y^3 = 2" style text.
std::string format(const PolyRing& ring, const UnivariateRep& rep);

}  // namespace posso
