#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posso/field.hpp"
#include "posso/linalg.hpp"

namespace posso {

inline constexpr std::size_t kMaxVars = 24;

/// Exponent vector (alpha_1, ..., alpha_n) with a cached total degree.
/// Storage has room for kMaxVars variables; unused slots stay zero so a
/// monomial does not need to know n.
class Monomial {
 public:
  Monomial() = default;

  /// Throws ExponentOverflow for exponents above 65535 and
  /// DimensionMismatch for more than kMaxVars entries.
  static Monomial from_exponents(std::span<const std::uint32_t> exps);
  static Monomial variable(std::size_t i, std::uint32_t power = 1);

  std::uint16_t operator[](std::size_t i) const noexcept { return e_[i]; }
  std::uint32_t degree() const noexcept { return deg_; }
  bool is_one() const noexcept { return deg_ == 0; }

  Monomial operator*(const Monomial& o) const;
  /// Requires o.divides(*this).
  Monomial operator/(const Monomial& o) const noexcept;
  bool divides(const Monomial& o) const noexcept;
  Monomial lcm(const Monomial& o) const noexcept;
  bool coprime(const Monomial& o) const noexcept;

  std::size_t hash() const noexcept;
  bool operator==(const Monomial& o) const noexcept = default;

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// x_1 > x_2 > ... > x_n.
struct TermOrder {
  enum class Kind { DRL, LEX };
  Kind kind = Kind::DRL;
  std::size_t n = 0;

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const noexcept {
    if (kind == Kind::DRL) {
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      // At equal degree the smaller exponent in the last differing variable wins.
      for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return b[i] <=> a[i];
      }
      return std::strong_ordering::equal;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
  }
  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Elem coef = 0;
  bool operator==(const Term&) const = default;
};

/// Terms strictly descending in the ring's order, no zero coefficients.
/// The zero polynomial has no terms.
struct Polynomial {
  std::vector<Term> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  const Monomial& lm() const { return terms.front().mono; }
  Elem lc() const { return terms.front().coef; }
  std::uint32_t degree() const noexcept;
  bool operator==(const Polynomial&) const = default;
};

/// Coefficient field, variable count, term order and variable names: all the
/// context needed to keep polynomials canonical.
class PolyRing {
 public:
  PolyRing(PrimeField field, std::size_t nvars, TermOrder::Kind kind = TermOrder::Kind::DRL,
           std::vector<std::string> names = {});

  const PrimeField& field() const noexcept { return field_; }
  const TermOrder& order() const noexcept { return order_; }
  std::size_t nvars() const noexcept { return order_.n; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  PolyRing with_order(TermOrder::Kind kind) const;

  Polynomial zero() const { return {}; }
  Polynomial constant(Elem c) const;
  Polynomial variable(std::size_t i) const;
  Polynomial term(const Monomial& m, Elem c) const;

  /// Sorts, merges equal monomials and drops zeros.
  Polynomial normalize(std::vector<Term> terms) const;
  /// Re-sorts a polynomial built under another order.
  Polynomial reorder(const Polynomial& f) const { return normalize(f.terms); }

  Polynomial add(const Polynomial& f, const Polynomial& g) const;
  Polynomial sub(const Polynomial& f, const Polynomial& g) const;
  Polynomial neg(const Polynomial& f) const;
  Polynomial scale(const Polynomial& f, Elem c) const;
  Polynomial mul_term(const Polynomial& f, const Monomial& m, Elem c) const;
  Polynomial mul(const Polynomial& f, const Polynomial& g) const;
  Polynomial pow(const Polynomial& f, std::uint32_t e) const;
  /// f - c * m * g in one merge.
  Polynomial sub_mul_term(const Polynomial& f, const Polynomial& g, const Monomial& m, Elem c) const;
  Polynomial monic(const Polynomial& f) const;

  Elem evaluate(const Polynomial& f, std::span<const Elem> point) const;

  /// Terms in DRL-descending order, symmetric coefficients, `^` exponents.
  std::string format(const Polynomial& f) const;
  std::string format(const Monomial& m) const;

 private:
  PrimeField field_;
  TermOrder order_;
  std::vector<std::string> names_;
};

/// Full reduction of f by the set G under the ring's order: no term of the
/// result is divisible by a leading monomial of G.
Polynomial normal_form(const PolyRing& ring, const Polynomial& f, std::span<const Polynomial> g);

/// f(g * X): x_i is replaced by sum_j g(i, j) x_j and the result expanded.
/// Throws SingularMatrix if g is not invertible.
Polynomial apply_change_of_variables(const PolyRing& ring, const Polynomial& f, const Matrix& g);

}  // namespace posso
