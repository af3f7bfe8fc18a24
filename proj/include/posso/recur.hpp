#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "posso/field.hpp"
#include "posso/linalg.hpp"
#include "posso/upoly.hpp"

namespace posso {

/// Minimal polynomial of a linearly recurrent sequence.
///
/// The result mu is monic with coefficients stored low to high and
/// satisfies sum_k mu.c[k] * s[j + k] = 0 for every j with j + deg(mu) <
/// s.size(). This is the reversal of the connection polynomial maintained
/// by the classical iteration, so deg(mu) = D on a length-2D Krylov
/// sequence means mu is the minimal polynomial of the operator.
/// The zero sequence yields mu = 1.
UPoly berlekamp_massey(const PrimeField& field, std::span<const Elem> s);

/// Square Hankel matrix with entry (i, j) = seq[i + j]. Only the defining
/// sequence is stored.
class Hankel {
 public:
  /// Uses seq[0 .. 2 dim - 2]; throws DimensionMismatch if seq is shorter.
  Hankel(std::vector<Elem> seq, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Elem operator()(std::size_t i, std::size_t j) const noexcept { return seq_[i + j]; }
  std::span<const Elem> sequence() const noexcept { return seq_; }

  Matrix dense() const;
  std::vector<Elem> apply(const PrimeField& field, std::span<const Elem> c) const;

 private:
  std::vector<Elem> seq_;
  std::size_t dim_ = 0;
};

enum class HankelMethod {
  Dense,     // Gaussian elimination on the materialized matrix
  Levinson,  // O(dim^2) recursion, falls back to Dense on a singular leading minor
};

/// Solves H c = b for each right-hand side. Throws SingularHankel.
std::vector<std::vector<Elem>> hankel_solve(const PrimeField& field, const Hankel& h,
                                            const std::vector<std::vector<Elem>>& rhs,
                                            HankelMethod method = HankelMethod::Dense);
std::vector<Elem> hankel_solve(const PrimeField& field, const Hankel& h, std::span<const Elem> b,
                               HankelMethod method = HankelMethod::Dense);

std::size_t rank(const PrimeField& field, const Hankel& h);

}  // namespace posso
