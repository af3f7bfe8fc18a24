#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "posso/gb.hpp"
#include "posso/linalg.hpp"
#include "posso/quotient.hpp"
#include "posso/recur.hpp"
#include "posso/upoly.hpp"

namespace posso {

/// Variables x_1..x_{n-1} split by whether they are leading terms of linear
/// basis elements x_i + sum_j alpha[i][j] x_j + alpha[i][0].
struct LinearSplit {
  std::vector<std::size_t> leading;     // NF(x_i) != x_i
  std::vector<std::size_t> standard;    // x_i is a basis monomial
  /// For each entry of `leading`: coefficient of x_j at index j + 1 and the
  /// constant at index 0 (length n + 1).
  std::vector<std::vector<Elem>> alpha;
};

LinearSplit linear_split(const GroebnerBasis& g);

struct ChordOptions {
  MulOptions mul;
  HankelMethod hankel = HankelMethod::Levinson;
};

struct ChordStats {
  LinalgCounters krylov;
  std::uint64_t extraction_ops = 0;  // field operations spent reading S and the b_i
  std::size_t mu_degree = 0;
  std::size_t hankel_solves = 0;
};

/// Univariate representation from T_n and the DRL basis. Returns nullopt
/// when the minimal polynomial of the projected sequence has degree below D,
/// which happens for an unlucky r or an ideal outside Shape Position.
std::optional<UnivariateRep> change_ordering(const Matrix& tn, const GroebnerBasis& g, const QuotientStructure& q,
                                             Rng& rng, const ChordOptions& options = {},
                                             ChordStats* stats = nullptr);

struct VerifyReport {
  bool ok = true;
  std::size_t certified = 0;  // roots of h_n checked against the input
  bool exhaustive = false;    // every element of F_p was scanned
};

/// Scans F_p for roots a of h_n (all of F_p when p <= 2^20, otherwise
/// sample_budget random points) and checks that (h_1(a), ..., h_{n-1}(a), a)
/// zeroes every polynomial of f.
VerifyReport verify_rep_report(const PolyRing& ring, const UnivariateRep& rep, std::span<const Polynomial> f,
                               std::size_t sample_budget = 1u << 16, std::uint64_t seed = 1);
bool verify_rep(const PolyRing& ring, const UnivariateRep& rep, std::span<const Polynomial> f,
                std::size_t sample_budget = 1u << 16);

/// Elements a of F_p with f(a) = 0, by exhaustive evaluation.
std::vector<Elem> roots_by_scan(const PrimeField& field, const UPoly& f);

}  // namespace posso
