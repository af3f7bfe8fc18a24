#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posso/chord.hpp"
#include "posso/gb.hpp"
#include "posso/linalg.hpp"
#include "posso/poly.hpp"
#include "posso/upoly.hpp"

namespace posso {

enum class Pipeline { Deterministic, LasVegas };

const char* to_string(Pipeline p) noexcept;

struct StageTimes {
  double gb = 0;      // seconds
  double matrix = 0;  // building T_n
  double chord = 0;   // Krylov, Berlekamp-Massey and Hankel solves
  double total = 0;
};

struct SolveStats {
  std::size_t n = 0;
  std::size_t degree = 0;         // D
  std::uint64_t nf_count = 0;     // type-II normal forms behind T_n
  double density = 0;             // nonzero fraction of T_n
  std::uint64_t field_ops = 0;    // multiply-adds spent building T_n
  std::uint64_t r_failures = 0;   // change_ordering calls that returned no rep
  std::uint64_t restarts = 0;     // change-of-variables draws beyond the first
  std::uint64_t unreadable = 0;   // draws whose T_n could not be read off the basis
  StageTimes times;
  ChordStats chord;
};

struct SolveReport {
  Pipeline pipeline = Pipeline::Deterministic;
  std::optional<Matrix> g;  // Las Vegas only: the rep describes f(g X)
  UnivariateRep rep;
  SolveStats stats;
};

struct SolveOptions {
  std::size_t r_retries = 4;
  std::size_t max_restarts = 8;
  /// Las Vegas: use g = I for the first draw.
  bool force_identity_first = false;
  ChordOptions chord;
};

/// GB, echelon-built T_n, then change_ordering with up to r_retries vectors.
/// Throws NotZeroDimensional or NotShapePosition.
SolveReport solve_deterministic(const PolyRing& ring, std::span<const Polynomial> f, Rng& rng,
                                const SolveOptions& options = {});

/// Random g in GL(n), GB of f(g X), T_n read off the basis. Throws
/// NotZeroDimensional or ExhaustedRestarts.
SolveReport solve_lasvegas(const PolyRing& ring, std::span<const Polynomial> f, Rng& rng,
                           const SolveOptions& options = {});

/// Points of the input system: for each root a of h_n, v = (h_1(a), ...,
/// h_{n-1}(a), a), mapped to g v on the Las Vegas path. Returns nullopt when
/// p is too large to scan for roots. Sorted lexicographically.
std::optional<std::vector<std::vector<Elem>>> rational_solutions(const PrimeField& field,
                                                                  const SolveReport& report);

/// Every point of F_p^n zeroing all of f, in lexicographic order. Throws
/// BudgetExceeded when p^n exceeds the limit.
std::vector<std::vector<Elem>> enumerate_rational_solutions(const PolyRing& ring, std::span<const Polynomial> f,
                                                            std::uint64_t p_limit = 50'000'000);

using Rational = boost::multiprecision::cpp_rational;

struct ProbabilityBound {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> degrees;
  std::uint64_t degree = 0;   // D
  Rational bound;             // clamped to [0, 1]
  bool vacuous = false;       // the unclamped value was not positive
  /// q > sum(d_i - 1) + 1, enough for the characteristic condition on the
  /// x_n-degrees of the staircase.
  bool characteristic_ok = false;

  double value() const { return bound.convert_to<double>(); }
};

/// 1 - (D(D-1)/2 + (sum(d_i - 1) + 1) (C(sum d_i + 1, n) - D)) / q, with D
/// defaulting to the product of the degrees.
ProbabilityBound probability_bound(std::size_t n, std::uint64_t q, std::span<const std::uint64_t> degrees,
                                   std::optional<std::uint64_t> degree = std::nullopt);

}  // namespace posso
