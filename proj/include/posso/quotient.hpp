#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "posso/gb.hpp"
#include "posso/linalg.hpp"
#include "posso/poly.hpp"

namespace posso {

/// Standard monomials 1 = e_1 < ... < e_D (DRL) and their positions.
struct QuotientStructure {
  std::size_t nvars = 0;
  std::vector<Monomial> basis;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;

  std::size_t size() const noexcept { return basis.size(); }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = index.find(m);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Throws NotZeroDimensional.
QuotientStructure compute_basis(const GroebnerBasis& g);

struct FrontierMember {
  enum class Kind { LeadingTerm, Multiple };
  Monomial mono;
  Kind kind = Kind::LeadingTerm;
  std::size_t poly = 0;    // LeadingTerm: index into the basis polynomials
  std::size_t var = 0;     // Multiple: mono = x_var * members[parent].mono
  std::size_t parent = 0;
};

/// {x_i e_j} \ B in increasing DRL order, each member typed.
struct Frontier {
  std::vector<FrontierMember> members;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;

  std::size_t size() const noexcept { return members.size(); }
  std::size_t count(FrontierMember::Kind kind) const;
};

/// Throws ClassificationFailure if a member is neither a leading term nor a
/// variable multiple of a smaller member.
Frontier compute_frontier(const QuotientStructure& q, const GroebnerBasis& g);

/// For each variable k and basis position l, where x_k e_l lives: a basis
/// position (>= 0) or -(f + 1) for frontier member f.
std::vector<std::vector<std::int64_t>> multiplication_index(const QuotientStructure& q,
                                                           const Frontier& f);

struct BuildStats {
  std::uint64_t frontier_size = 0;
  std::uint64_t type_two = 0;     // normal forms computed from a smaller one
  std::uint64_t type_two_tn = 0;  // members x_n e_j outside B and the leading terms
  std::uint64_t field_ops = 0;    // multiply-adds in F_p
  std::uint64_t degrees = 0;      // echelon builder: degree steps processed
};

/// Row f holds the coordinates of NF(members[f]) over the basis.
struct NormalFormTable {
  Matrix rows;
};

/// Frontier processed in increasing order, each type-II normal form a linear
/// combination of earlier ones.
NormalFormTable frontier_normal_forms_fglm(const QuotientStructure& q, const Frontier& f,
                                           const GroebnerBasis& g, BuildStats* stats = nullptr);

/// Degree by degree: one block echelon step per degree.
NormalFormTable frontier_normal_forms_echelon(const QuotientStructure& q, const Frontier& f,
                                              const GroebnerBasis& g, const MulOptions& options = {},
                                              BuildStats* stats = nullptr);

/// Column j is the coordinate vector of NF(x_var * e_j).
Matrix assemble_mul_matrix(const QuotientStructure& q, const Frontier& f, const NormalFormTable& nf,
                           std::size_t var);

/// All n multiplication matrices (index i is multiplication by x_{i+1}).
std::vector<Matrix> build_matrices_fglm(const QuotientStructure& q, const GroebnerBasis& g,
                                        BuildStats* stats = nullptr);
std::vector<Matrix> build_matrices_echelon(const QuotientStructure& q, const GroebnerBasis& g,
                                           const MulOptions& options = {}, BuildStats* stats = nullptr);

struct ReadResult {
  std::optional<Matrix> tn;
  std::optional<Monomial> offending;  // first x_n e_j outside B and the leading terms
  std::uint64_t type_two = 0;         // number of such monomials
  std::uint64_t field_ops = 0;        // additions and multiplications performed
  bool readable() const noexcept { return tn.has_value(); }
};

/// Reads T_n straight off the basis when every x_n e_j is standard or a
/// leading monomial; only copies and negations are performed.
ReadResult try_read_Tn(const QuotientStructure& q, const GroebnerBasis& g);

}  // namespace posso
