#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posso/field.hpp"

namespace posso {

/// Dense row-major matrix of canonical F_p residues.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::vector<Elem> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Elem> values);

  const std::vector<Elem>& data() const noexcept { return data_; }
  std::vector<Elem>& data() noexcept { return data_; }

  /// Fraction of nonzero entries, 0 for an empty matrix.
  double density() const noexcept;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct MulOptions {
  /// 0 disables Strassen; otherwise recursion continues while every side
  /// of the product exceeds the threshold.
  std::size_t strassen_threshold = 0;
  /// Row blocks of the classical product are spread over this many threads.
  unsigned threads = 1;
};

/// Instrumentation shared by the products below.
struct LinalgCounters {
  std::uint64_t square_products = 0;  // n x n times n x n
  std::uint64_t rect_products = 0;    // every other shape
  std::uint64_t mul_adds = 0;         // scalar multiply-adds actually executed
};

Matrix transpose(const Matrix& a);

/// Exact product over F_p. Zero entries of `a` are skipped, so sparse left
/// operands cost proportionally less. Throws DimensionMismatch.
Matrix mat_mul(const PrimeField& field, const Matrix& a, const Matrix& b,
               const MulOptions& options = {}, LinalgCounters* counters = nullptr);

std::vector<Elem> mat_vec(const PrimeField& field, const Matrix& a, std::span<const Elem> x);

Matrix add(const PrimeField& field, Matrix a, const Matrix& b);
Matrix sub(const PrimeField& field, Matrix a, const Matrix& b);

/// [T, T^2, T^4, ..., T^(2^k)] by k squarings.
std::vector<Matrix> binary_power_table(const PrimeField& field, const Matrix& t, std::size_t k,
                                       const MulOptions& options = {},
                                       LinalgCounters* counters = nullptr);

/// D x 2D matrix whose column j is T^j r. Built by doubling: the block of
/// the first 2^i columns is multiplied by T^(2^i), giving ceil(log2(2D))
/// block products (counted as rectangular even when the block happens to be
/// square) and ceil(log2(D)) squarings in total.
Matrix krylov_columns(const PrimeField& field, const Matrix& t, std::span<const Elem> r,
                      const MulOptions& options = {}, LinalgCounters* counters = nullptr);

struct EchelonForm {
  Matrix matrix;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry scanning
/// down the column.
EchelonForm rref(const PrimeField& field, Matrix m);
Matrix reduced_row_echelon(const PrimeField& field, Matrix m);

std::size_t rank(const PrimeField& field, Matrix m);
Elem determinant(const PrimeField& field, Matrix m);

/// The four dense blocks of the per-degree matrix
///
///   [ T  Bm  C  ]
///   [ 0  Id  Dm ]
///
/// where T is s x s unit upper triangular, Bm is s x S, C is s x D and Dm is
/// S x D.
struct BlockEchelonInput {
  Matrix t;
  Matrix bm;
  Matrix c;
  Matrix dm;
};

/// Assembles the full matrix above; used to cross-check block_echelon.
Matrix assemble(const BlockEchelonInput& input);

/// Returns T^-1 (C - Bm Dm), the top-right block of the reduced row echelon
/// form of the assembled matrix: one product followed by back-substitution
/// through T. Throws NotUnitTriangular or DimensionMismatch.
Matrix block_echelon(const PrimeField& field, const BlockEchelonInput& input,
                     const MulOptions& options = {}, LinalgCounters* counters = nullptr);

Matrix random_matrix(const PrimeField& field, std::size_t rows, std::size_t cols, Rng& rng);

/// Rejection-samples uniform matrices until one is invertible.
Matrix random_nonsingular_matrix(const PrimeField& field, std::size_t n, Rng& rng);

}  // namespace posso
