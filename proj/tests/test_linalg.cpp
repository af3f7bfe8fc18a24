#include <doctest.h>

#include <vector>

#include "posso/error.hpp"
#include "posso/linalg.hpp"

using namespace posso;

namespace {

// Triple loop with a % per product: the oracle for every fast path.
Matrix naive_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = (s + std::uint64_t(a(i, k)) * b(k, j)) % f.modulus();
      c(i, j) = static_cast<Elem>(s);
    }
  }
  return c;
}

Matrix sparse_random(const PrimeField& f, std::size_t r, std::size_t c, Rng& rng, unsigned percent) {
  Matrix m(r, c);
  for (auto& e : m.data()) e = (rng() % 100 < percent) ? f.random_element(rng) : 0;
  return m;
}

}  // namespace

TEST_CASE("small products") {
  const PrimeField f(7);
  const Matrix a(2, 2, {0, 1, 1, 1});
  CHECK(mat_mul(f, a, a) == Matrix(2, 2, {1, 1, 1, 2}));
  const auto table = binary_power_table(f, Matrix(1, 1, {2}), 2);
  REQUIRE(table.size() == 3);
  CHECK(table[0] == Matrix(1, 1, {2}));
  CHECK(table[1] == Matrix(1, 1, {4}));
  CHECK(table[2] == Matrix(1, 1, {2}));
  CHECK_THROWS_AS(mat_mul(f, Matrix(2, 3), Matrix(2, 3)), Error);
}

TEST_CASE("classical, threaded and Strassen products equal the naive product") {
  Rng rng(1);
  for (std::uint32_t p : {7u, 65521u, 2147483647u}) {
    const PrimeField f(p);
    for (auto [m, k, n] : std::vector<std::array<std::size_t, 3>>{
             {1, 1, 1}, {3, 5, 2}, {17, 33, 9}, {64, 64, 64}, {130, 70, 1030}, {5, 600, 7}}) {
      const Matrix a = sparse_random(f, m, k, rng, 70), b = random_matrix(f, k, n, rng);
      const Matrix expect = naive_mul(f, a, b);
      CHECK(mat_mul(f, a, b) == expect);
      CHECK(mat_mul(f, a, b, MulOptions{0, 3}) == expect);
      CHECK(mat_mul(f, a, b, MulOptions{4, 1}) == expect);
      CHECK(mat_mul(f, a, b, MulOptions{16, 2}) == expect);
    }
  }
}

TEST_CASE("product counters") {
  const PrimeField f(101);
  Rng rng(2);
  LinalgCounters c;
  const Matrix a = random_matrix(f, 4, 4, rng), b = random_matrix(f, 4, 3, rng);
  mat_mul(f, a, a, {}, &c);
  mat_mul(f, a, b, {}, &c);
  CHECK(c.square_products == 1);
  CHECK(c.rect_products == 1);
  Matrix z(4, 4);
  LinalgCounters zc;
  mat_mul(f, z, a, {}, &zc);
  CHECK(zc.mul_adds == 0);
}

TEST_CASE("Krylov columns of the companion matrix of x^2 - 1") {
  const PrimeField f(7);
  const Matrix t(2, 2, {0, 1, 1, 0});
  const std::vector<Elem> r{1, 0};
  const Matrix k = krylov_columns(f, t, r);
  CHECK(k == Matrix(2, 4, {1, 0, 1, 0, 0, 1, 0, 1}));
}

TEST_CASE("Krylov columns equal repeated matrix-vector products and count log D products") {
  const PrimeField f(65521);
  Rng rng(3);
  for (std::size_t d = 1; d <= 32; ++d) {
    const Matrix t = random_matrix(f, d, d, rng);
    std::vector<Elem> r(d);
    for (auto& v : r) v = f.random_element(rng);
    LinalgCounters c;
    const Matrix k = krylov_columns(f, t, r, {}, &c);
    std::vector<Elem> v = r;
    for (std::size_t j = 0; j < 2 * d; ++j) {
      CHECK(k.column(j) == v);
      v = mat_vec(f, t, v);
    }
    std::size_t lg2d = 0, lgd = 0;
    while ((std::size_t{1} << lg2d) < 2 * d) ++lg2d;
    while ((std::size_t{1} << lgd) < d) ++lgd;
    CHECK(c.rect_products == lg2d);
    CHECK(c.square_products == lgd);
  }
}

TEST_CASE("row echelon form") {
  const PrimeField f(7);
  CHECK(reduced_row_echelon(f, Matrix(2, 2, {2, 4, 1, 2})) == Matrix(2, 2, {1, 2, 0, 0}));
  CHECK(rank(f, Matrix(2, 2, {2, 4, 1, 2})) == 1);
  CHECK(determinant(f, Matrix(2, 2, {0, 1, 1, 1})) == 6);
  CHECK(determinant(f, Matrix::identity(5)) == 1);
}

TEST_CASE("rref: pivots are unit columns and the row space is preserved") {
  const PrimeField f(101);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    const Matrix m = sparse_random(f, r, c, rng, 40);
    const EchelonForm e = rref(f, m);
    for (std::size_t i = 0; i < e.rank(); ++i) {
      const std::size_t pc = e.pivot_columns[i];
      for (std::size_t j = 0; j < pc; ++j) CHECK(e.matrix(i, j) == 0);
      for (std::size_t k = 0; k < r; ++k) CHECK(e.matrix(k, pc) == (k == i ? 1u : 0u));
    }
    for (std::size_t i = e.rank(); i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) CHECK(e.matrix(i, j) == 0);
    }
    // Same row space: stacking either onto the other does not raise the rank.
    Matrix both(2 * r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        both(i, j) = m(i, j);
        both(r + i, j) = e.matrix(i, j);
      }
    }
    CHECK(rank(f, both) == e.rank());
  }
}

TEST_CASE("block echelon on a scalar case") {
  const PrimeField f(7);
  // [1 b c; 0 1 d] reduces to [1 0 c - b d; 0 1 d].
  const BlockEchelonInput in{Matrix(1, 1, {1}), Matrix(1, 1, {3}), Matrix(1, 1, {5}), Matrix(1, 1, {4})};
  CHECK(block_echelon(f, in) == Matrix(1, 1, {f.sub(5, f.mul(3, 4))}));
}

TEST_CASE("block echelon equals the top-right block of a full rref") {
  Rng rng(5);
  int cases = 0;
  for (std::uint32_t p : {101u, 65521u}) {
    const PrimeField f(p);
    for (int t = 0; t < 60; ++t) {
      const std::size_t s = 1 + rng() % 9, big_s = rng() % 7, d = 1 + rng() % 9;
      BlockEchelonInput in{Matrix::identity(s), sparse_random(f, s, big_s, rng, 50), random_matrix(f, s, d, rng),
                           random_matrix(f, big_s, d, rng)};
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) in.t(i, j) = rng() % 2 ? f.random_element(rng) : 0;
      }
      const Matrix full = reduced_row_echelon(f, assemble(in));
      Matrix expect(s, d);
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < d; ++j) expect(i, j) = full(i, s + big_s + j);
      }
      CHECK(block_echelon(f, in) == expect);
      CHECK(block_echelon(f, in, MulOptions{2, 2}) == expect);
      ++cases;
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("block echelon rejects a T that is not unit upper triangular") {
  const PrimeField f(7);
  BlockEchelonInput in{Matrix(2, 2, {1, 0, 1, 1}), Matrix(2, 0), Matrix(2, 1), Matrix(0, 1)};
  try {
    block_echelon(f, in);
    FAIL("accepted a lower-triangular entry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitTriangular);
  }
  in.t = Matrix(2, 2, {2, 0, 0, 1});
  CHECK_THROWS_AS(block_echelon(f, in), Error);
}

TEST_CASE("random nonsingular matrices are invertible") {
  const PrimeField f(7);
  Rng rng(6);
  for (int t = 0; t < 50; ++t) CHECK(determinant(f, random_nonsingular_matrix(f, 4, rng)) != 0);
}

TEST_CASE("density") {
  CHECK(Matrix(2, 2, {1, 0, 0, 0}).density() == doctest::Approx(0.25));
  CHECK(Matrix().density() == 0);
}
