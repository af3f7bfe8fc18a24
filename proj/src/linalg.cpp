#include "posso/linalg.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "posso/kernels.hpp"

namespace posso {

namespace {

constexpr std::size_t kPanelCols = 1024;  // NC
constexpr std::size_t kPanelDepth = 256;  // KC
constexpr std::size_t kRowBlock = 128;    // MC

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

// C[i0:i1, :] = A[i0:i1, :] * B, blocked so that a KC x NC panel of B stays
// hot while MC rows of A stream over it.
std::uint64_t gemm_rows(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i0, std::size_t i1,
                        const kernels::Modulus& mod) {
  const auto& k = kernels::active_kernels();
  const std::size_t inner = a.cols();
  const std::size_t n = b.cols();
  std::uint64_t work = 0;
  std::vector<std::uint64_t> acc(kRowBlock * kPanelCols);
  std::vector<std::uint64_t> pending(kRowBlock);

  std::vector<Elem> apack(4 * kPanelDepth);
  std::vector<const Elem*> bpack(kPanelDepth);
  std::uint64_t* acc_rows[4];
  // Stripe of B in column blocks of eight: entry (kk, j0 + c) sits at
  // stripe[(c / 8) * inner * 8 + kk * 8 + c % 8].
  std::vector<Elem> stripe;
  const std::size_t bs = inner * 8;

  for (std::size_t j0 = 0; j0 < n; j0 += kPanelCols) {
    const std::size_t w = std::min(kPanelCols, n - j0);
    const std::size_t blocks = (w + 7) / 8;
    stripe.assign(blocks * bs, 0);
    for (std::size_t kk = 0; kk < inner; ++kk) {
      const Elem* src = b.row(kk).data() + j0;
      for (std::size_t c = 0; c < w; ++c) stripe[(c / 8) * bs + kk * 8 + c % 8] = src[c];
    }
    for (std::size_t r0 = i0; r0 < i1; r0 += kRowBlock) {
      const std::size_t rows = std::min(kRowBlock, i1 - r0);
      std::fill(acc.begin(), acc.begin() + rows * w, 0);
      std::fill(pending.begin(), pending.end(), 0);
      for (std::size_t k0 = 0; k0 < inner; k0 += kPanelDepth) {
        const std::size_t k1 = std::min(inner, k0 + kPanelDepth);
        for (std::size_t g = 0; g < rows; g += 4) {
          const std::size_t height = std::min<std::size_t>(4, rows - g);
          if (height < 4) {
            // Leftover rows go through the vector kernel.
            for (std::size_t r = g; r < rows; ++r) {
              const Elem* arow = a.row(r0 + r).data();
              std::uint64_t* accrow = acc.data() + r * w;
              for (std::size_t kk = k0; kk < k1; ++kk) {
                const Elem coef = arow[kk];
                if (coef == 0) continue;
                if (pending[r] == mod.max_delayed) {
                  for (std::size_t t = 0; t < w; ++t) accrow[t] = mod.reduce(accrow[t]);
                  pending[r] = 0;
                }
                k.mul_acc(accrow, b.row(kk).data() + j0, coef, w);
                ++pending[r];
                work += w;
              }
            }
            break;
          }
          const Elem* arows[4];
          for (std::size_t r = 0; r < 4; ++r) {
            arows[r] = a.row(r0 + g + r).data();
            acc_rows[r] = acc.data() + (g + r) * w;
          }
          std::size_t depth = 0;
          for (std::size_t kk = k0; kk < k1; ++kk) {
            const Elem v0 = arows[0][kk], v1 = arows[1][kk], v2 = arows[2][kk], v3 = arows[3][kk];
            if ((v0 | v1 | v2 | v3) == 0) continue;
            work += w * ((v0 != 0) + (v1 != 0) + (v2 != 0) + (v3 != 0));
            Elem* slot = apack.data() + 4 * depth;
            slot[0] = v0;
            slot[1] = v1;
            slot[2] = v2;
            slot[3] = v3;
            bpack[depth++] = stripe.data() + kk * 8;
          }
          for (std::size_t d0 = 0; d0 < depth;) {
            if (pending[g] == mod.max_delayed) {
              for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t t = 0; t < w; ++t) acc_rows[r][t] = mod.reduce(acc_rows[r][t]);
              }
              pending[g] = 0;
            }
            const std::size_t step = std::min<std::uint64_t>(depth - d0, mod.max_delayed - pending[g]);
            k.mul_acc4(acc_rows[0], w, apack.data() + 4 * d0, bpack.data() + d0, bs, step, w);
            pending[g] += step;
            d0 += step;
          }
        }
      }
      for (std::size_t r = 0; r < rows; ++r) {
        k.reduce(acc.data() + r * w, c.row(r0 + r).data() + j0, w, mod);
      }
    }
  }
  return work;
}

Matrix classical(const PrimeField& field, const Matrix& a, const Matrix& b, unsigned threads,
                 std::uint64_t& work) {
  Matrix c(a.rows(), b.cols());
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return c;
  const kernels::Modulus mod(field.modulus());
  const std::size_t blocks = (a.rows() + kRowBlock - 1) / kRowBlock;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), blocks);
  if (workers <= 1) {
    work += gemm_rows(a, b, c, 0, a.rows(), mod);
    return c;
  }
  // Each worker owns a contiguous range of row blocks, so the result does
  // not depend on scheduling.
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  const std::size_t per = (blocks + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(a.rows(), w * per * kRowBlock);
    const std::size_t hi = std::min(a.rows(), (w + 1) * per * kRowBlock);
    if (lo >= hi) continue;
    pool.emplace_back([&, lo, hi, w] { partial[w] = gemm_rows(a, b, c, lo, hi, mod); });
  }
  for (auto& t : pool) t.join();
  for (auto v : partial) work += v;
  return c;
}

Matrix block_of(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows && r0 + r < m.rows(); ++r) {
    const std::size_t avail = c0 < m.cols() ? std::min(cols, m.cols() - c0) : 0;
    std::copy_n(m.row(r0 + r).data() + c0, avail, out.row(r).data());
  }
  return out;
}

void place(Matrix& dst, const Matrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t r = 0; r < src.rows() && r0 + r < dst.rows(); ++r) {
    const std::size_t avail = std::min(src.cols(), dst.cols() - c0);
    std::copy_n(src.row(r).data(), avail, dst.row(r0 + r).data() + c0);
  }
}

Matrix strassen(const PrimeField& field, const Matrix& a, const Matrix& b, const MulOptions& opt,
                std::uint64_t& work) {
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (m <= opt.strassen_threshold || k <= opt.strassen_threshold || n <= opt.strassen_threshold) {
    return classical(field, a, b, opt.threads, work);
  }
  const std::size_t hm = (m + 1) / 2, hk = (k + 1) / 2, hn = (n + 1) / 2;
  const Matrix a11 = block_of(a, 0, 0, hm, hk), a12 = block_of(a, 0, hk, hm, hk);
  const Matrix a21 = block_of(a, hm, 0, hm, hk), a22 = block_of(a, hm, hk, hm, hk);
  const Matrix b11 = block_of(b, 0, 0, hk, hn), b12 = block_of(b, 0, hn, hk, hn);
  const Matrix b21 = block_of(b, hk, 0, hk, hn), b22 = block_of(b, hk, hn, hk, hn);

  auto rec = [&](const Matrix& x, const Matrix& y) { return strassen(field, x, y, opt, work); };
  const Matrix m1 = rec(add(field, a11, a22), add(field, b11, b22));
  const Matrix m2 = rec(add(field, a21, a22), b11);
  const Matrix m3 = rec(a11, sub(field, b12, b22));
  const Matrix m4 = rec(a22, sub(field, b21, b11));
  const Matrix m5 = rec(add(field, a11, a12), b22);
  const Matrix m6 = rec(sub(field, a21, a11), add(field, b11, b12));
  const Matrix m7 = rec(sub(field, a12, a22), add(field, b21, b22));

  Matrix c(m, n);
  place(c, add(field, sub(field, add(field, m1, m4), m5), m7), 0, 0);
  place(c, add(field, m3, m5), 0, hn);
  place(c, add(field, m2, m4), hm, 0);
  place(c, add(field, add(field, sub(field, m1, m2), m3), m6), hm, hn);
  return c;
}

std::size_t ceil_log2(std::size_t v) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < v) ++r;
  return r;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows * cols, "matrix data length does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Elem> Matrix::column(std::size_t c) const {
  std::vector<Elem> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_column(std::size_t c, std::span<const Elem> values) {
  require(values.size() == rows_, "column length does not match row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

double Matrix::density() const noexcept {
  if (data_.empty()) return 0.0;
  const auto nz = std::count_if(data_.begin(), data_.end(), [](Elem e) { return e != 0; });
  return static_cast<double>(nz) / static_cast<double>(data_.size());
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  }
  return t;
}

Matrix mat_mul(const PrimeField& field, const Matrix& a, const Matrix& b, const MulOptions& options,
               LinalgCounters* counters) {
  require(a.cols() == b.rows(), "mat_mul: inner dimensions differ");
  std::uint64_t work = 0;
  Matrix c = options.strassen_threshold > 0 ? strassen(field, a, b, options, work)
                                            : classical(field, a, b, options.threads, work);
  if (counters != nullptr) {
    const bool square = a.is_square() && b.is_square();
    (square ? counters->square_products : counters->rect_products) += 1;
    counters->mul_adds += work;
  }
  return c;
}

std::vector<Elem> mat_vec(const PrimeField& field, const Matrix& a, std::span<const Elem> x) {
  require(a.cols() == x.size(), "mat_vec: length mismatch");
  const kernels::Modulus mod(field.modulus());
  std::vector<Elem> y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint64_t acc = 0;
    std::uint64_t pending = 0;
    const Elem* row = a.row(r).data();
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (pending == mod.max_delayed) {
        acc = mod.reduce(acc);
        pending = 0;
      }
      acc += static_cast<std::uint64_t>(row[c]) * x[c];
      ++pending;
    }
    y[r] = mod.reduce(acc);
  }
  return y;
}

Matrix add(const PrimeField& field, Matrix a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shape mismatch");
  const kernels::Modulus mod(field.modulus());
  kernels::active_kernels().add(a.data().data(), b.data().data(), a.data().size(), mod);
  return a;
}

Matrix sub(const PrimeField& field, Matrix a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "sub: shape mismatch");
  const kernels::Modulus mod(field.modulus());
  kernels::active_kernels().sub(a.data().data(), b.data().data(), a.data().size(), mod);
  return a;
}

std::vector<Matrix> binary_power_table(const PrimeField& field, const Matrix& t, std::size_t k,
                                       const MulOptions& options, LinalgCounters* counters) {
  require(t.is_square(), "binary_power_table: matrix is not square");
  std::vector<Matrix> table;
  table.reserve(k + 1);
  table.push_back(t);
  for (std::size_t i = 0; i < k; ++i) {
    table.push_back(mat_mul(field, table.back(), table.back(), options, counters));
  }
  return table;
}

Matrix krylov_columns(const PrimeField& field, const Matrix& t, std::span<const Elem> r,
                      const MulOptions& options, LinalgCounters* counters) {
  require(t.is_square(), "krylov_columns: matrix is not square");
  require(r.size() == t.rows(), "krylov_columns: vector length mismatch");
  const std::size_t d = t.rows();
  const std::size_t total = 2 * d;
  Matrix out(d, total);
  if (d == 0) return out;
  out.set_column(0, r);

  const std::size_t steps = ceil_log2(total);
  const auto powers = binary_power_table(field, t, steps == 0 ? 0 : steps - 1, options, counters);
  std::size_t known = 1;
  for (std::size_t i = 0; i < steps; ++i) {
    // Columns [known, known + take) are T^(2^i) times columns [0, take).
    const std::size_t take = std::min(known, total - known);
    Matrix block(d, take);
    for (std::size_t row = 0; row < d; ++row) {
      std::copy_n(out.row(row).data(), take, block.row(row).data());
    }
    LinalgCounters local;
    const Matrix next = mat_mul(field, powers[i], block, options, &local);
    if (counters != nullptr) {
      counters->rect_products += 1;
      counters->mul_adds += local.mul_adds;
    }
    for (std::size_t row = 0; row < d; ++row) {
      std::copy_n(next.row(row).data(), take, out.row(row).data() + known);
    }
    known += take;
  }
  return out;
}

EchelonForm rref(const PrimeField& field, Matrix m) {
  const kernels::Modulus mod(field.modulus());
  const auto& k = kernels::active_kernels();
  EchelonForm result;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(rank).begin());
    }
    const std::size_t width = m.cols() - col;
    Elem* prow = m.row(rank).data() + col;
    const Elem scale = field.inv(prow[0]);
    if (scale != 1) k.scale(prow, scale, width, mod);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      const Elem f = m(r, col);
      if (f == 0) continue;
      k.axpy(m.row(r).data() + col, prow, field.neg(f), width, mod);
    }
    result.pivot_columns.push_back(col);
    ++rank;
  }
  result.matrix = std::move(m);
  return result;
}

Matrix reduced_row_echelon(const PrimeField& field, Matrix m) {
  return rref(field, std::move(m)).matrix;
}

std::size_t rank(const PrimeField& field, Matrix m) { return rref(field, std::move(m)).rank(); }

Elem determinant(const PrimeField& field, Matrix m) {
  require(m.is_square(), "determinant: matrix is not square");
  const kernels::Modulus mod(field.modulus());
  const auto& k = kernels::active_kernels();
  const std::size_t n = m.rows();
  Elem det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(col).begin());
      det = field.neg(det);
    }
    const Elem p = m(col, col);
    det = field.mul(det, p);
    const Elem pinv = field.inv(p);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Elem f = m(r, col);
      if (f == 0) continue;
      k.axpy(m.row(r).data() + col, m.row(col).data() + col, field.neg(field.mul(f, pinv)), n - col,
             mod);
    }
  }
  return det;
}

Matrix assemble(const BlockEchelonInput& in) {
  const std::size_t s = in.t.rows(), big_s = in.dm.rows(), d = in.c.cols();
  Matrix m(s + big_s, s + big_s + d);
  place(m, in.t, 0, 0);
  place(m, in.bm, 0, s);
  place(m, in.c, 0, s + big_s);
  for (std::size_t i = 0; i < big_s; ++i) m(s + i, s + i) = 1;
  place(m, in.dm, s, s + big_s);
  return m;
}

Matrix block_echelon(const PrimeField& field, const BlockEchelonInput& in, const MulOptions& options,
                     LinalgCounters* counters) {
  const std::size_t s = in.t.rows();
  require(in.t.is_square(), "block_echelon: T is not square");
  require(in.c.rows() == s, "block_echelon: C row count differs from T");
  require(in.bm.rows() == s && in.bm.cols() == in.dm.rows(), "block_echelon: Bm shape mismatch");
  require(in.dm.cols() == in.c.cols(), "block_echelon: Dm and C widths differ");
  for (std::size_t i = 0; i < s; ++i) {
    if (in.t(i, i) != 1) throw Error(ErrorCode::NotUnitTriangular, "block_echelon: T diagonal is not 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (in.t(i, j) != 0) {
        throw Error(ErrorCode::NotUnitTriangular, "block_echelon: T has entries below the diagonal");
      }
    }
  }

  Matrix x = in.c;
  if (in.dm.rows() > 0 && s > 0) {
    x = sub(field, std::move(x), mat_mul(field, in.bm, in.dm, options, counters));
  }
  // Back-substitution, bottom row first: X_i = R_i - sum_{j>i} T_ij X_j.
  const kernels::Modulus mod(field.modulus());
  const auto& k = kernels::active_kernels();
  const std::size_t w = x.cols();
  std::vector<std::uint64_t> acc(w);
  for (std::size_t i = s; i-- > 0;) {
    bool touched = false;
    std::uint64_t pending = 1;
    for (std::size_t j = i + 1; j < s; ++j) {
      const Elem t = in.t(i, j);
      if (t == 0) continue;
      if (!touched) {
        const Elem* r = x.row(i).data();
        for (std::size_t c = 0; c < w; ++c) acc[c] = r[c];
        touched = true;
      }
      if (pending == mod.max_delayed) {
        for (auto& v : acc) v = mod.reduce(v);
        pending = 0;
      }
      k.mul_acc(acc.data(), x.row(j).data(), field.neg(t), w);
      ++pending;
      if (counters != nullptr) counters->mul_adds += w;
    }
    if (touched) k.reduce(acc.data(), x.row(i).data(), w, mod);
  }
  return x;
}

Matrix random_matrix(const PrimeField& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& e : m.data()) e = field.random_element(rng);
  return m;
}

Matrix random_nonsingular_matrix(const PrimeField& field, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(field, n, n, rng);
    if (determinant(field, m) != 0) return m;
  }
}

}  // namespace posso
