#include "posso/recur.hpp"

#include <algorithm>
#include <optional>

#include "posso/error.hpp"

namespace posso {

UPoly berlekamp_massey(const PrimeField& field, std::span<const Elem> s) {
  // Connection polynomial conn with s[i] + sum_{k>=1} conn[k] s[i-k] = 0.
  std::vector<Elem> conn{1};
  std::vector<Elem> prev{1};
  std::size_t len = 0;
  std::size_t shift = 1;
  Elem prev_disc = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Elem disc = s[i];
    for (std::size_t k = 1; k <= len && k < conn.size(); ++k) {
      disc = field.add(disc, field.mul(conn[k], s[i - k]));
    }
    if (disc == 0) {
      ++shift;
      continue;
    }
    const Elem factor = field.div(disc, prev_disc);
    std::vector<Elem> saved = conn;
    if (conn.size() < prev.size() + shift) conn.resize(prev.size() + shift, 0);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      conn[k + shift] = field.sub(conn[k + shift], field.mul(factor, prev[k]));
    }
    if (2 * len <= i) {
      len = i + 1 - len;
      prev = std::move(saved);
      prev_disc = disc;
      shift = 1;
    } else {
      ++shift;
    }
  }
  conn.resize(len + 1, 0);
  UPoly mu;
  mu.c.assign(conn.rbegin(), conn.rend());
  return mu;
}

Hankel::Hankel(std::vector<Elem> seq, std::size_t dim) : seq_(std::move(seq)), dim_(dim) {
  if (dim_ > 0 && seq_.size() < 2 * dim_ - 1) {
    throw Error(ErrorCode::DimensionMismatch, "Hankel: sequence shorter than 2 dim - 1");
  }
  if (dim_ > 0) seq_.resize(2 * dim_ - 1);
}

Matrix Hankel::dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::copy_n(seq_.begin() + static_cast<std::ptrdiff_t>(i), dim_, m.row(i).begin());
  }
  return m;
}

std::vector<Elem> Hankel::apply(const PrimeField& field, std::span<const Elem> c) const {
  if (c.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "Hankel::apply: length mismatch");
  std::vector<Elem> out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < dim_; ++j) acc = (acc + static_cast<std::uint64_t>(seq_[i + j]) * c[j]) % field.modulus();
    out[i] = static_cast<Elem>(acc);
  }
  return out;
}

namespace {

std::vector<std::vector<Elem>> solve_dense(const PrimeField& field, const Hankel& h,
                                           const std::vector<std::vector<Elem>>& rhs) {
  const std::size_t d = h.dim();
  Matrix aug(d, d + rhs.size());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug(i, j) = h(i, j);
    for (std::size_t r = 0; r < rhs.size(); ++r) aug(i, d + r) = rhs[r][i];
  }
  const EchelonForm e = rref(field, aug);
  if (e.rank() < d || (d > 0 && e.pivot_columns[d - 1] != d - 1)) {
    throw Error(ErrorCode::SingularHankel, "hankel_solve: Hankel matrix is singular");
  }
  std::vector<std::vector<Elem>> out(rhs.size(), std::vector<Elem>(d));
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    for (std::size_t i = 0; i < d; ++i) out[r][i] = e.matrix(i, d + r);
  }
  return out;
}

// Levinson recursion for the Toeplitz matrix T = H J (J the exchange
// matrix), with T(i, j) = t[d - 1 + i - j] and t = the Hankel sequence.
// Returns nullopt when a leading principal minor of T vanishes.
std::optional<std::vector<Elem>> solve_levinson(const PrimeField& field, const Hankel& h,
                                                std::span<const Elem> b) {
  const std::size_t d = h.dim();
  const auto t = h.sequence();
  // r(k) for k in [-(d-1), d-1] is T's diagonal value t[d - 1 + k].
  auto r = [&](std::ptrdiff_t k) { return t[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(d) - 1 + k)]; };
  std::vector<Elem> y(d, 0), g(d, 0), hh(d, 0);
  const Elem r0 = r(0);
  if (r0 == 0) return std::nullopt;
  const Elem r0inv = field.inv(r0);
  y[0] = field.mul(b[0], r0inv);
  if (d == 1) return std::vector<Elem>{y[0]};
  g[0] = field.mul(r(-1), r0inv);
  hh[0] = field.mul(r(1), r0inv);
  for (std::size_t m = 1;; ++m) {
    // Extend the solution from size m to m + 1.
    Elem sxn = field.neg(b[m]);
    Elem sd = field.neg(r0);
    for (std::size_t j = 0; j < m; ++j) {
      const Elem rj = r(static_cast<std::ptrdiff_t>(m - j));
      sxn = field.add(sxn, field.mul(rj, y[j]));
      sd = field.add(sd, field.mul(rj, g[m - 1 - j]));
    }
    if (sd == 0) return std::nullopt;
    y[m] = field.div(sxn, sd);
    for (std::size_t j = 0; j < m; ++j) y[j] = field.sub(y[j], field.mul(y[m], g[m - 1 - j]));
    if (m + 1 == d) return y;

    Elem sgn = field.neg(r(-static_cast<std::ptrdiff_t>(m + 1)));
    Elem shn = field.neg(r(static_cast<std::ptrdiff_t>(m + 1)));
    Elem sgd = field.neg(r0);
    for (std::size_t j = 0; j < m; ++j) {
      sgn = field.add(sgn, field.mul(r(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(m)), g[j]));
      shn = field.add(shn, field.mul(r(static_cast<std::ptrdiff_t>(m - j)), hh[j]));
      sgd = field.add(sgd, field.mul(r(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(m)), hh[m - 1 - j]));
    }
    if (sgd == 0) return std::nullopt;
    g[m] = field.div(sgn, sgd);
    hh[m] = field.div(shn, sd);
    const Elem pp = g[m], qq = hh[m];
    for (std::size_t j = 0, k = m - 1; j < (m + 1) / 2; ++j, --k) {
      const Elem pt1 = g[j], pt2 = g[k], qt1 = hh[j], qt2 = hh[k];
      g[j] = field.sub(pt1, field.mul(pp, qt2));
      g[k] = field.sub(pt2, field.mul(pp, qt1));
      hh[j] = field.sub(qt1, field.mul(qq, pt2));
      hh[k] = field.sub(qt2, field.mul(qq, pt1));
    }
  }
}

}  // namespace

std::vector<std::vector<Elem>> hankel_solve(const PrimeField& field, const Hankel& h,
                                            const std::vector<std::vector<Elem>>& rhs,
                                            HankelMethod method) {
  const std::size_t d = h.dim();
  for (const auto& b : rhs) {
    if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "hankel_solve: right-hand side length");
  }
  if (d == 0) return std::vector<std::vector<Elem>>(rhs.size());
  if (method == HankelMethod::Levinson) {
    std::vector<std::vector<Elem>> out;
    for (const auto& b : rhs) {
      auto y = solve_levinson(field, h, b);
      if (!y) return solve_dense(field, h, rhs);
      out.emplace_back(y->rbegin(), y->rend());
    }
    return out;
  }
  return solve_dense(field, h, rhs);
}

std::vector<Elem> hankel_solve(const PrimeField& field, const Hankel& h, std::span<const Elem> b,
                               HankelMethod method) {
  const std::vector<std::vector<Elem>> rhs{std::vector<Elem>(b.begin(), b.end())};
  return hankel_solve(field, h, rhs, method).front();
}

std::size_t rank(const PrimeField& field, const Hankel& h) { return rank(field, h.dense()); }

}  // namespace posso
