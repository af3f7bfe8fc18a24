#include "posso/chord.hpp"

#include <algorithm>

#include "posso/error.hpp"

namespace posso {

LinearSplit linear_split(const GroebnerBasis& g) {
  const std::size_t n = g.ring.nvars();
  LinearSplit split;
  std::vector<const Polynomial*> by_var(n, nullptr);
  for (const auto& p : g.polys) {
    const Monomial& lm = p.lm();
    if (lm.degree() != 1) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (lm[i] == 1) by_var[i] = &p;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (by_var[i] == nullptr) {
      split.standard.push_back(i);
      continue;
    }
    split.leading.push_back(i);
    std::vector<Elem> alpha(n + 1, 0);
    const Polynomial& p = *by_var[i];
    for (std::size_t t = 1; t < p.terms.size(); ++t) {
      const Monomial& m = p.terms[t].mono;
      if (m.degree() == 0) {
        alpha[0] = p.terms[t].coef;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (m[j] == 1) alpha[j + 1] = p.terms[t].coef;
      }
    }
    split.alpha.push_back(std::move(alpha));
  }
  return split;
}

std::optional<UnivariateRep> change_ordering(const Matrix& tn, const GroebnerBasis& g, const QuotientStructure& q,
                                             Rng& rng, const ChordOptions& options, ChordStats* stats) {
  const PrimeField& field = g.ring.field();
  const std::size_t n = g.ring.nvars();
  const std::size_t d = q.size();
  if (d == 0) throw Error(ErrorCode::NotZeroDimensional, "change_ordering: empty quotient basis");
  if (tn.rows() != d || tn.cols() != d) throw Error(ErrorCode::DimensionMismatch, "change_ordering: T_n shape");

  std::vector<Elem> r(d);
  for (auto& v : r) v = field.random_element(rng);
  ChordStats local;
  const Matrix k = krylov_columns(field, transpose(tn), r, options.mul, &local.krylov);

  // The constant 1 is the first basis element, so each projection is a read.
  const auto first = k.row(0);
  const std::vector<Elem> s(first.begin(), first.end());
  const UPoly mu = berlekamp_massey(field, s);
  local.mu_degree = static_cast<std::size_t>(std::max<long>(mu.degree(), 0));
  if (stats != nullptr) *stats = local;
  if (mu.degree() != static_cast<long>(d)) return std::nullopt;

  UnivariateRep rep;
  rep.h.resize(n);
  rep.h[n - 1] = mu;
  const LinearSplit split = linear_split(g);

  const Hankel hankel(s, d);
  std::vector<std::vector<Elem>> rhs;
  for (std::size_t i : split.standard) {
    const auto pos = q.find(Monomial::variable(i));
    if (!pos) throw Error(ErrorCode::ClassificationFailure, "change_ordering: x_i missing from the basis");
    const auto row = k.row(*pos);
    rhs.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
  }
  const auto sols = hankel_solve(field, hankel, rhs, options.hankel);
  for (std::size_t t = 0; t < split.standard.size(); ++t) rep.h[split.standard[t]] = make_upoly(sols[t]);
  local.hankel_solves = sols.size();

  // x_i = -(sum_j alpha_ij x_j + alpha_i0) with x_j replaced by h_j(x_n),
  // x_n itself staying x_n.
  for (std::size_t t = 0; t < split.leading.size(); ++t) {
    const std::vector<Elem>& alpha = split.alpha[t];
    std::vector<Elem> acc(std::max<std::size_t>(d, 2), 0);
    acc[0] = field.neg(alpha[0]);
    acc[1] = field.neg(alpha[n]);
    for (std::size_t j : split.standard) {
      const Elem a = alpha[j + 1];
      if (a == 0) continue;
      const UPoly& hj = rep.h[j];
      for (std::size_t c = 0; c < hj.c.size(); ++c) acc[c] = field.sub(acc[c], field.mul(a, hj.c[c]));
    }
    rep.h[split.leading[t]] = make_upoly(std::move(acc));
  }
  if (stats != nullptr) *stats = local;
  return rep;
}

std::vector<Elem> roots_by_scan(const PrimeField& field, const UPoly& f) {
  std::vector<Elem> out;
  if (f.is_zero()) return out;
  for (std::uint32_t a = 0; a < field.modulus(); ++a) {
    if (evaluate(field, f, a) == 0) out.push_back(a);
  }
  return out;
}

namespace {

constexpr std::uint32_t kScanLimit = 1u << 20;

bool check_point(const PolyRing& ring, const UnivariateRep& rep, std::span<const Polynomial> f, Elem a) {
  const std::size_t n = rep.nvars();
  std::vector<Elem> point(n);
  for (std::size_t i = 0; i + 1 < n; ++i) point[i] = evaluate(ring.field(), rep.h[i], a);
  point[n - 1] = a;
  return std::all_of(f.begin(), f.end(), [&](const Polynomial& p) { return ring.evaluate(p, point) == 0; });
}

}  // namespace

VerifyReport verify_rep_report(const PolyRing& ring, const UnivariateRep& rep, std::span<const Polynomial> f,
                               std::size_t sample_budget, std::uint64_t seed) {
  const PrimeField& field = ring.field();
  VerifyReport out;
  if (rep.nvars() != ring.nvars()) {
    out.ok = false;
    return out;
  }
  const UPoly& hn = rep.eliminant();
  auto visit = [&](Elem a) {
    if (evaluate(field, hn, a) != 0) return;
    ++out.certified;
    if (!check_point(ring, rep, f, a)) out.ok = false;
  };
  if (field.modulus() <= kScanLimit) {
    out.exhaustive = true;
    for (std::uint32_t a = 0; a < field.modulus() && out.ok; ++a) visit(a);
    return out;
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < sample_budget && out.ok; ++s) visit(field.random_element(rng));
  return out;
}

bool verify_rep(const PolyRing& ring, const UnivariateRep& rep, std::span<const Polynomial> f,
                std::size_t sample_budget) {
  return verify_rep_report(ring, rep, f, sample_budget).ok;
}

}  // namespace posso
