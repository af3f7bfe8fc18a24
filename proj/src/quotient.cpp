#include "posso/quotient.hpp"

#include <algorithm>
#include <unordered_set>

#include "posso/kernels.hpp"

namespace posso {

namespace {

using MonoSet = std::unordered_set<Monomial, MonomialHash>;
using MonoIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;

MonoIndex leading_index(const GroebnerBasis& g) {
  MonoIndex out;
  for (std::size_t k = 0; k < g.polys.size(); ++k) out.emplace(g.polys[k].lm(), k);
  return out;
}

// Writes -tail(g) into `row` (coordinates over the standard monomials).
void negated_tail(const QuotientStructure& q, const PrimeField& field, const Polynomial& p,
                  std::span<Elem> row) {
  for (std::size_t t = 1; t < p.terms.size(); ++t) {
    auto pos = q.find(p.terms[t].mono);
    if (!pos) throw Error(ErrorCode::ClassificationFailure, "basis element is not reduced");
    row[*pos] = field.neg(p.terms[t].coef);
  }
}

}  // namespace

QuotientStructure compute_basis(const GroebnerBasis& g) {
  if (!is_zero_dimensional(g)) throw Error(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  const std::size_t n = g.ring.nvars();
  const TermOrder drl{TermOrder::Kind::DRL, n};
  MonoSet leading;
  for (const auto& p : g.polys) leading.insert(p.lm());

  QuotientStructure q;
  q.nvars = n;
  MonoSet members;
  std::vector<Monomial> layer;
  if (!leading.contains(Monomial{})) layer.push_back(Monomial{});
  // A monomial is standard iff it is not a minimal generator of the initial
  // ideal and each of its divisors by one variable is standard.
  while (!layer.empty()) {
    for (const auto& m : layer) {
      members.insert(m);
      q.basis.push_back(m);
    }
    std::vector<Monomial> next;
    MonoSet seen;
    for (const auto& m : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        const Monomial c = m * Monomial::variable(i);
        if (seen.contains(c) || leading.contains(c)) continue;
        seen.insert(c);
        bool standard = true;
        for (std::size_t j = 0; j < n && standard; ++j) {
          if (c[j] > 0 && !members.contains(c / Monomial::variable(j))) standard = false;
        }
        if (standard) next.push_back(c);
      }
    }
    layer = std::move(next);
  }
  std::sort(q.basis.begin(), q.basis.end(), [&](const Monomial& a, const Monomial& b) { return drl.less(a, b); });
  for (std::size_t k = 0; k < q.basis.size(); ++k) q.index.emplace(q.basis[k], k);
  return q;
}

std::size_t Frontier::count(FrontierMember::Kind kind) const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [&](const FrontierMember& m) { return m.kind == kind; }));
}

Frontier compute_frontier(const QuotientStructure& q, const GroebnerBasis& g) {
  const std::size_t n = q.nvars;
  const TermOrder drl{TermOrder::Kind::DRL, n};
  const MonoIndex leading = leading_index(g);
  Frontier f;
  MonoSet seen;
  for (const auto& e : q.basis) {
    for (std::size_t i = 0; i < n; ++i) {
      const Monomial m = e * Monomial::variable(i);
      if (q.index.contains(m) || !seen.insert(m).second) continue;
      f.members.push_back({m});
    }
  }
  std::sort(f.members.begin(), f.members.end(),
            [&](const FrontierMember& a, const FrontierMember& b) { return drl.less(a.mono, b.mono); });
  for (std::size_t k = 0; k < f.members.size(); ++k) f.index.emplace(f.members[k].mono, k);

  for (auto& member : f.members) {
    if (auto it = leading.find(member.mono); it != leading.end()) {
      member.kind = FrontierMember::Kind::LeadingTerm;
      member.poly = it->second;
      continue;
    }
    bool found = false;
    for (std::size_t j = n; j-- > 0 && !found;) {
      if (member.mono[j] == 0) continue;
      auto it = f.index.find(member.mono / Monomial::variable(j));
      if (it == f.index.end()) continue;
      member.kind = FrontierMember::Kind::Multiple;
      member.var = j;
      member.parent = it->second;
      found = true;
    }
    if (!found) {
      throw Error(ErrorCode::ClassificationFailure, "frontier monomial is neither type I nor type II");
    }
  }
  return f;
}

std::vector<std::vector<std::int64_t>> multiplication_index(const QuotientStructure& q, const Frontier& f) {
  std::vector<std::vector<std::int64_t>> out(q.nvars, std::vector<std::int64_t>(q.size()));
  for (std::size_t k = 0; k < q.nvars; ++k) {
    for (std::size_t l = 0; l < q.size(); ++l) {
      const Monomial m = q.basis[l] * Monomial::variable(k);
      if (auto pos = q.find(m)) {
        out[k][l] = static_cast<std::int64_t>(*pos);
      } else {
        out[k][l] = -static_cast<std::int64_t>(f.index.at(m)) - 1;
      }
    }
  }
  return out;
}

namespace {

std::uint64_t count_type_two_tn(const QuotientStructure& q, const Frontier& f) {
  if (q.nvars == 0) return 0;
  std::uint64_t c = 0;
  MonoSet seen;
  for (const auto& e : q.basis) {
    const Monomial m = e * Monomial::variable(q.nvars - 1);
    auto it = f.index.find(m);
    if (it == f.index.end() || !seen.insert(m).second) continue;
    if (f.members[it->second].kind == FrontierMember::Kind::Multiple) ++c;
  }
  return c;
}

}  // namespace

NormalFormTable frontier_normal_forms_fglm(const QuotientStructure& q, const Frontier& f, const GroebnerBasis& g,
                                           BuildStats* stats) {
  const PrimeField& field = g.ring.field();
  const std::size_t d = q.size();
  const auto mul = multiplication_index(q, f);
  const kernels::Modulus mod(field.modulus());
  const auto& k = kernels::active_kernels();
  NormalFormTable nf{Matrix(f.size(), d)};
  std::vector<std::uint64_t> acc(d);
  std::uint64_t ops = 0;
  std::uint64_t type_two = 0;

  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const FrontierMember& m = f.members[idx];
    auto row = nf.rows.row(idx);
    if (m.kind == FrontierMember::Kind::LeadingTerm) {
      negated_tail(q, field, g.polys[m.poly], row);
      continue;
    }
    // NF(x_k t') = sum_l alpha_l NF(x_k e_l) where NF(t') = sum_l alpha_l e_l.
    ++type_two;
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t pending = 0;
    const auto parent = nf.rows.row(m.parent);
    for (std::size_t l = 0; l < d; ++l) {
      const Elem a = parent[l];
      if (a == 0) continue;
      if (pending == mod.max_delayed) {
        for (auto& v : acc) v = mod.reduce(v);
        pending = 0;
      }
      const std::int64_t loc = mul[m.var][l];
      if (loc >= 0) {
        acc[static_cast<std::size_t>(loc)] += a;
        ++pending;
        continue;
      }
      k.mul_acc(acc.data(), nf.rows.row(static_cast<std::size_t>(-loc - 1)).data(), a, d);
      ++pending;
      ops += d;
    }
    k.reduce(acc.data(), row.data(), d, mod);
  }
  if (stats != nullptr) {
    stats->frontier_size = f.size();
    stats->type_two = type_two;
    stats->type_two_tn = count_type_two_tn(q, f);
    stats->field_ops += ops;
  }
  return nf;
}

NormalFormTable frontier_normal_forms_echelon(const QuotientStructure& q, const Frontier& f,
                                              const GroebnerBasis& g, const MulOptions& options,
                                              BuildStats* stats) {
  const PrimeField& field = g.ring.field();
  const std::size_t d = q.size();
  const auto mul = multiplication_index(q, f);
  NormalFormTable nf{Matrix(f.size(), d)};
  LinalgCounters counters;
  std::uint64_t type_two = 0;
  std::uint64_t steps = 0;
  std::vector<std::int64_t> bm_col(f.size(), -1);

  std::size_t lo = 0;
  while (lo < f.size()) {
    const std::uint32_t deg = f.members[lo].mono.degree();
    std::size_t hi = lo;
    while (hi < f.size() && f.members[hi].mono.degree() == deg) ++hi;
    const std::size_t s = hi - lo;
    ++steps;
    // Row r and T-column r both stand for member hi-1-r (descending order).
    auto local = [&](std::size_t member) { return hi - 1 - member; };

    std::vector<std::size_t> lower;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const FrontierMember& m = f.members[idx];
      if (m.kind != FrontierMember::Kind::Multiple) continue;
      const auto parent = nf.rows.row(m.parent);
      for (std::size_t l = 0; l < d; ++l) {
        if (parent[l] == 0) continue;
        const std::int64_t loc = mul[m.var][l];
        if (loc >= 0) continue;
        const auto other = static_cast<std::size_t>(-loc - 1);
        if (other < lo && bm_col[other] < 0) {
          bm_col[other] = 0;
          lower.push_back(other);
        }
      }
    }
    std::sort(lower.begin(), lower.end(), std::greater<>());
    for (std::size_t c = 0; c < lower.size(); ++c) bm_col[lower[c]] = static_cast<std::int64_t>(c);

    BlockEchelonInput in{Matrix::identity(s), Matrix(s, lower.size()), Matrix(s, d), Matrix(lower.size(), d)};
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const FrontierMember& m = f.members[idx];
      const std::size_t r = local(idx);
      if (m.kind == FrontierMember::Kind::LeadingTerm) {
        // phi(g) = m + tail(g); the tail lives in B.
        const Polynomial& p = g.polys[m.poly];
        for (std::size_t t = 1; t < p.terms.size(); ++t) in.c(r, q.index.at(p.terms[t].mono)) = p.terms[t].coef;
        continue;
      }
      // phi(m - x_k NF(t')).
      ++type_two;
      const auto parent = nf.rows.row(m.parent);
      for (std::size_t l = 0; l < d; ++l) {
        const Elem a = parent[l];
        if (a == 0) continue;
        const std::int64_t loc = mul[m.var][l];
        if (loc >= 0) {
          in.c(r, static_cast<std::size_t>(loc)) = field.neg(a);
          continue;
        }
        const auto other = static_cast<std::size_t>(-loc - 1);
        if (other >= lo) {
          in.t(r, local(other)) = field.neg(a);
        } else {
          in.bm(r, static_cast<std::size_t>(bm_col[other])) = field.neg(a);
        }
      }
    }
    for (std::size_t c = 0; c < lower.size(); ++c) {
      auto src = nf.rows.row(lower[c]);
      auto dst = in.dm.row(c);
      for (std::size_t j = 0; j < d; ++j) dst[j] = field.neg(src[j]);
      bm_col[lower[c]] = -1;
    }

    const Matrix x = block_echelon(field, in, options, &counters);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      auto src = x.row(local(idx));
      auto dst = nf.rows.row(idx);
      for (std::size_t j = 0; j < d; ++j) dst[j] = field.neg(src[j]);
    }
    lo = hi;
  }
  if (stats != nullptr) {
    stats->frontier_size = f.size();
    stats->type_two = type_two;
    stats->type_two_tn = count_type_two_tn(q, f);
    stats->field_ops += counters.mul_adds;
    stats->degrees = steps;
  }
  return nf;
}

Matrix assemble_mul_matrix(const QuotientStructure& q, const Frontier& f, const NormalFormTable& nf,
                           std::size_t var) {
  const std::size_t d = q.size();
  Matrix t(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Monomial m = q.basis[j] * Monomial::variable(var);
    if (auto pos = q.find(m)) {
      t(*pos, j) = 1;
      continue;
    }
    const auto src = nf.rows.row(f.index.at(m));
    for (std::size_t i = 0; i < d; ++i) t(i, j) = src[i];
  }
  return t;
}

namespace {

std::vector<Matrix> assemble_all(const QuotientStructure& q, const Frontier& f, const NormalFormTable& nf) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < q.nvars; ++i) out.push_back(assemble_mul_matrix(q, f, nf, i));
  return out;
}

}  // namespace

std::vector<Matrix> build_matrices_fglm(const QuotientStructure& q, const GroebnerBasis& g, BuildStats* stats) {
  const Frontier f = compute_frontier(q, g);
  return assemble_all(q, f, frontier_normal_forms_fglm(q, f, g, stats));
}

std::vector<Matrix> build_matrices_echelon(const QuotientStructure& q, const GroebnerBasis& g,
                                           const MulOptions& options, BuildStats* stats) {
  const Frontier f = compute_frontier(q, g);
  return assemble_all(q, f, frontier_normal_forms_echelon(q, f, g, options, stats));
}

ReadResult try_read_Tn(const QuotientStructure& q, const GroebnerBasis& g) {
  ReadResult out;
  const std::size_t n = q.nvars;
  const std::size_t d = q.size();
  if (n == 0) return out;
  const PrimeField& field = g.ring.field();
  const MonoIndex leading = leading_index(g);
  const Monomial xn = Monomial::variable(n - 1);

  Matrix t(d, d);
  std::vector<Elem> column(d);
  for (std::size_t j = 0; j < d; ++j) {
    const Monomial m = q.basis[j] * xn;
    if (auto pos = q.find(m)) {
      t(*pos, j) = 1;
      continue;
    }
    auto it = leading.find(m);
    if (it == leading.end()) {
      if (!out.offending) out.offending = m;
      ++out.type_two;
      continue;
    }
    std::fill(column.begin(), column.end(), 0);
    negated_tail(q, field, g.polys[it->second], column);
    t.set_column(j, column);
  }
  if (!out.offending) out.tn = std::move(t);
  return out;
}

}  // namespace posso
