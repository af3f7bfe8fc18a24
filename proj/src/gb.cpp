#include "posso/gb.hpp"

#include <algorithm>

#include "posso/quotient.hpp"

namespace posso {

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

// Gebauer-Moeller update after adding g[h].
void update_pairs(const std::vector<Polynomial>& g, std::vector<bool>& active, std::vector<Pair>& pairs,
                  std::size_t h) {
  const Monomial& lh = g[h].lm();
  std::vector<Pair> cand;
  for (std::size_t k = 0; k < h; ++k) {
    if (active[k]) cand.push_back({k, h, g[k].lm().lcm(lh)});
  }

  std::vector<Pair> kept;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    const Pair& pc = cand[c];
    bool keep = g[pc.i].lm().coprime(lh);
    if (!keep) {
      keep = true;
      for (std::size_t o = c + 1; o < cand.size() && keep; ++o) {
        if (cand[o].lcm.divides(pc.lcm)) keep = false;
      }
      for (std::size_t o = 0; o < kept.size() && keep; ++o) {
        if (kept[o].lcm.divides(pc.lcm)) keep = false;
      }
    }
    if (keep) kept.push_back(pc);
  }

  std::vector<Pair> next;
  for (const Pair& p : pairs) {
    const bool chain = lh.divides(p.lcm) && g[p.i].lm().lcm(lh) != p.lcm && g[p.j].lm().lcm(lh) != p.lcm;
    if (!chain) next.push_back(p);
  }
  for (const Pair& p : kept) {
    if (!g[p.i].lm().coprime(lh)) next.push_back(p);
  }
  pairs = std::move(next);

  for (std::size_t k = 0; k < h; ++k) {
    if (active[k] && lh.divides(g[k].lm())) active[k] = false;
  }
  active.push_back(true);
}

GroebnerBasis classic(const PolyRing& ring, std::span<const Polynomial> f, GbStats* stats) {
  const TermOrder& ord = ring.order();
  std::vector<Polynomial> g;
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto add = [&](Polynomial h) {
    g.push_back(ring.monic(h));
    update_pairs(g, active, pairs, g.size() - 1);
  };
  auto active_set = [&] {
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (active[k]) out.push_back(g[k]);
    }
    return out;
  };

  for (const auto& p : f) {
    if (!p.is_zero()) add(ring.reorder(p));
  }
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(),
                                 [&](const Pair& a, const Pair& b) { return ord.less(a.lcm, b.lcm); });
    const Pair p = *best;
    pairs.erase(best);
    const Polynomial& a = g[p.i];
    const Polynomial& b = g[p.j];
    Polynomial s = ring.sub_mul_term(ring.mul_term(a, p.lcm / a.lm(), 1), b, p.lcm / b.lm(), 1);
    const auto basis = active_set();
    Polynomial h = normal_form(ring, s, basis);
    if (stats != nullptr) {
      ++stats->pairs_reduced;
      if (h.is_zero()) ++stats->zero_reductions;
    }
    if (!h.is_zero()) add(std::move(h));
  }
  return reduce_basis(ring, active_set());
}

}  // namespace

GroebnerBasis buchberger_batched(const PolyRing& ring, std::span<const Polynomial> f, GbStats* stats);

std::vector<Monomial> GroebnerBasis::leading_terms() const {
  std::vector<Monomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.lm());
  return out;
}

GroebnerBasis buchberger(const PolyRing& ring, std::span<const Polynomial> f, GbEngine engine,
                         GbStats* stats) {
  if (engine == GbEngine::Batched) return buchberger_batched(ring, f, stats);
  return classic(ring, f, stats);
}

GroebnerBasis groebner(const PolyRing& ring, std::span<const Polynomial> f, GbStats* stats) {
  return buchberger(ring, f, ring.order().kind == TermOrder::Kind::DRL ? GbEngine::Batched : GbEngine::Classic,
                    stats);
}

GroebnerBasis reduce_basis(const PolyRing& ring, std::vector<Polynomial> g) {
  const TermOrder& ord = ring.order();
  std::erase_if(g, [](const Polynomial& p) { return p.is_zero(); });
  for (auto& p : g) p = ring.monic(ring.reorder(p));
  std::sort(g.begin(), g.end(), [&](const Polynomial& a, const Polynomial& b) { return ord.less(a.lm(), b.lm()); });

  std::vector<Polynomial> minimal;
  for (const auto& p : g) {
    bool redundant = false;
    for (const auto& q : minimal) {
      if (q.lm().divides(p.lm())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(p);
  }

  // Increasing leading monomials: every element only needs reducers that
  // precede it, and those are already reduced.
  std::vector<Polynomial> reduced;
  for (const auto& p : minimal) {
    Polynomial tail;
    tail.terms.assign(p.terms.begin() + 1, p.terms.end());
    Polynomial r = normal_form(ring, tail, reduced);
    r.terms.insert(r.terms.begin(), p.lead());
    reduced.push_back(std::move(r));
  }
  // A later element can still divide terms of an earlier one.
  for (std::size_t k = 0; k < reduced.size(); ++k) {
    std::vector<Polynomial> others;
    for (std::size_t o = 0; o < reduced.size(); ++o) {
      if (o != k) others.push_back(reduced[o]);
    }
    Polynomial tail;
    tail.terms.assign(reduced[k].terms.begin() + 1, reduced[k].terms.end());
    Polynomial r = normal_form(ring, tail, others);
    r.terms.insert(r.terms.begin(), reduced[k].lead());
    reduced[k] = std::move(r);
  }
  return GroebnerBasis{ring, std::move(reduced)};
}

bool is_reduced(const GroebnerBasis& g) {
  const TermOrder& ord = g.ring.order();
  for (std::size_t k = 0; k < g.polys.size(); ++k) {
    const Polynomial& p = g.polys[k];
    if (p.is_zero() || p.lc() != 1) return false;
    for (std::size_t t = 1; t < p.terms.size(); ++t) {
      if (!ord.greater(p.terms[t - 1].mono, p.terms[t].mono) || p.terms[t].coef == 0) return false;
    }
    if (k > 0 && !ord.less(g.polys[k - 1].lm(), p.lm())) return false;
    for (std::size_t o = 0; o < g.polys.size(); ++o) {
      if (o == k) continue;
      for (const auto& t : p.terms) {
        if (g.polys[o].lm().divides(t.mono)) return false;
      }
    }
  }
  return true;
}

bool is_zero_dimensional(const GroebnerBasis& g) {
  const std::size_t n = g.ring.nvars();
  std::vector<bool> pure(n, false);
  for (const auto& p : g.polys) {
    const Monomial& m = p.lm();
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == m.degree() && m[i] > 0) pure[i] = true;
    }
  }
  return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
}

std::size_t degree(const GroebnerBasis& g) { return compute_basis(g).size(); }

UnivariateRep shape_from_lex(const GroebnerBasis& lex) {
  const std::size_t n = lex.ring.nvars();
  const auto fail = [](const char* why) { throw Error(ErrorCode::NotShapePosition, why); };
  if (lex.polys.size() != n) fail("LEX basis does not have n elements");
  UnivariateRep rep;
  rep.h.resize(n);
  // Increasing LEX order puts h_n first, then x_{n-1} - h_{n-1}, ..., x_1 - h_1.
  const Polynomial& hn = lex.polys.front();
  try {
    rep.h[n - 1] = to_upoly(hn, n - 1);
  } catch (const Error&) {
    fail("smallest LEX element is not univariate in the last variable");
  }
  for (std::size_t k = 1; k < n; ++k) {
    const Polynomial& p = lex.polys[k];
    const std::size_t var = n - 1 - k;
    if (p.lm() != Monomial::variable(var)) fail("LEX element is not of the form x_i - h_i(x_n)");
    Polynomial tail;
    tail.terms.assign(p.terms.begin() + 1, p.terms.end());
    try {
      rep.h[var] = to_upoly(lex.ring.neg(tail), n - 1);
    } catch (const Error&) {
      fail("LEX element tail involves variables other than x_n");
    }
  }
  return rep;
}

UnivariateRep lex_oracle(const PolyRing& ring, std::span<const Polynomial> f) {
  const PolyRing lex = ring.with_order(TermOrder::Kind::LEX);
  std::vector<Polynomial> input;
  for (const auto& p : f) input.push_back(lex.reorder(p));
  const GroebnerBasis g = buchberger(lex, input, GbEngine::Classic);
  if (!is_zero_dimensional(g)) throw Error(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  return shape_from_lex(g);
}

}  // namespace posso
