#include <doctest.h>

#include <algorithm>
#include <vector>

#include "posso/bench.hpp"
#include "posso/error.hpp"
#include "posso/gb.hpp"
#include "posso/quotient.hpp"

using namespace posso;

namespace {

Monomial mono(std::initializer_list<std::uint32_t> e) {
  const std::vector<std::uint32_t> v(e);
  return Monomial::from_exponents(v);
}

GroebnerBasis monomial_basis(const PolyRing& r, std::initializer_list<Monomial> lts) {
  std::vector<Polynomial> p;
  for (const auto& m : lts) p.push_back(r.term(m, 1));
  std::sort(p.begin(), p.end(), [&](const Polynomial& a, const Polynomial& b) { return r.order().less(a.lm(), b.lm()); });
  return GroebnerBasis{r, p};
}

// Column j of T_i is the coordinate vector of NF(x_i e_j), via division.
Matrix reference_matrix(const QuotientStructure& q, const GroebnerBasis& g, std::size_t var) {
  const PolyRing& r = g.ring;
  const std::size_t d = q.size();
  Matrix t(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Polynomial nf = normal_form(r, r.term(q.basis[j] * Monomial::variable(var), 1), g.polys);
    for (const auto& term : nf.terms) t(q.index.at(term.mono), j) = term.coef;
  }
  return t;
}

Polynomial dense_random(const PolyRing& r, Rng& rng, std::uint32_t deg) {
  std::vector<Term> t;
  const std::size_t n = r.nvars();
  std::vector<std::uint32_t> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == n) {
      t.push_back({Monomial::from_exponents(e), r.field().random_element(rng)});
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, deg);
  return r.normalize(t);
}

}  // namespace

TEST_CASE("canonical bases") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto q1 = compute_basis(monomial_basis(r, {mono({2, 0}), mono({0, 2})}));
  CHECK(q1.basis == std::vector<Monomial>{mono({0, 0}), mono({0, 1}), mono({1, 0}), mono({1, 1})});
  const auto q2 = compute_basis(monomial_basis(r, {mono({2, 0}), mono({1, 1}), mono({0, 3})}));
  CHECK(q2.basis == std::vector<Monomial>{mono({0, 0}), mono({0, 1}), mono({1, 0}), mono({0, 2})});
  CHECK(q2.find(mono({0, 2})) == 3u);
  CHECK_FALSE(q2.find(mono({1, 1})).has_value());

  const PolyRing r7(PrimeField(65521), 7);
  std::vector<Polynomial> sq;
  for (std::size_t i = 0; i < 7; ++i) sq.push_back(r7.term(Monomial::variable(i, 2), 1));
  std::sort(sq.begin(), sq.end(), [&](const Polynomial& a, const Polynomial& b) { return r7.order().less(a.lm(), b.lm()); });
  const auto q7 = compute_basis(GroebnerBasis{r7, sq});
  CHECK(q7.size() == 128);
  // Closed under division and free of leading monomials.
  for (const auto& m : q7.basis) {
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(m[i] <= 1);
      if (m[i] > 0) CHECK(q7.find(m / Monomial::variable(i)).has_value());
    }
  }
  CHECK_THROWS_AS(compute_basis(monomial_basis(r, {mono({1, 1})})), Error);
}

TEST_CASE("frontier classification") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto g = monomial_basis(r, {mono({2, 0}), mono({1, 1}), mono({0, 3})});
  const auto q = compute_basis(g);
  const Frontier f = compute_frontier(q, g);
  std::vector<Monomial> members;
  for (const auto& m : f.members) members.push_back(m.mono);
  CHECK(members == std::vector<Monomial>{mono({1, 1}), mono({2, 0}), mono({0, 3}), mono({1, 2})});
  const FrontierMember& xy2 = f.members[f.index.at(mono({1, 2}))];
  CHECK(xy2.kind == FrontierMember::Kind::Multiple);
  CHECK(f.members[xy2.parent].mono * Monomial::variable(xy2.var) == mono({1, 2}));
  CHECK(f.members[xy2.parent].mono == mono({1, 1}));
  CHECK(f.count(FrontierMember::Kind::LeadingTerm) == 3);

  const auto g2 = monomial_basis(r, {mono({2, 0}), mono({0, 2})});
  const Frontier f2 = compute_frontier(compute_basis(g2), g2);
  CHECK(f2.size() == 4);
  for (const auto& m : f2.members) {
    if (m.mono.degree() == 3) {
      CHECK(m.kind == FrontierMember::Kind::Multiple);
      CHECK(f2.members[m.parent].kind == FrontierMember::Kind::LeadingTerm);
      CHECK(f2.members[m.parent].mono * Monomial::variable(m.var) == m.mono);
    } else {
      CHECK(m.kind == FrontierMember::Kind::LeadingTerm);
    }
  }
  // Witness parents precede their children, so increasing order works.
  for (std::size_t k = 0; k < f2.size(); ++k) {
    if (f2.members[k].kind == FrontierMember::Kind::Multiple) CHECK(f2.members[k].parent < k);
  }
}

TEST_CASE("multiplication matrices of the worked basis") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const GroebnerBasis g{r, {r.sub(r.mul(y, y), x), r.sub(r.mul(x, y), r.constant(2)), r.sub(r.mul(x, x), r.scale(y, 2))}};
  const auto q = compute_basis(g);
  const Matrix ty(3, 3, {0, 0, 2, 1, 0, 0, 0, 1, 0});
  const auto fglm = build_matrices_fglm(q, g);
  const auto ech = build_matrices_echelon(q, g);
  CHECK(fglm[1] == ty);
  CHECK(ech == fglm);
  const ReadResult read = try_read_Tn(q, g);
  REQUIRE(read.readable());
  CHECK(*read.tn == ty);
  CHECK(read.field_ops == 0);
  CHECK(read.type_two == 0);
}

TEST_CASE("x^2 = 1 in the quotient by x^2 - 1, y^2 - 1") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const GroebnerBasis g{r, {r.sub(r.mul(y, y), r.constant(1)), r.sub(r.mul(x, x), r.constant(1))}};
  const auto q = compute_basis(g);
  const auto t = build_matrices_echelon(q, g);
  CHECK(mat_mul(r.field(), t[0], t[0]) == Matrix::identity(4));
  CHECK(mat_mul(r.field(), t[1], t[1]) == Matrix::identity(4));
  CHECK(t == build_matrices_fglm(q, g));
}

TEST_CASE("T_n is not always readable") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto g = monomial_basis(r, {mono({2, 0}), mono({0, 3})});
  const auto q = compute_basis(g);
  CHECK(q.size() == 6);
  const ReadResult read = try_read_Tn(q, g);
  CHECK_FALSE(read.readable());
  REQUIRE(read.offending.has_value());
  CHECK(*read.offending == mono({1, 3}));
}

TEST_CASE("builders agree with division on random systems") {
  Rng rng(12);
  int cases = 0;
  for (std::uint32_t p : {101u, 65521u}) {
    for (std::size_t n : {2u, 3u}) {
      const PolyRing r(PrimeField(p), n);
      for (int t = 0; t < 6; ++t) {
        std::vector<Polynomial> f;
        for (std::size_t i = 0; i < n; ++i) f.push_back(dense_random(r, rng, 2 + rng() % 2));
        const GroebnerBasis g = groebner(r, f);
        if (!is_zero_dimensional(g)) continue;
        const auto q = compute_basis(g);
        BuildStats sf, se;
        const auto fglm = build_matrices_fglm(q, g, &sf);
        const auto ech = build_matrices_echelon(q, g, MulOptions{2, 1}, &se);
        CHECK(fglm == ech);
        CHECK(sf.type_two == se.type_two);
        CHECK(sf.type_two_tn == se.type_two_tn);
        for (std::size_t i = 0; i < n; ++i) CHECK(fglm[i] == reference_matrix(q, g, i));
        const Frontier fr = compute_frontier(q, g);
        CHECK(fr.size() <= n * q.size());
        const ReadResult read = try_read_Tn(q, g);
        if (read.readable()) CHECK(*read.tn == fglm[n - 1]);
        ++cases;
      }
    }
  }
  CHECK(cases == 24);
}

TEST_CASE("type-II count for T_n on the benchmark family") {
  for (std::size_t n : {3u, 5u, 7u}) {
    const PolyRing r = appendix_ring(n);
    const auto f = appendix_family(r, 1);
    const GroebnerBasis g = groebner(r, f);
    const auto q = compute_basis(g);
    CHECK(q.size() == (std::size_t{1} << n));
    BuildStats st;
    build_matrices_fglm(q, g, &st);
    CHECK(st.type_two_tn == (std::size_t{1} << (n - 1)) - 1);
    CHECK_FALSE(try_read_Tn(q, g).readable());
  }
}
