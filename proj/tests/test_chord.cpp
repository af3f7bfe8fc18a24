#include <doctest.h>

#include <vector>

#include "posso/chord.hpp"
#include "posso/error.hpp"
#include "posso/gb.hpp"
#include "posso/quotient.hpp"

using namespace posso;

namespace {

struct Prepared {
  GroebnerBasis g;
  QuotientStructure q;
  Matrix tn;
};

Prepared prepare(const PolyRing& r, const std::vector<Polynomial>& f) {
  GroebnerBasis g = groebner(r, f);
  QuotientStructure q = compute_basis(g);
  auto t = build_matrices_fglm(q, g);
  return {std::move(g), std::move(q), std::move(t.back())};
}

}  // namespace

TEST_CASE("worked example") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const std::vector<Polynomial> f{r.sub(x, r.mul(y, y)), r.sub(r.pow(y, 3), r.constant(2))};
  const Prepared p = prepare(r, f);
  Rng rng(1);
  std::optional<UnivariateRep> rep;
  ChordStats st;
  for (int t = 0; t < 8 && !rep; ++t) rep = change_ordering(p.tn, p.g, p.q, rng, {}, &st);
  REQUIRE(rep.has_value());
  CHECK(rep->h[0] == make_upoly({0, 0, 1}));
  CHECK(rep->h[1] == make_upoly({5, 0, 0, 1}));
  CHECK(*rep == lex_oracle(r, f));
  CHECK(st.extraction_ops == 0);
  CHECK(st.mu_degree == 3);
  CHECK(format(r, *rep) == "x = y^2 ; y^3 = 2");
}

TEST_CASE("one variable") {
  const PolyRing r(PrimeField(7), 1, TermOrder::Kind::DRL, {"x"});
  const std::vector<Polynomial> f{r.add(r.mul(r.variable(0), r.variable(0)), r.constant(1))};
  const Prepared p = prepare(r, f);
  Rng rng(2);
  std::optional<UnivariateRep> rep;
  ChordStats st;
  for (int t = 0; t < 8 && !rep; ++t) rep = change_ordering(p.tn, p.g, p.q, rng, {}, &st);
  REQUIRE(rep.has_value());
  CHECK(rep->h[0] == make_upoly({1, 0, 1}));
  CHECK(st.hankel_solves == 0);
}

TEST_CASE("linear leading terms are eliminated through the linear forms") {
  // x + 2y + 3z + 1 makes x a leading term; the rest is generic.
  const PolyRing r(PrimeField(65521), 3);
  const auto x = r.variable(0), y = r.variable(1), z = r.variable(2);
  const std::vector<Polynomial> f{
      r.add(r.add(x, r.scale(y, 2)), r.add(r.scale(z, 3), r.constant(1))),
      r.sub(r.mul(y, y), r.add(r.scale(z, 5), r.constant(7))),
      r.sub(r.mul(z, z), r.add(r.mul(y, z), r.constant(11)))};
  const Prepared p = prepare(r, f);
  const LinearSplit split = linear_split(p.g);
  CHECK(split.leading == std::vector<std::size_t>{0});
  CHECK(split.standard == std::vector<std::size_t>{1});
  Rng rng(3);
  const auto rep = change_ordering(p.tn, p.g, p.q, rng);
  REQUIRE(rep.has_value());
  CHECK(*rep == lex_oracle(r, f));
}

TEST_CASE("ideals outside Shape Position never produce a representation") {
  const PolyRing r(PrimeField(101), 2);
  const auto x = r.variable(0), y = r.variable(1);
  // Two points share each y-coordinate.
  const std::vector<Polynomial> f{r.sub(r.mul(x, x), r.constant(1)), r.sub(r.mul(y, y), r.constant(4))};
  const Prepared p = prepare(r, f);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) CHECK_FALSE(change_ordering(p.tn, p.g, p.q, rng).has_value());
}

TEST_CASE("annihilation and degree on random Shape-Position instances") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const PolyRing r(PrimeField(65521), 2 + t % 2);
    std::vector<Polynomial> f;
    const std::size_t n = r.nvars();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> terms{{Monomial::variable(i, 2), 1}};
      for (std::size_t j = 0; j < n; ++j) terms.push_back({Monomial::variable(j), r.field().random_element(rng)});
      terms.push_back({Monomial{}, r.field().random_element(rng)});
      f.push_back(r.normalize(terms));
    }
    const Prepared p = prepare(r, f);
    auto rep = change_ordering(p.tn, p.g, p.q, rng);
    if (!rep) rep = change_ordering(p.tn, p.g, p.q, rng);
    REQUIRE(rep.has_value());
    CHECK(rep->eliminant().degree() == static_cast<long>(p.q.size()));
    const Matrix zero(p.q.size(), p.q.size());
    CHECK(evaluate(r.field(), rep->eliminant(), p.tn) == zero);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(rep->h[i].degree() < static_cast<long>(p.q.size()));
    CHECK(*rep == lex_oracle(r, f));
  }
}

TEST_CASE("verification of representations") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  // Roots y = 1, 2, 4 of y^3 - 1 give three points with x = y^2.
  const std::vector<Polynomial> f{r.sub(x, r.mul(y, y)), r.sub(r.pow(y, 3), r.constant(1))};
  UnivariateRep good{{make_upoly({0, 0, 1}), make_upoly({6, 0, 0, 1})}};
  const VerifyReport ok = verify_rep_report(r, good, f);
  CHECK(ok.ok);
  CHECK(ok.certified == 3);
  CHECK(ok.exhaustive);
  UnivariateRep bad = good;
  bad.h[0] = make_upoly({1, 0, 1});
  CHECK_FALSE(verify_rep(r, bad, f));
  // y^3 - 2 has no roots in F_7: nothing to certify.
  const std::vector<Polynomial> f2{r.sub(x, r.mul(y, y)), r.sub(r.pow(y, 3), r.constant(2))};
  UnivariateRep none{{make_upoly({0, 0, 1}), make_upoly({5, 0, 0, 1})}};
  const VerifyReport vac = verify_rep_report(r, none, f2);
  CHECK(vac.ok);
  CHECK(vac.certified == 0);
  CHECK(roots_by_scan(r.field(), make_upoly({6, 0, 0, 1})) == std::vector<Elem>{1, 2, 4});
}
