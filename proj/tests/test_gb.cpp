#include <doctest.h>

#include <functional>
#include <vector>

#include "posso/error.hpp"
#include "posso/gb.hpp"
#include "posso/quotient.hpp"

using namespace posso;

namespace {

Polynomial dense_random(const PolyRing& r, Rng& rng, std::uint32_t deg) {
  std::vector<Term> t;
  const std::size_t n = r.nvars();
  std::vector<std::uint32_t> e(n, 0);
  // All exponent vectors of total degree <= deg.
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i == n) {
      t.push_back({Monomial::from_exponents(e), r.field().random_element(rng)});
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, deg);
  return r.normalize(t);
}

Polynomial spoly(const PolyRing& r, const Polynomial& a, const Polynomial& b) {
  const Monomial l = a.lm().lcm(b.lm());
  const Elem ca = r.field().inv(a.lc()), cb = r.field().inv(b.lc());
  return r.sub(r.mul_term(a, l / a.lm(), ca), r.mul_term(b, l / b.lm(), cb));
}

// Buchberger's criterion: every S-polynomial reduces to zero.
bool is_groebner(const GroebnerBasis& g) {
  for (std::size_t i = 0; i < g.polys.size(); ++i) {
    for (std::size_t j = i + 1; j < g.polys.size(); ++j) {
      if (!normal_form(g.ring, spoly(g.ring, g.polys[i], g.polys[j]), g.polys).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("a single linear polynomial is its own basis") {
  const PolyRing r(PrimeField(7), 1, TermOrder::Kind::DRL, {"x"});
  const std::vector<Polynomial> f{r.sub(r.variable(0), r.constant(1))};
  CHECK(buchberger(r, f).polys == f);
  CHECK(buchberger(r, f, GbEngine::Batched).polys == f);
}

TEST_CASE("worked example in DRL and LEX") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const std::vector<Polynomial> f{r.sub(x, r.mul(y, y)), r.sub(r.pow(y, 3), r.constant(2))};
  const std::vector<Polynomial> expect{r.sub(r.mul(y, y), x), r.sub(r.mul(x, y), r.constant(2)),
                                       r.sub(r.mul(x, x), r.scale(y, 2))};
  for (auto engine : {GbEngine::Classic, GbEngine::Batched}) {
    const GroebnerBasis g = buchberger(r, f, engine);
    CHECK(g.polys == expect);
    CHECK(is_reduced(g));
    CHECK(is_zero_dimensional(g));
    CHECK(degree(g) == 3);
  }
  const PolyRing lex = r.with_order(TermOrder::Kind::LEX);
  std::vector<Polynomial> lf;
  for (const auto& p : f) lf.push_back(lex.reorder(p));
  const GroebnerBasis gl = buchberger(lex, lf);
  REQUIRE(gl.polys.size() == 2);
  CHECK(gl.polys[0] == lex.reorder(r.sub(r.pow(y, 3), r.constant(2))));
  CHECK(gl.polys[1] == lex.reorder(r.sub(x, r.mul(y, y))));
}

TEST_CASE("LEX oracle") {
  const PolyRing r1(PrimeField(7), 1, TermOrder::Kind::DRL, {"x"});
  const std::vector<Polynomial> f1{r1.sub(r1.mul(r1.variable(0), r1.variable(0)), r1.constant(1))};
  const UnivariateRep rep1 = lex_oracle(r1, f1);
  REQUIRE(rep1.h.size() == 1);
  CHECK(rep1.h[0] == make_upoly({6, 0, 1}));

  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const std::vector<Polynomial> f{r.sub(x, y), r.sub(r.mul(y, y), y)};
  const UnivariateRep rep = lex_oracle(r, f);
  CHECK(rep.h[0] == make_upoly({0, 1}));     // x = y
  CHECK(rep.h[1] == make_upoly({0, 6, 1}));  // y^2 - y
  const std::vector<Polynomial> bad{r.sub(r.mul(x, x), y), r.sub(r.mul(y, y), r.constant(1))};
  try {
    lex_oracle(r, bad);
    FAIL("expected NotShapePosition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotShapePosition);
  }
}

TEST_CASE("zero-dimensionality") {
  const PolyRing r(PrimeField(7), 2, TermOrder::Kind::DRL, {"x", "y"});
  const auto x = r.variable(0), y = r.variable(1);
  const GroebnerBasis g{r, {r.mul(x, y)}};
  CHECK_FALSE(is_zero_dimensional(g));
  CHECK_THROWS_AS(degree(g), Error);
  const GroebnerBasis sq{r, {r.mul(y, y), r.mul(x, x)}};
  CHECK(degree(sq) == 4);
  const GroebnerBasis stair{r, {r.pow(y, 3), r.mul(x, y), r.mul(x, x)}};
  CHECK(degree(stair) == 4);
}

TEST_CASE("both engines return the same reduced Groebner basis on random systems") {
  Rng rng(8);
  int n_cases = 0;
  for (std::uint32_t p : {101u, 65521u}) {
    for (std::size_t n : {2u, 3u}) {
      const PolyRing r(PrimeField(p), n);
      for (int t = 0; t < 10; ++t) {
        std::vector<Polynomial> f;
        for (std::size_t i = 0; i < n; ++i) f.push_back(dense_random(r, rng, 2 + rng() % 2));
        GbStats st;
        const GroebnerBasis a = buchberger(r, f, GbEngine::Classic);
        const GroebnerBasis b = buchberger(r, f, GbEngine::Batched, &st);
        CHECK(a.polys == b.polys);
        CHECK(is_reduced(b));
        CHECK(is_groebner(b));
        for (const auto& q : f) CHECK(normal_form(r, q, b.polys).is_zero());
        CHECK(st.matrices > 0);
        ++n_cases;
      }
    }
  }
  CHECK(n_cases == 40);
}

TEST_CASE("overdetermined and inconsistent systems") {
  const PolyRing r(PrimeField(101), 2);
  const auto x = r.variable(0), y = r.variable(1);
  const std::vector<Polynomial> f{r.sub(x, r.constant(1)), r.sub(x, r.constant(2)), y};
  for (auto engine : {GbEngine::Classic, GbEngine::Batched}) {
    const GroebnerBasis g = buchberger(r, f, engine);
    REQUIRE(g.polys.size() == 1);
    CHECK(g.polys[0] == r.constant(1));
  }
}
