#include <doctest.h>

#include <string>

#include "posso/bench.hpp"
#include "posso/error.hpp"
#include "posso/io.hpp"
#include "posso/report.hpp"

using namespace posso;

namespace {

ErrorCode code_of(const std::string& text, std::size_t* line = nullptr, std::size_t* col = nullptr) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    if (col) *col = e.column();
    return e.code();
  }
  FAIL("no error for: " << text);
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("parse the worked file") {
  const SystemFile s = parse_system("p=7\nvars=x,y\nx - y^2\ny^3 - 2");
  CHECK(s.ring.field().modulus() == 7);
  CHECK(s.ring.names() == std::vector<std::string>{"x", "y"});
  const PolyRing& r = s.ring;
  const auto x = r.variable(0), y = r.variable(1);
  REQUIRE(s.polys.size() == 2);
  CHECK(s.polys[0] == r.sub(x, r.mul(y, y)));
  CHECK(s.polys[1] == r.sub(r.pow(y, 3), r.constant(2)));
}

TEST_CASE("precedence, parentheses and reduction of literals") {
  const SystemFile s = parse_system(
      "# comment line\n"
      "p = 7\n"
      "vars = x, y\n"
      "\n"
      "2*x^2*y + 3*(x - y)^2   # trailing comment\n"
      "-x^2 + 15\n"
      "-(x + y) * (x - y)\n"
      "123456789012345678901234567891*x\n");
  const PolyRing& r = s.ring;
  const auto x = r.variable(0), y = r.variable(1);
  REQUIRE(s.polys.size() == 4);
  CHECK(s.polys[0] == r.add(r.scale(r.mul(r.mul(x, x), y), 2), r.scale(r.pow(r.sub(x, y), 2), 3)));
  CHECK(s.polys[1] == r.add(r.neg(r.mul(x, x)), r.constant(1)));
  CHECK(s.polys[2] == r.sub(r.mul(y, y), r.mul(x, x)));
  // 123456789012345678901234567891 mod 7 = 1
  CHECK(s.polys[3] == x);
}

TEST_CASE("syntax errors carry positions") {
  std::size_t line = 0, col = 0;
  CHECK(code_of("p=7\nvars=x,y\nx + + y", &line, &col) == ErrorCode::ParseError);
  CHECK(line == 3);
  CHECK(col == 5);
  CHECK(code_of("p=7\nvars=x,y\n2x") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\nx y") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\n+x") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\nx - -y") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\n(x + y") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\nx^") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\nx^2^3") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,x\nx") == ErrorCode::ParseError);
  CHECK(code_of("vars=x\np=7\nx") == ErrorCode::ParseError);
  CHECK(code_of("p=7\n") == ErrorCode::ParseError);
  CHECK(code_of("p=7\nvars=x,y\nz + 1", &line, &col) == ErrorCode::UnknownVariable);
  CHECK(col == 1);
  CHECK(code_of("p=8\nvars=x\nx") == ErrorCode::NonPrimeModulus);
  CHECK(code_of("p=65535\nvars=x\nx") == ErrorCode::NonPrimeModulus);
}

TEST_CASE("print then parse round-trips") {
  Rng rng(1);
  for (std::size_t n : {1u, 2u, 4u}) {
    const PolyRing r = appendix_ring(n, 101);
    const auto f = appendix_family(r, rng());
    SystemFile s{r, f};
    s.polys.push_back(r.zero());
    s.polys.push_back(r.constant(100));
    s.polys.push_back(r.pow(r.sub(r.variable(0), r.constant(3)), 7));
    const std::string text = format_system(s);
    const SystemFile back = parse_system(text);
    CHECK(back.polys == s.polys);
    CHECK(back.ring.names() == s.ring.names());
    CHECK(format_system(back) == text);
  }
}

TEST_CASE("benchmark family shape") {
  const PolyRing r = appendix_ring(4);
  const auto f = appendix_family(r, 9);
  REQUIRE(f.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(f[i].lm() == Monomial::variable(i, 2));
    CHECK(f[i].lc() == 1);
    CHECK(f[i].degree() == 2);
  }
  CHECK(appendix_family(r, 9) == f);
  CHECK(appendix_family(r, 10) != f);
}

TEST_CASE("JSON keys are the StatsRecord fields") {
  SolveReport rep;
  rep.stats.n = 2;
  rep.stats.degree = 3;
  rep.stats.density = 0.5;
  rep.rep.h = {make_upoly({0, 0, 1}), make_upoly({5, 0, 0, 1})};
  const auto j = to_json(stats_record(rep));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"D", "chord_time", "density", "gb_time", "matrix_time", "n", "nf_count",
                                         "pipeline", "total_time"});
  CHECK(j["pipeline"] == "deterministic");
  const auto full = to_json(rep);
  CHECK(full["rep"][1] == nlohmann::json::array({5, 0, 0, 1}));
  CHECK(full["g"].is_null());
}
