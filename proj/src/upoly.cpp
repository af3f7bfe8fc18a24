#include "posso/upoly.hpp"

namespace posso {

void trim(UPoly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

UPoly make_upoly(std::vector<Elem> coeffs) {
  UPoly f{std::move(coeffs)};
  trim(f);
  return f;
}

Elem evaluate(const PrimeField& field, const UPoly& f, Elem x) {
  Elem acc = 0;
  for (std::size_t k = f.c.size(); k-- > 0;) acc = field.add(field.mul(acc, x), f.c[k]);
  return acc;
}

Matrix evaluate(const PrimeField& field, const UPoly& f, const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "evaluate: matrix is not square");
  const std::size_t n = m.rows();
  Matrix acc(n, n);
  for (std::size_t k = f.c.size(); k-- > 0;) {
    acc = mat_mul(field, acc, m);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = field.add(acc(i, i), f.c[k]);
  }
  return acc;
}

UPoly to_upoly(const Polynomial& f, std::size_t var) {
  UPoly out;
  for (const auto& t : f.terms) {
    if (t.mono.degree() != t.mono[var]) {
      throw Error(ErrorCode::DimensionMismatch, "polynomial is not univariate");
    }
    const std::size_t k = t.mono[var];
    if (out.c.size() <= k) out.c.resize(k + 1, 0);
    out.c[k] = t.coef;
  }
  trim(out);
  return out;
}

Polynomial from_upoly(const PolyRing& ring, const UPoly& f, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < f.c.size(); ++k) {
    if (f.c[k] != 0) terms.push_back({Monomial::variable(var, static_cast<std::uint32_t>(k)), f.c[k]});
  }
  return ring.normalize(std::move(terms));
}

std::vector<Polynomial> to_polynomials(const PolyRing& ring, const UnivariateRep& rep) {
  const std::size_t n = rep.nvars();
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.push_back(ring.sub(ring.variable(i), from_upoly(ring, rep.h[i], n - 1)));
  }
  if (n > 0) out.push_back(from_upoly(ring, rep.h[n - 1], n - 1));
  return out;
}

std::string format(const PolyRing& ring, const UnivariateRep& rep) {
  const std::size_t n = rep.nvars();
  std::string s;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s += ring.names()[i] + " = " + ring.format(from_upoly(ring, rep.h[i], n - 1)) + " ; ";
  }
  if (n == 0) return s;
  const Polynomial hn = from_upoly(ring, rep.h[n - 1], n - 1);
  if (hn.is_zero()) return s + "0 = 0";
  Polynomial lead = ring.term(hn.lm(), hn.lc());
  Polynomial rest = ring.neg(ring.sub(hn, lead));
  return s + ring.format(lead) + " = " + ring.format(rest);
}

}  // namespace posso
