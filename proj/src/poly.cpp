#include "posso/poly.hpp"

#include <algorithm>
#include <cstring>

namespace posso {

namespace {

constexpr std::uint32_t kMaxExponent = 0xFFFF;

}  // namespace

Monomial Monomial::from_exponents(std::span<const std::uint32_t> exps) {
  if (exps.size() > kMaxVars) {
    throw Error(ErrorCode::DimensionMismatch, "too many variables for a monomial");
  }
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 65535");
    m.e_[i] = static_cast<std::uint16_t>(exps[i]);
    m.deg_ += exps[i];
  }
  return m;
}

Monomial Monomial::variable(std::size_t i, std::uint32_t power) {
  if (i >= kMaxVars) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  if (power > kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 65535");
  Monomial m;
  m.e_[i] = static_cast<std::uint16_t>(power);
  m.deg_ = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint32_t s = std::uint32_t{e_[i]} + o.e_[i];
    if (s > kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 65535");
    r.e_[i] = static_cast<std::uint16_t>(s);
  }
  r.deg_ = deg_ + o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint16_t>(e_[i] - o.e_[i]);
  r.deg_ = deg_ - o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] > o.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] != 0 && o.e_[i] != 0) return false;
  }
  return true;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t words[kMaxVars / 4];
  std::memcpy(words, e_.data(), sizeof(words));
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::uint64_t w : words) {
    h ^= w;
    h *= 0xFF51AFD7ED558CCDull;
    h ^= h >> 32;
  }
  return static_cast<std::size_t>(h);
}

std::uint32_t Polynomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms) d = std::max(d, t.mono.degree());
  return d;
}

PolyRing::PolyRing(PrimeField field, std::size_t nvars, TermOrder::Kind kind,
                   std::vector<std::string> names)
    : field_(field), order_{kind, nvars}, names_(std::move(names)) {
  if (nvars > kMaxVars) throw Error(ErrorCode::DimensionMismatch, "too many variables");
  if (names_.empty()) {
    for (std::size_t i = 0; i < nvars; ++i) names_.push_back("x" + std::to_string(i + 1));
  }
  if (names_.size() != nvars) {
    throw Error(ErrorCode::DimensionMismatch, "variable name count differs from nvars");
  }
}

PolyRing PolyRing::with_order(TermOrder::Kind kind) const {
  return PolyRing(field_, order_.n, kind, names_);
}

Polynomial PolyRing::constant(Elem c) const { return term(Monomial{}, c); }

Polynomial PolyRing::variable(std::size_t i) const { return term(Monomial::variable(i), 1); }

Polynomial PolyRing::term(const Monomial& m, Elem c) const {
  Polynomial p;
  if (c % field_.modulus() != 0) p.terms.push_back({m, c % field_.modulus()});
  return p;
}

Polynomial PolyRing::normalize(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order_.greater(a.mono, b.mono); });
  Polynomial out;
  for (const auto& t : terms) {
    const Elem c = t.coef % field_.modulus();
    if (!out.terms.empty() && out.terms.back().mono == t.mono) {
      out.terms.back().coef = field_.add(out.terms.back().coef, c);
      if (out.terms.back().coef == 0) out.terms.pop_back();
    } else if (c != 0) {
      out.terms.push_back({t.mono, c});
    }
  }
  return out;
}

Polynomial PolyRing::sub_mul_term(const Polynomial& f, const Polynomial& g, const Monomial& m,
                                  Elem c) const {
  Polynomial out;
  out.terms.reserve(f.terms.size() + g.terms.size());
  const Elem nc = field_.neg(c);
  std::size_t i = 0, j = 0;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.terms.push_back(f.terms[i++]);
      continue;
    }
    const Monomial gm = g.terms[j].mono * m;
    const Elem gc = field_.mul(g.terms[j].coef, nc);
    if (i == f.terms.size()) {
      if (gc != 0) out.terms.push_back({gm, gc});
      ++j;
      continue;
    }
    const auto cmp = order_.compare(f.terms[i].mono, gm);
    if (cmp > 0) {
      out.terms.push_back(f.terms[i++]);
    } else if (cmp < 0) {
      if (gc != 0) out.terms.push_back({gm, gc});
      ++j;
    } else {
      const Elem s = field_.add(f.terms[i].coef, gc);
      if (s != 0) out.terms.push_back({gm, s});
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial PolyRing::add(const Polynomial& f, const Polynomial& g) const {
  return sub_mul_term(f, g, Monomial{}, field_.neg(1));
}

Polynomial PolyRing::sub(const Polynomial& f, const Polynomial& g) const {
  return sub_mul_term(f, g, Monomial{}, 1);
}

Polynomial PolyRing::neg(const Polynomial& f) const { return scale(f, field_.neg(1)); }

Polynomial PolyRing::scale(const Polynomial& f, Elem c) const {
  Polynomial out;
  if (c == 0) return out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) out.terms.push_back({t.mono, field_.mul(t.coef, c)});
  return out;
}

Polynomial PolyRing::mul_term(const Polynomial& f, const Monomial& m, Elem c) const {
  Polynomial out;
  if (c == 0) return out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) out.terms.push_back({t.mono * m, field_.mul(t.coef, c)});
  return out;
}

Polynomial PolyRing::mul(const Polynomial& f, const Polynomial& g) const {
  std::vector<Term> acc;
  acc.reserve(f.terms.size() * g.terms.size());
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) acc.push_back({a.mono * b.mono, field_.mul(a.coef, b.coef)});
  }
  return normalize(std::move(acc));
}

Polynomial PolyRing::pow(const Polynomial& f, std::uint32_t e) const {
  Polynomial result = constant(1);
  Polynomial base = f;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return result;
}

Polynomial PolyRing::monic(const Polynomial& f) const {
  if (f.is_zero() || f.lc() == 1) return f;
  return scale(f, field_.inv(f.lc()));
}

Elem PolyRing::evaluate(const Polynomial& f, std::span<const Elem> point) const {
  Elem sum = 0;
  for (const auto& t : f.terms) {
    Elem v = t.coef;
    for (std::size_t i = 0; i < order_.n && v != 0; ++i) {
      if (t.mono[i] != 0) v = field_.mul(v, field_.pow(point[i], t.mono[i]));
    }
    sum = field_.add(sum, v);
  }
  return sum;
}

std::string PolyRing::format(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < order_.n; ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names_[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PolyRing::format(const Polynomial& f) const {
  if (f.is_zero()) return "0";
  std::vector<Term> terms = f.terms;
  const TermOrder drl{TermOrder::Kind::DRL, order_.n};
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return drl.greater(a.mono, b.mono); });
  std::string s;
  for (const auto& t : terms) {
    std::int64_t c = field_.to_signed(t.coef);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (s.empty()) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    if (t.mono.is_one()) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + '*';
      s += format(t.mono);
    }
  }
  return s;
}

Polynomial normal_form(const PolyRing& ring, const Polynomial& f, std::span<const Polynomial> g) {
  const PrimeField& k = ring.field();
  std::vector<Elem> inv_lc;
  inv_lc.reserve(g.size());
  for (const auto& p : g) inv_lc.push_back(p.is_zero() ? 0 : k.inv(p.lc()));

  Polynomial rest = f;
  Polynomial rem;
  // `rest` shrinks from the front; terms that no leading monomial divides
  // are final, since later steps only touch smaller monomials.
  while (!rest.is_zero()) {
    const Term lt = rest.lead();
    std::size_t hit = g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g[i].is_zero() && g[i].lm().divides(lt.mono)) {
        hit = i;
        break;
      }
    }
    if (hit == g.size()) {
      rem.terms.push_back(lt);
      rest.terms.erase(rest.terms.begin());
      continue;
    }
    rest = ring.sub_mul_term(rest, g[hit], lt.mono / g[hit].lm(), k.mul(lt.coef, inv_lc[hit]));
  }
  return rem;
}

Polynomial apply_change_of_variables(const PolyRing& ring, const Polynomial& f, const Matrix& g) {
  const std::size_t n = ring.nvars();
  if (g.rows() != n || g.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "change of variables must be n x n");
  }
  if (determinant(ring.field(), g) == 0) {
    throw Error(ErrorCode::SingularMatrix, "change of variables is singular");
  }
  std::vector<Polynomial> forms(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({Monomial::variable(j), g(i, j)});
    forms[i] = ring.normalize(std::move(t));
  }
  // powers[i][e] = forms[i]^e, grown on demand.
  std::vector<std::vector<Polynomial>> powers(n, std::vector<Polynomial>{ring.constant(1)});
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    while (powers[i].size() <= e) powers[i].push_back(ring.mul(powers[i].back(), forms[i]));
    return powers[i][e];
  };

  Polynomial result;
  for (const auto& t : f.terms) {
    Polynomial prod = ring.constant(t.coef);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.mono[i] != 0) prod = ring.mul(prod, power(i, t.mono[i]));
    }
    result = ring.add(result, prod);
  }
  return result;
}

}  // namespace posso
