#include "posso/io.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "posso/error.hpp"

namespace posso {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

// Recursive descent over one line.
class ExprParser {
 public:
  ExprParser(const PolyRing& ring, std::string_view text, std::size_t line)
      : ring_(ring), text_(text), line_(line) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::ParseError) const {
    throw ParseError(code, line_, pos_ + 1, msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial expr() {
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = ring_.neg(acc);
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      const Polynomial rhs = term();
      acc = c == '+' ? ring_.add(acc, rhs) : ring_.sub(acc, rhs);
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = ring_.mul(acc, factor());
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t at = pos_;
      const auto e = integer();
      if (!e) fail("expected an exponent");
      if (*e > 65535) {
        pos_ = at;
        fail("exponent too large", ErrorCode::ExponentOverflow);
      }
      base = ring_.pow(base, static_cast<std::uint32_t>(*e));
    }
    const char next = peek();
    if (ident_start(next) || std::isdigit(static_cast<unsigned char>(next)) != 0 || next == '(') {
      fail("implicit multiplication is not allowed; use '*'");
    }
    return base;
  }

  Polynomial primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      // Reduce digit by digit so literals of any length are accepted.
      const std::uint64_t p = ring_.field().modulus();
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
        ++pos_;
      }
      return ring_.constant(static_cast<Elem>(v));
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto& names = ring_.names();
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return ring_.variable(i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'", ErrorCode::UnknownVariable);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::optional<std::uint64_t> integer() {
    if (pos_ >= text_.size() || std::isdigit(static_cast<unsigned char>(text_[pos_])) == 0) return std::nullopt;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      if (v < (1ull << 40)) v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  const PolyRing& ring_;
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Line {
  std::string_view text;
  std::size_t number;
};

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from])) != 0) ++from;
  return from;
}

// "key = rest": returns rest and its column offset, checking the key.
std::pair<std::string_view, std::size_t> header_value(const Line& l, std::string_view key) {
  std::size_t i = first_non_space(l.text);
  if (l.text.substr(i, key.size()) != key) {
    throw ParseError(ErrorCode::ParseError, l.number, i + 1, "expected '" + std::string(key) + " = ...'");
  }
  i = first_non_space(l.text, i + key.size());
  if (i >= l.text.size() || l.text[i] != '=') {
    throw ParseError(ErrorCode::ParseError, l.number, i + 1, "expected '='");
  }
  ++i;
  return {l.text.substr(i), i};
}

}  // namespace

Polynomial parse_polynomial(const PolyRing& ring, std::string_view text, std::size_t line) {
  return ExprParser(ring, text, line).parse();
}

SystemFile parse_system(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const std::string_view body = strip_comment(text.substr(start, end - start));
    if (!blank(body)) lines.push_back({body, number});
    start = end + 1;
  }
  if (lines.size() < 2) {
    throw ParseError(ErrorCode::ParseError, number, 1, "missing 'p = ...' and 'vars = ...' header lines");
  }

  const auto [pval, pcol] = header_value(lines[0], "p");
  std::size_t i = first_non_space(pval);
  std::uint64_t p = 0;
  const std::size_t digits_at = i;
  while (i < pval.size() && std::isdigit(static_cast<unsigned char>(pval[i])) != 0) {
    if (p < (1ull << 40)) p = p * 10 + static_cast<std::uint64_t>(pval[i] - '0');
    ++i;
  }
  if (i == digits_at || !blank(pval.substr(i))) {
    throw ParseError(ErrorCode::ParseError, lines[0].number, pcol + i + 1, "expected an integer modulus");
  }
  std::optional<PrimeField> field;
  try {
    if (p > 0xFFFFFFFFull) throw Error(ErrorCode::NonPrimeModulus, "modulus too large");
    field.emplace(static_cast<std::uint32_t>(p));
  } catch (const Error& e) {
    throw ParseError(ErrorCode::NonPrimeModulus, lines[0].number, pcol + digits_at + 1, e.what());
  }

  const auto [vval, vcol] = header_value(lines[1], "vars");
  std::vector<std::string> names;
  for (std::size_t k = 0;;) {
    k = first_non_space(vval, k);
    const std::size_t start = k;
    if (k >= vval.size() || !ident_start(vval[k])) {
      throw ParseError(ErrorCode::ParseError, lines[1].number, vcol + k + 1, "expected a variable name");
    }
    while (k < vval.size() && ident_char(vval[k])) ++k;
    const std::string name(vval.substr(start, k - start));
    for (const auto& other : names) {
      if (other == name) {
        throw ParseError(ErrorCode::ParseError, lines[1].number, vcol + start + 1, "duplicate variable '" + name + "'");
      }
    }
    names.push_back(name);
    k = first_non_space(vval, k);
    if (k >= vval.size()) break;
    if (vval[k] != ',') throw ParseError(ErrorCode::ParseError, lines[1].number, vcol + k + 1, "expected ','");
    ++k;
  }
  if (names.size() > kMaxVars) {
    throw ParseError(ErrorCode::ParseError, lines[1].number, vcol + 1, "too many variables");
  }

  SystemFile out{PolyRing(*field, names.size(), TermOrder::Kind::DRL, names), {}};
  for (std::size_t k = 2; k < lines.size(); ++k) {
    out.polys.push_back(parse_polynomial(out.ring, lines[k].text, lines[k].number));
  }
  return out;
}

std::string format_system(const SystemFile& system) {
  std::ostringstream os;
  os << "p = " << system.ring.field().modulus() << "\nvars = ";
  const auto& names = system.ring.names();
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  for (const auto& p : system.polys) os << system.ring.format(p) << '\n';
  return os.str();
}

}  // namespace posso
