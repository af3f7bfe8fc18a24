#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "posso/poly.hpp"

namespace posso {

/// A parsed system file: the ring (DRL, declared variable order) and the
/// polynomials in file order.
struct SystemFile {
  PolyRing ring;
  std::vector<Polynomial> polys;
};

/// Grammar (blank lines and text after '#' are ignored):
///
///   file    := "p" "=" INT NL "vars" "=" IDENT ("," IDENT)* NL (expr NL)*
///   expr    := ["-"] term (("+" | "-") term)*
///   term    := factor ("*" factor)*
///   factor  := primary ["^" INT]
///   primary := INT | IDENT | "(" expr ")"
///
/// Throws ParseError carrying ParseError, UnknownVariable or
/// NonPrimeModulus.
SystemFile parse_system(std::string_view text);

/// Parses one expression over the ring's variable names; `line` is used in
/// error positions.
Polynomial parse_polynomial(const PolyRing& ring, std::string_view text, std::size_t line = 1);

/// Inverse of parse_system.
std::string format_system(const SystemFile& system);

}  // namespace posso
