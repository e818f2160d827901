#pragma once

#include "braidlie/braidlie.hpp"

#include <stdexcept>
#include <string>

namespace cli {

struct ParseError : std::runtime_error {
  ParseError(size_t position, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " +
                           message),
        position(position) {}
  size_t position;
};

/// Grammar, whitespace-insensitive:
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := [integer '*'] atom
///   atom    := '[' expr ',' expr ']' | '(' expr ')' | genword | '0'
///   genword := gen+          one component, juxtaposed letters, Lyndon
///   gen     := 'B' '(' int ',' int ')'
/// B(j,i) is accepted and normalized to B(i,j).  Round-trips the canonical
/// element serialization.
braidlie::PnLieElement parse_element(const std::string& text, int n,
                                     int degree_cap = braidlie::kDefaultDegreeCap);

}  // namespace cli
