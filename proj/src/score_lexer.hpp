#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmus/score.hpp"

namespace qmus::score::detail {

enum class Tok {
  Word,    // identifiers, keywords, notes (primes included)
  Number,  // 12, 0.75, 4/5, optionally with an i suffix
  Bell,    // psi- psi+ phi- phi+
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Pipe,
  Tilde,
  Plus,
  Minus,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  bool fraction = false;   // Number written as a/b
  bool imaginary = false;  // Number with an i suffix (not part of text)
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by End
  std::vector<ParseError> errors;
};

LexResult lex(std::string_view source);

std::string describe(const Token& t);

}  // namespace qmus::score::detail
