#include "score_lexer.hpp"

namespace qmus::score::detail {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    LexResult out;
    while (true) {
      skip_blank();
      if (i_ >= src_.size()) break;
      const SourcePos start = pos_;
      const char c = src_[i_];
      if (is_alpha(c)) {
        out.tokens.push_back(word(start));
      } else if (is_digit(c)) {
        out.tokens.push_back(number(start));
      } else if (auto k = punct(c)) {
        advance();
        out.tokens.push_back(Token{*k, std::string(1, c), start});
      } else {
        std::size_t from = i_;
        advance();
        while (i_ < src_.size() && is_continuation(src_[i_])) advance();
        out.errors.push_back(ParseError{start.line, start.column, "unexpected character",
                                        std::string(src_.substr(from, i_ - from))});
      }
    }
    out.tokens.push_back(Token{Tok::End, "", pos_});
    return out;
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if (!is_continuation(src_[i_])) {
      ++pos_.column;
    }
    ++i_;
  }

  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }

  void skip_blank() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token word(SourcePos start) {
    const std::size_t from = i_;
    while (i_ < src_.size() && is_alnum(src_[i_])) advance();
    const std::string_view stem = src_.substr(from, i_ - from);
    if ((stem == "psi" || stem == "phi") && (peek() == '+' || peek() == '-')) {
      advance();
      return Token{Tok::Bell, std::string(src_.substr(from, i_ - from)), start};
    }
    while (i_ < src_.size() && src_[i_] == '\'') advance();
    return Token{Tok::Word, std::string(src_.substr(from, i_ - from)), start};
  }

  Token number(SourcePos start) {
    const std::size_t from = i_;
    Token t{Tok::Number, "", start};
    while (is_digit(peek())) advance();
    if (peek() == '.' && is_digit(peek(1))) {
      advance();
      while (is_digit(peek())) advance();
    } else if (peek() == '/' && is_digit(peek(1))) {
      advance();
      while (is_digit(peek())) advance();
      t.fraction = true;
    }
    t.text = std::string(src_.substr(from, i_ - from));
    if (peek() == 'i' && !is_alnum(peek(1))) {
      advance();
      t.imaginary = true;
    }
    return t;
  }

  static std::optional<Tok> punct(char c) {
    switch (c) {
      case '{': return Tok::LBrace;
      case '}': return Tok::RBrace;
      case '(': return Tok::LParen;
      case ')': return Tok::RParen;
      case ',': return Tok::Comma;
      case '|': return Tok::Pipe;
      case '~': return Tok::Tilde;
      case '+': return Tok::Plus;
      case '-': return Tok::Minus;
      default: return std::nullopt;
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

LexResult lex(std::string_view source) { return Lexer(source).run(); }

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + (t.imaginary ? "i" : "") + "'";
}

}  // namespace qmus::score::detail
