// Recursive-descent parser for .qms scores. Errors are collected rather than
// thrown: a failing event records its error and the parser resynchronizes at
// the event's closing duration, the next bar line, or the end of the voice.

#include <algorithm>
#include <charconv>

#include "qmus/score.hpp"
#include "score_internal.hpp"
#include "score_lexer.hpp"

namespace qmus::score {

namespace {

using detail::Tok;
using detail::Token;

struct Abandon {};

std::optional<Duration> duration_of(const Token& t) {
  if (t.kind != Tok::Word || t.text.size() != 1) return std::nullopt;
  switch (t.text[0]) {
    case 'w': return Duration::Whole;
    case 'h': return Duration::Half;
    case 'q': return Duration::Quarter;
    case 'e': return Duration::Eighth;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<ParseError> errors)
      : toks_(std::move(tokens)), errors_(std::move(errors)) {}

  ParseResult run() {
    ScoreAST ast;
    const bool model_known = header(ast);
    while (peek().kind != Tok::End) {
      if (is_word("voice")) {
        ast.voices.push_back(voice());
      } else {
        error(peek(), "expected 'voice'");
        advance();
        while (peek().kind != Tok::End && !is_word("voice")) advance();
      }
    }
    if (ast.voices.empty()) ast.header_pos = peek().pos;

    auto semantic = detail::validate_partial(ast, model_known);
    errors_.insert(errors_.end(), semantic.begin(), semantic.end());

    ParseResult result;
    if (errors_.empty())
      result.score = std::move(ast);
    else
      result.errors = std::move(errors_);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }

  void error(const Token& at, std::string message) {
    errors_.push_back(ParseError{at.pos.line, at.pos.column,
                                 std::move(message) + ", found " + detail::describe(at),
                                 at.text});
  }

  [[noreturn]] void fail(const Token& at, std::string message) {
    error(at, std::move(message));
    throw Abandon{};
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    if (kind == Tok::LParen || kind == Tok::LBrace) ++depth_;
    if (kind == Tok::RParen || kind == Tok::RBrace) --depth_;
    return advance();
  }

  int integer(const char* what) {
    const Token& t = peek();
    int value = 0;
    if (t.kind != Tok::Number || t.fraction || t.imaginary ||
        t.text.find('.') != std::string::npos)
      fail(t, std::string("expected ") + what);
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail(t, std::string(what) + " is too large");
    advance();
    return value;
  }

  // Returns whether a model line was read.
  bool header(ScoreAST& ast) {
    ast.header_pos = peek().pos;
    ast.tempo_pos = peek().pos;
    bool model_known = false;
    if (is_word("model")) {
      try {
        advance();
        if (is_word("bundled")) {
          advance();
          ast.model = Model::bundled(integer("octave block dimension"));
          model_known = true;
        } else if (is_word("modes")) {
          advance();
          ast.model = Model::modes();
          model_known = true;
        } else {
          fail(peek(), "expected 'bundled' or 'modes'");
        }
      } catch (const Abandon&) {
        while (peek().kind != Tok::End && !is_word("tempo") && !is_word("voice")) advance();
      }
    } else if (!is_word("tempo")) {
      error(peek(), "missing header: expected 'model'");
      return false;
    } else {
      error(peek(), "expected 'model' before 'tempo'");
    }

    ast.tempo_pos = peek().pos;
    if (is_word("tempo")) {
      try {
        advance();
        ast.tempo_bpm = integer("tempo");
      } catch (const Abandon&) {
        while (peek().kind != Tok::End && !is_word("voice")) advance();
      }
    } else {
      error(peek(), "expected 'tempo'");
    }
    return model_known;
  }

  Voice voice() {
    Voice v;
    v.pos = advance().pos;
    if (peek().kind == Tok::Word && peek().text.find('\'') == std::string::npos) {
      v.id = advance().text;
    } else {
      error(peek(), "expected a voice name");
    }
    if (peek().kind != Tok::LBrace) {
      error(peek(), "expected '{'");
      while (peek().kind != Tok::End && peek().kind != Tok::LBrace && !is_word("voice")) advance();
      if (peek().kind != Tok::LBrace) return v;
    }
    advance();

    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::RBrace) {
        advance();
        break;
      }
      if (t.kind == Tok::End) {
        error(t, "unterminated voice '" + v.id + "': expected '}'");
        break;
      }
      if (t.kind == Tok::Pipe) {
        v.events.push_back(Event{Bar{}, std::nullopt, t.pos});
        advance();
        continue;
      }
      if (is_word("voice")) {
        error(t, "expected '}' before the next voice");
        break;
      }
      timed_event(v);
    }
    return v;
  }

  void timed_event(Voice& v) {
    const std::size_t start = i_;
    depth_ = 0;
    try {
      Event e = event(0);
      if (auto d = duration_of(peek())) {
        advance();
        e.duration = d;
        v.events.push_back(std::move(e));
      } else {
        // No resync: the offending token starts the next event.
        error(peek(), "expected a duration (w, h, q, e)");
      }
    } catch (const Abandon&) {
      recover();
    }
    if (i_ == start) advance();
  }

  void recover() {
    int depth = depth_;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::End) return;
      if (t.kind == Tok::LParen || t.kind == Tok::LBrace) {
        ++depth;
      } else if (t.kind == Tok::RParen || t.kind == Tok::RBrace) {
        if (depth == 0) {
          if (t.kind == Tok::RBrace) return;  // closes the voice
        } else {
          --depth;
        }
      } else if (depth == 0) {
        if (t.kind == Tok::Pipe || is_word("voice")) return;
        if (duration_of(t)) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  Event event(int gate_depth) {
    const Token& t = peek();
    Event e{Pure{}, std::nullopt, t.pos};
    if (t.kind == Tok::Bell) {
      e.kind = bell();
    } else if (t.kind == Tok::Word && t.text == "sup") {
      e.kind = superpose();
    } else if (t.kind == Tok::Word && t.text == "occ") {
      e.kind = occupancy();
    } else if (t.kind == Tok::Word && (t.text == "X" || t.text == "H" || t.text == "I")) {
      if (gate_depth >= kMaxGateDepth) fail(t, "gates nested too deeply");
      const GateName g = parse_gate(advance().text);
      expect(Tok::LParen, "'('");
      Event inner = event(gate_depth + 1);
      expect(Tok::RParen, "')'");
      e.kind = Gated{g, EventBox(std::move(inner))};
    } else if (t.kind == Tok::Word && NoteLabel::parse(t.text)) {
      e.kind = Pure{*NoteLabel::parse(advance().text)};
    } else {
      fail(t, "expected an event");
    }
    return e;
  }

  BellPair bell() {
    const Token& t = advance();
    BellPair b;
    if (t.text == "psi-") b.kind = BellKind::PsiMinus;
    else if (t.text == "psi+") b.kind = BellKind::PsiPlus;
    else if (t.text == "phi-") b.kind = BellKind::PhiMinus;
    else b.kind = BellKind::PhiPlus;
    expect(Tok::LParen, "'('");
    b.first = note();
    expect(Tok::Comma, "','");
    b.second = note();
    expect(Tok::RParen, "')'");
    return b;
  }

  Superpose superpose() {
    advance();
    Superpose s;
    if (peek().kind == Tok::Tilde) {
      advance();
      s.renormalize = true;
    }
    expect(Tok::LBrace, "'{'");
    while (true) {
      Term term;
      term.amp = amplitude();
      term.note = note();
      s.terms.push_back(std::move(term));
      if (peek().kind == Tok::Comma) {
        advance();
        continue;
      }
      expect(Tok::RBrace, "',' or '}'");
      break;
    }
    return s;
  }

  Occupancy occupancy() {
    advance();
    Occupancy o;
    if (peek().kind == Tok::Tilde) {
      advance();
      o.renormalize = true;
    }
    expect(Tok::LParen, "'('");
    o.note = note();
    expect(Tok::Comma, "','");
    o.alpha = amplitude();
    expect(Tok::Comma, "','");
    o.beta = amplitude();
    expect(Tok::RParen, "')'");
    return o;
  }

  NoteLabel note() {
    const Token& t = peek();
    if (t.kind == Tok::Word)
      if (auto n = NoteLabel::parse(t.text)) {
        advance();
        return *n;
      }
    fail(t, "expected a note (a-g)");
  }

  Scalar scalar(const Token& t, bool negative) {
    Scalar s;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (t.fraction) {
      const auto slash = t.text.find('/');
      Fraction f;
      f.negative = negative;
      auto r1 = std::from_chars(first, first + slash, f.numerator);
      auto r2 = std::from_chars(first + slash + 1, last, f.denominator);
      if (r1.ec != std::errc{} || r2.ec != std::errc{}) fail(t, "fraction is too large");
      if (f.denominator == 0) fail(t, "fraction has a zero denominator");
      s.value = static_cast<double>(f.numerator) / static_cast<double>(f.denominator);
      s.exact = f;
    } else {
      auto r = std::from_chars(first, last, s.value);
      if (r.ec != std::errc{} || r.ptr != last) fail(t, "number out of range");
    }
    if (negative) s.value = -s.value;
    return s;
  }

  Amplitude amplitude() {
    bool negative = false;
    while (peek().kind == Tok::Minus) {
      advance();
      negative = !negative;
    }
    if (peek().kind != Tok::Number) fail(peek(), "expected an amplitude");
    const Token& first = advance();
    Amplitude a;
    if (first.imaginary) {
      a.im = scalar(first, negative);
      return a;
    }
    a.re = scalar(first, negative);
    if ((peek().kind == Tok::Plus || peek().kind == Tok::Minus) && peek(1).kind == Tok::Number) {
      const bool im_negative = advance().kind == Tok::Minus;
      const Token& second = advance();
      if (!second.imaginary) fail(second, "expected an imaginary part with an 'i' suffix");
      a.im = scalar(second, im_negative);
    }
    return a;
  }

  std::vector<Token> toks_;
  std::vector<ParseError> errors_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
  auto lexed = detail::lex(source);
  return Parser(std::move(lexed.tokens), std::move(lexed.errors)).run();
}

}  // namespace qmus::score
