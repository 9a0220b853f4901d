#pragma once

// Quantum-score DSL (.qms): abstract syntax, parser, validator, and canonical
// printer.
//
//   score   := header voice+
//   header  := "model" ("bundled" int | "modes") "tempo" int
//   voice   := "voice" ident "{" (event | "|")* "}"
//   event   := (pure | sup | occ | gated | bell) dur
//   pure    := note
//   sup     := "sup" ["~"] "{" amp note ("," amp note)* "}"
//   occ     := "occ" ["~"] "(" note "," amp "," amp ")"
//   gated   := ("X" | "H" | "I") "(" event-without-duration ")"
//   bell    := ("psi-" | "psi+" | "phi-" | "phi+") "(" note "," note ")"
//   note    := [a-g] "'"*
//   dur     := "w" | "h" | "q" | "e"
//   amp     := "-"* number ["i"] [("+" | "-") number "i"]
//   number  := digits ["." digits] | digits "/" digits
//
// "#" starts a comment that runs to the end of the line. "~" asks for the
// amplitudes to be rescaled to unit norm instead of being checked.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmus/note.hpp"
#include "qmus/qcore.hpp"

namespace qmus::score {

enum class Duration { Whole, Half, Quarter, Eighth };

// Ticks at 480 per quarter note.
int ticks(Duration d);
char duration_symbol(Duration d);

struct SourcePos {
  int line = 1;
  int column = 1;
};

// Exact rational as written in the source, sign kept separately so "-0/1"
// survives.
struct Fraction {
  bool negative = false;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct Scalar {
  double value = 0.0;
  std::optional<Fraction> exact;  // set when written as a/b

  friend bool operator==(const Scalar&, const Scalar&) = default;
};

// Real part, imaginary part, or both.
struct Amplitude {
  std::optional<Scalar> re;
  std::optional<Scalar> im;

  Complex value() const;

  static Amplitude real(double v) { return {Scalar{v, std::nullopt}, std::nullopt}; }
  static Amplitude fraction(std::int64_t num, std::uint64_t den);

  friend bool operator==(const Amplitude&, const Amplitude&) = default;
};

struct Term {
  Amplitude amp;
  NoteLabel note;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Event;

// Value-semantic owning pointer for the recursive Gated case.
class EventBox {
 public:
  explicit EventBox(Event e);
  EventBox(const EventBox& other);
  EventBox(EventBox&&) noexcept = default;
  EventBox& operator=(const EventBox& other);
  EventBox& operator=(EventBox&&) noexcept = default;
  ~EventBox();

  const Event& operator*() const { return *ptr_; }
  const Event* operator->() const { return ptr_.get(); }

  friend bool operator==(const EventBox& a, const EventBox& b);

 private:
  std::unique_ptr<Event> ptr_;
};

struct Pure {
  NoteLabel note;
  friend bool operator==(const Pure&, const Pure&) = default;
};

struct Superpose {
  std::vector<Term> terms;
  bool renormalize = false;
  friend bool operator==(const Superpose&, const Superpose&) = default;
};

struct Occupancy {
  NoteLabel note;
  Amplitude alpha;  // vacuum
  Amplitude beta;   // occupied
  bool renormalize = false;
  friend bool operator==(const Occupancy&, const Occupancy&) = default;
};

struct Gated {
  GateName gate = GateName::I;
  EventBox inner;
  friend bool operator==(const Gated&, const Gated&) = default;
};

struct BellPair {
  BellKind kind = BellKind::PsiMinus;
  NoteLabel first;
  NoteLabel second;
  friend bool operator==(const BellPair&, const BellPair&) = default;
};

struct Bar {
  friend bool operator==(const Bar&, const Bar&) = default;
};

using EventKind = std::variant<Pure, Superpose, Occupancy, Gated, BellPair, Bar>;

struct Event {
  EventKind kind;
  std::optional<Duration> duration;  // none for Bar and for gate operands
  SourcePos pos;

  bool is_bar() const { return std::holds_alternative<Bar>(kind); }

  // Source position is not part of the structure.
  friend bool operator==(const Event& a, const Event& b) {
    return a.kind == b.kind && a.duration == b.duration;
  }
};

struct Voice {
  std::string id;
  std::vector<Event> events;
  SourcePos pos;

  friend bool operator==(const Voice& a, const Voice& b) {
    return a.id == b.id && a.events == b.events;
  }
};

struct Model {
  enum class Kind { Bundled, Modes };
  Kind kind = Kind::Modes;
  int dim = 7;  // octave block dimension, bundled only

  static Model bundled(int dim) { return {Kind::Bundled, dim}; }
  static Model modes() { return {Kind::Modes, 7}; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.kind == b.kind && (a.kind == Kind::Modes || a.dim == b.dim);
  }
};

struct ScoreAST {
  Model model;
  int tempo_bpm = 120;
  std::vector<Voice> voices;
  SourcePos header_pos;
  SourcePos tempo_pos;

  const Voice* find_voice(std::string_view id) const;

  friend bool operator==(const ScoreAST& a, const ScoreAST& b) {
    return a.model == b.model && a.tempo_bpm == b.tempo_bpm && a.voices == b.voices;
  }
};

struct ParseError {
  int line = 1;
  int column = 1;
  std::string message;
  std::string found_token;

  // "line:col: message"
  std::string to_string() const;
};

struct ParseResult {
  std::optional<ScoreAST> score;  // set exactly when errors is empty
  std::vector<ParseError> errors;

  bool ok() const { return score.has_value(); }
};

inline constexpr int kMinTempo = 4;
inline constexpr int kMaxTempo = 60000;
inline constexpr int kMaxGateDepth = 64;

ParseResult parse(std::string_view source);

std::vector<ParseError> validate(const ScoreAST& ast);

std::string pretty_print(const ScoreAST& ast);

// Canonical text of a single amplitude ("4/5", "0.6", "-0.3+0.4i").
std::string format_amplitude(const Amplitude& a);

}  // namespace qmus::score
