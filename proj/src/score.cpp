#include "qmus/score.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <span>

#include "qmus/models.hpp"
#include "score_internal.hpp"

namespace qmus::score {

int ticks(Duration d) {
  switch (d) {
    case Duration::Whole: return 1920;
    case Duration::Half: return 960;
    case Duration::Quarter: return 480;
    case Duration::Eighth: return 240;
  }
  return 0;
}

char duration_symbol(Duration d) {
  switch (d) {
    case Duration::Whole: return 'w';
    case Duration::Half: return 'h';
    case Duration::Quarter: return 'q';
    case Duration::Eighth: return 'e';
  }
  return '?';
}

Complex Amplitude::value() const {
  return {re ? re->value : 0.0, im ? im->value : 0.0};
}

Amplitude Amplitude::fraction(std::int64_t num, std::uint64_t den) {
  const bool negative = num < 0;
  const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(num + 1)) + 1
                                     : static_cast<std::uint64_t>(num);
  double v = static_cast<double>(mag) / static_cast<double>(den);
  if (negative) v = -v;
  return {Scalar{v, Fraction{negative, mag, den}}, std::nullopt};
}

EventBox::EventBox(Event e) : ptr_(std::make_unique<Event>(std::move(e))) {}
EventBox::EventBox(const EventBox& other) : ptr_(std::make_unique<Event>(*other.ptr_)) {}
EventBox& EventBox::operator=(const EventBox& other) {
  if (this != &other) ptr_ = std::make_unique<Event>(*other.ptr_);
  return *this;
}
EventBox::~EventBox() = default;

bool operator==(const EventBox& a, const EventBox& b) { return *a.ptr_ == *b.ptr_; }

const Voice* ScoreAST::find_voice(std::string_view id) const {
  for (const auto& v : voices)
    if (v.id == id) return &v;
  return nullptr;
}

std::string ParseError::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_magnitude(const Scalar& s) {
  if (s.exact) return std::to_string(s.exact->numerator) + "/" + std::to_string(s.exact->denominator);
  char buf[400];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(s.value), std::chars_format::fixed);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

bool is_negative(const Scalar& s) {
  return s.exact ? s.exact->negative : std::signbit(s.value);
}

std::string format_signed(const Scalar& s) {
  return (is_negative(s) ? "-" : "") + format_magnitude(s);
}

std::string format_event(const Event& e);

std::string format_kind(const EventKind& kind) {
  struct Printer {
    std::string operator()(const Pure& p) const { return p.note.to_string(); }
    std::string operator()(const Superpose& s) const {
      std::string out = s.renormalize ? "sup~{" : "sup{";
      for (std::size_t k = 0; k < s.terms.size(); ++k) {
        if (k) out += ", ";
        out += format_amplitude(s.terms[k].amp) + " " + s.terms[k].note.to_string();
      }
      return out + "}";
    }
    std::string operator()(const Occupancy& o) const {
      return std::string(o.renormalize ? "occ~(" : "occ(") + o.note.to_string() + ", " +
             format_amplitude(o.alpha) + ", " + format_amplitude(o.beta) + ")";
    }
    std::string operator()(const Gated& g) const {
      return std::string(to_string(g.gate)) + "(" + format_event(*g.inner) + ")";
    }
    std::string operator()(const BellPair& b) const {
      return std::string(to_string(b.kind)) + "(" + b.first.to_string() + ", " +
             b.second.to_string() + ")";
    }
    std::string operator()(const Bar&) const { return "|"; }
  };
  return std::visit(Printer{}, kind);
}

std::string format_event(const Event& e) {
  std::string out = format_kind(e.kind);
  if (e.duration) {
    out += ' ';
    out += duration_symbol(*e.duration);
  }
  return out;
}

}  // namespace

std::string format_amplitude(const Amplitude& a) {
  if (!a.re && !a.im) return "0";
  if (!a.im) return format_signed(*a.re);
  if (!a.re) return format_signed(*a.im) + "i";
  return format_signed(*a.re) + (is_negative(*a.im) ? "-" : "+") + format_magnitude(*a.im) + "i";
}

std::string pretty_print(const ScoreAST& ast) {
  std::string out = "model ";
  if (ast.model.kind == Model::Kind::Bundled)
    out += "bundled " + std::to_string(ast.model.dim);
  else
    out += "modes";
  out += "\ntempo " + std::to_string(ast.tempo_bpm) + "\n";
  for (const auto& v : ast.voices) {
    out += "\nvoice " + v.id + " {\n";
    for (const auto& e : v.events) out += "  " + format_event(e) + "\n";
    out += "}\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* kind_token(const EventKind& k) {
  switch (k.index()) {
    case 0: return "note";
    case 1: return "sup";
    case 2: return "occ";
    case 3: return "gate";
    case 4: return "bell";
    default: return "|";
  }
}

class Validator {
 public:
  Validator(const ScoreAST& ast, bool model_known) : ast_(ast), model_known_(model_known) {}

  std::vector<ParseError> run() {
    if (model_known_ && ast_.model.kind == Model::Kind::Bundled && ast_.model.dim != 7 &&
        ast_.model.dim != 8)
      error(ast_.header_pos, "bundled octave dimension must be 7 or 8, got " +
                                 std::to_string(ast_.model.dim), "bundled");
    if (ast_.tempo_bpm < kMinTempo || ast_.tempo_bpm > kMaxTempo)
      error(ast_.tempo_pos, "tempo must be between " + std::to_string(kMinTempo) + " and " +
                                std::to_string(kMaxTempo) + " bpm, got " +
                                std::to_string(ast_.tempo_bpm), "tempo");
    if (ast_.voices.empty()) error(ast_.header_pos, "score has no voices", "");

    std::set<std::string> ids;
    for (const auto& v : ast_.voices) {
      if (!ids.insert(v.id).second) error(v.pos, "duplicate voice '" + v.id + "'", v.id);
      for (const auto& e : v.events) top_level(e);
    }
    return std::move(errors_);
  }

 private:
  bool bundled() const { return model_known_ && ast_.model.kind == Model::Kind::Bundled; }

  void error(SourcePos pos, std::string message, std::string found) {
    errors_.push_back(ParseError{pos.line, pos.column, std::move(message), std::move(found)});
  }

  void top_level(const Event& e) {
    if (e.is_bar()) {
      if (e.duration) error(e.pos, "a bar line takes no duration", "|");
      return;
    }
    if (!e.duration) error(e.pos, "event has no duration", kind_token(e.kind));
    event(e, 0);
  }

  void note(const Event& e, const NoteLabel& n) {
    if (n.octave < 0 || n.octave > kMaxOctave)
      error(e.pos, "note " + n.to_string() + " is outside octaves 0.." + std::to_string(kMaxOctave),
            n.to_string());
  }

  void norm(const Event& e, std::span<const Complex> amps, bool renormalize, const char* what) {
    double norm2 = 0.0;
    double largest = 0.0;
    for (const auto& z : amps) {
      norm2 += std::norm(z);
      largest = std::max(largest, std::abs(z));
    }
    if (!std::isfinite(norm2)) {
      error(e.pos, std::string(what) + " has a non-finite amplitude", kind_token(e.kind));
    } else if (renormalize) {
      if (largest < kNormEps)
        error(e.pos, std::string(what) + " amplitudes vanish; nothing to renormalize",
              kind_token(e.kind));
    } else if (std::abs(norm2 - 1.0) > kNormEps) {
      error(e.pos, std::string(what) + " is not normalized: norm^2 = " + fmt_g(norm2),
            kind_token(e.kind));
    }
  }

  // Hilbert-space dimension of an event, or 0 if it cannot be gated.
  static std::size_t dimension(const Event& e, bool bundled_model) {
    if (const auto* s = std::get_if<Superpose>(&e.kind)) return s->terms.size();
    if (std::holds_alternative<Pure>(e.kind) || std::holds_alternative<Occupancy>(e.kind))
      return bundled_model ? 1 : 2;
    if (const auto* g = std::get_if<Gated>(&e.kind)) return dimension(*g->inner, bundled_model);
    if (std::holds_alternative<BellPair>(e.kind)) return 4;
    return 0;
  }

  void event(const Event& e, int depth) {
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Pure>) {
            note(e, k.note);
          } else if constexpr (std::is_same_v<T, Superpose>) {
            superpose(e, k);
          } else if constexpr (std::is_same_v<T, Occupancy>) {
            note(e, k.note);
            if (bundled())
              error(e.pos, "occupancy events need 'model modes'", "occ");
            const Complex amps[] = {k.alpha.value(), k.beta.value()};
            norm(e, amps, k.renormalize, "occupancy");
          } else if constexpr (std::is_same_v<T, Gated>) {
            gated(e, k, depth);
          } else if constexpr (std::is_same_v<T, BellPair>) {
            note(e, k.first);
            note(e, k.second);
            if (k.first == k.second)
              error(e.pos, "Bell pair needs two distinct notes (SameNote), got " +
                               k.first.to_string() + " twice", std::string(to_string(k.kind)));
          } else {
            error(e.pos, "a bar line cannot be gated", "|");
          }
        },
        e.kind);
  }

  void superpose(const Event& e, const Superpose& s) {
    if (s.terms.empty()) {
      error(e.pos, "superposition has no terms", "sup");
      return;
    }
    if (s.terms.size() > kMaxDim) {
      error(e.pos, "superposition has more than " + std::to_string(kMaxDim) + " terms", "sup");
      return;
    }
    std::vector<Complex> amps;
    std::set<NoteLabel> seen;
    for (const auto& t : s.terms) {
      note(e, t.note);
      amps.push_back(t.amp.value());
      if (!seen.insert(t.note).second)
        error(e.pos, "note " + t.note.to_string() + " appears twice in a superposition",
              t.note.to_string());
    }
    norm(e, amps, s.renormalize, "superposition");

    if (bundled() && (ast_.model.dim == 7 || ast_.model.dim == 8)) {
      const OctaveModelConfig cfg(ast_.model.dim);
      bool shared = false;
      for (int block : blocks_of(s.terms.front().note, cfg)) {
        bool all = true;
        for (const auto& t : s.terms) {
          const auto b = blocks_of(t.note, cfg);
          all = all && std::find(b.begin(), b.end(), block) != b.end();
        }
        shared = shared || all;
      }
      if (!shared) error(e.pos, "superposition spans more than one octave block", "sup");
    }
  }

  void gated(const Event& e, const Gated& g, int depth) {
    if (depth + 1 > kMaxGateDepth) {
      error(e.pos, "gates nested too deeply", std::string(to_string(g.gate)));
      return;
    }
    const Event& inner = *g.inner;
    if (inner.duration) error(inner.pos, "a gate operand takes no duration", kind_token(inner.kind));
    if (model_known_) {
      const std::size_t d = dimension(inner, bundled());
      if (d != 2)
        error(e.pos, "gate " + std::string(to_string(g.gate)) +
                         " acts on a two-dimensional state; operand has dimension " +
                         std::to_string(d),
              std::string(to_string(g.gate)));
    }
    event(inner, depth + 1);
  }

  const ScoreAST& ast_;
  bool model_known_;
  std::vector<ParseError> errors_;
};

}  // namespace

namespace detail {
std::vector<ParseError> validate_partial(const ScoreAST& ast, bool model_known) {
  return Validator(ast, model_known).run();
}
}  // namespace detail

std::vector<ParseError> validate(const ScoreAST& ast) { return detail::validate_partial(ast, true); }

}  // namespace qmus::score
