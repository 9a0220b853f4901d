#include "qmus/note.hpp"

namespace qmus {

char pitch_letter(Pitch p) {
  static constexpr char kLetters[] = {'c', 'd', 'e', 'f', 'g', 'a', 'b'};
  return kLetters[static_cast<int>(p)];
}

std::string NoteLabel::to_string() const {
  std::string s(1, pitch_letter(pitch));
  s.append(static_cast<std::size_t>(octave < 0 ? 0 : octave), '\'');
  return s;
}

std::optional<NoteLabel> NoteLabel::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Pitch p;
  switch (text[0]) {
    case 'c': p = Pitch::C; break;
    case 'd': p = Pitch::D; break;
    case 'e': p = Pitch::E; break;
    case 'f': p = Pitch::F; break;
    case 'g': p = Pitch::G; break;
    case 'a': p = Pitch::A; break;
    case 'b': p = Pitch::B; break;
    default: return std::nullopt;
  }
  for (char c : text.substr(1))
    if (c != '\'') return std::nullopt;
  return NoteLabel{p, static_cast<int>(text.size() - 1)};
}

}  // namespace qmus
