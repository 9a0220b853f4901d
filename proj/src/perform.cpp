#include "qmus/perform.hpp"

#include <algorithm>
#include <limits>

#include "qmus/error.hpp"
#include "qmus/models.hpp"

namespace qmus::perform {

using score::Event;
using score::Model;
using score::ScoreAST;

namespace {

struct Prepared {
  StateVector state;
  std::vector<Chord> heard;  // per basis vector of state
};

Prepared prepare(const Event& e, const Model& model) {
  return std::visit(
      [&](const auto& k) -> Prepared {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, score::Pure>) {
          if (model.kind == Model::Kind::Bundled) {
            const Complex one = 1.0;
            return {normalize({&one, 1}, {k.note.to_string()}), {{k.note}}};
          }
          return {StateVector::basis(mode_labels(k.note), 0), {{k.note}, {}}};
        } else if constexpr (std::is_same_v<T, score::Superpose>) {
          std::vector<Complex> amps;
          std::vector<std::string> labels;
          std::vector<Chord> heard;
          for (const auto& t : k.terms) {
            amps.push_back(t.amp.value());
            labels.push_back(t.note.to_string());
            heard.push_back({t.note});
          }
          return {normalize(amps, std::move(labels)), std::move(heard)};
        } else if constexpr (std::is_same_v<T, score::Occupancy>) {
          const auto occ =
              occupancy_state(k.note, k.alpha.value(), k.beta.value(), k.renormalize);
          return {occ.mode_vector(), {{k.note}, {}}};
        } else if constexpr (std::is_same_v<T, score::Gated>) {
          Prepared inner = prepare(*k.inner, model);
          if (inner.state.dim() != 2)
            throw Error(ErrorCode::InvalidScore,
                        "gate " + std::string(to_string(k.gate)) +
                            " needs a two-dimensional operand, got dimension " +
                            std::to_string(inner.state.dim()));
          return {apply_unitary(gate(k.gate), inner.state), std::move(inner.heard)};
        } else if constexpr (std::is_same_v<T, score::BellPair>) {
          // Basis order follows tensor(): |1 1>, |1 0>, |0 1>, |0 0>.
          return {bell_state(k.kind, k.first, k.second),
                  {{k.first, k.second}, {k.first}, {k.second}, {}}};
        } else {
          throw Error(ErrorCode::NotMeasurable, "a bar line is not a measurable event");
        }
      },
      e.kind);
}

EventDistribution measure(const Event& e, const Model& model, std::size_t index) {
  Prepared prep = prepare(e, model);
  const Distribution born = born_distribution(prep.state);
  std::vector<Outcome> outcomes;
  outcomes.reserve(born.size());
  for (std::size_t k = 0; k < born.size(); ++k)
    outcomes.push_back({token_of(prep.heard[k]), born[k].p});
  return {index, Distribution(std::move(outcomes)), std::move(prep.heard)};
}

const score::Voice& voice_of(const ScoreAST& ast, std::string_view id) {
  const auto* v = ast.find_voice(id);
  if (!v) throw Error(ErrorCode::UnknownVoice, "no voice named '" + std::string(id) + "'");
  return *v;
}

struct CompiledEvent {
  EventDistribution dist;
  score::Duration duration;
};

std::vector<CompiledEvent> compile(const ScoreAST& ast, const score::Voice& v) {
  std::vector<CompiledEvent> out;
  for (std::size_t k = 0; k < v.events.size(); ++k) {
    const Event& e = v.events[k];
    if (e.is_bar()) continue;
    out.push_back({measure(e, ast.model, k), e.duration.value_or(score::Duration::Quarter)});
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

struct Support {
  std::vector<std::vector<std::size_t>> outcomes;  // per event: indices with p > 0
  std::uint64_t count = 1;
};

Support support_of(const std::vector<CompiledEvent>& events) {
  Support s;
  for (const auto& ce : events) {
    std::vector<std::size_t> live;
    for (std::size_t k = 0; k < ce.dist.dist.size(); ++k)
      if (ce.dist.dist[k].p > 0.0) live.push_back(k);
    s.count = saturating_mul(s.count, live.size());
    s.outcomes.push_back(std::move(live));
  }
  return s;
}

void sort_entries(std::vector<MelodyEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const MelodyEntry& a, const MelodyEntry& b) {
    if (a.p != b.p) return a.p > b.p;
    return a.melody < b.melody;
  });
}

std::vector<MelodyEntry> enumerate(const std::vector<CompiledEvent>& events, const Support& s) {
  std::vector<MelodyEntry> entries;
  entries.reserve(static_cast<std::size_t>(s.count));
  std::vector<std::size_t> digit(events.size(), 0);
  while (true) {
    MelodyEntry entry{{}, 1.0};
    entry.melody.reserve(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
      const Outcome& o = events[e].dist.dist[s.outcomes[e][digit[e]]];
      entry.melody.push_back(o.label);
      entry.p *= o.p;
    }
    entries.push_back(std::move(entry));

    // Odometer step; the last event varies fastest.
    std::size_t e = events.size();
    while (true) {
      if (e == 0) return entries;
      --e;
      if (++digit[e] < s.outcomes[e].size()) break;
      digit[e] = 0;
    }
  }
}

}  // namespace

std::string token_of(const Chord& notes) {
  if (notes.empty()) return std::string(kRest);
  std::string out;
  for (const auto& n : notes) {
    if (!out.empty()) out += '+';
    out += n.to_string();
  }
  return out;
}

StateVector prepared_state(const Event& e, const Model& model) { return prepare(e, model).state; }

EventDistribution event_distribution(const ScoreAST& ast, std::string_view voice,
                                     std::size_t event_index) {
  const auto& v = voice_of(ast, voice);
  if (event_index >= v.events.size())
    throw Error(ErrorCode::IndexOutOfRange, "voice '" + v.id + "' has " +
                                                std::to_string(v.events.size()) +
                                                " events, index " + std::to_string(event_index));
  return measure(v.events[event_index], ast.model, event_index);
}

MelodyDistribution melody_distribution(const ScoreAST& ast, std::string_view voice,
                                       std::uint64_t cap) {
  const auto events = compile(ast, voice_of(ast, voice));
  const Support s = support_of(events);
  if (s.count > cap) throw EnumerationTooLarge(s.count, cap);
  MelodyDistribution md{enumerate(events, s)};
  sort_entries(md.entries);
  return md;
}

MelodyDistribution melody_distribution(const ScoreAST& ast, std::uint64_t cap) {
  if (ast.voices.empty()) throw Error(ErrorCode::InvalidScore, "score has no voices");
  std::vector<std::vector<CompiledEvent>> voices;
  std::vector<Support> supports;
  std::uint64_t total = 1;
  for (const auto& v : ast.voices) {
    voices.push_back(compile(ast, v));
    supports.push_back(support_of(voices.back()));
    total = saturating_mul(total, supports.back().count);
  }
  if (total > cap) throw EnumerationTooLarge(total, cap);

  std::vector<MelodyEntry> joint{MelodyEntry{{}, 1.0}};
  for (std::size_t i = 0; i < voices.size(); ++i) {
    const auto part = enumerate(voices[i], supports[i]);
    std::vector<MelodyEntry> next;
    next.reserve(joint.size() * part.size());
    for (const auto& a : joint)
      for (const auto& b : part) {
        MelodyEntry m{a.melody, a.p * b.p};
        if (i > 0) m.melody.emplace_back("/");
        m.melody.insert(m.melody.end(), b.melody.begin(), b.melody.end());
        next.push_back(std::move(m));
      }
    joint = std::move(next);
  }
  sort_entries(joint);
  return {std::move(joint)};
}

std::string join_melody(const std::vector<std::string>& melody) {
  std::string out;
  bool after_token = false;
  for (const auto& t : melody) {
    if (t == "/") {
      out += '/';
      after_token = false;
      continue;
    }
    if (after_token) out += '-';
    out += t;
    after_token = true;
  }
  return out;
}

std::vector<std::string> PerformanceSample::melody() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < voices.size(); ++i) {
    if (i > 0) out.emplace_back("/");
    for (const auto& e : voices[i].events) out.push_back(e.token);
  }
  return out;
}

std::vector<PerformanceSample> sample_performance(const ScoreAST& ast, std::uint64_t seed,
                                                  std::size_t count) {
  if (count == 0) throw Error(ErrorCode::EmptyInput, "sample count must be at least 1");
  std::vector<std::pair<std::string, std::vector<CompiledEvent>>> voices;
  for (const auto& v : ast.voices) voices.emplace_back(v.id, compile(ast, v));

  std::vector<PerformanceSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    PerformanceSample sample{seed, k, {}, 1.0};
    SeededRng rng = SeededRng::stream(seed, k);
    for (const auto& [id, events] : voices) {
      HeardVoice hv{id, {}};
      hv.events.reserve(events.size());
      for (const auto& ce : events) {
        auto [idx, next] = sample_index(ce.dist.dist, rng);
        rng = next;
        sample.probability *= ce.dist.dist[idx].p;
        hv.events.push_back({ce.dist.heard[idx], ce.duration, ce.dist.dist[idx].label});
      }
      sample.voices.push_back(std::move(hv));
    }
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace qmus::perform
