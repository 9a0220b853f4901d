#include "qmus/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "qmus/error.hpp"
#include "qmus/models.hpp"

namespace qmus::perform {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class ByteWriter {
 public:
  void u8(std::uint8_t b) { bytes_.push_back(b); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void tag(const char* four) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(four[i]));
  }
  void vlq(std::uint32_t v) {
    std::uint8_t buf[5];
    int n = 0;
    buf[n++] = v & 0x7F;
    while (v >>= 7) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
    while (n--) u8(buf[n]);
  }
  void append(const std::vector<std::uint8_t>& other) {
    bytes_.insert(bytes_.end(), other.begin(), other.end());
  }

  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

void chunk(ByteWriter& out, ByteWriter& track) {
  out.tag("MTrk");
  out.u32(static_cast<std::uint32_t>(track.bytes().size()));
  out.append(track.bytes());
}

ByteWriter conductor_track(int tempo_bpm) {
  const auto us = static_cast<std::uint32_t>(std::lround(60'000'000.0 / tempo_bpm));
  ByteWriter t;
  t.vlq(0);
  t.u8(0xFF);
  t.u8(0x51);
  t.u8(0x03);
  t.u8(static_cast<std::uint8_t>(us >> 16));
  t.u8(static_cast<std::uint8_t>(us >> 8));
  t.u8(static_cast<std::uint8_t>(us));
  t.vlq(0);
  t.u8(0xFF);
  t.u8(0x2F);
  t.u8(0x00);
  return t;
}

ByteWriter note_track(const HeardVoice& voice) {
  ByteWriter t;
  std::uint32_t pending = 0;
  for (const auto& e : voice.events) {
    const auto len = static_cast<std::uint32_t>(score::ticks(e.duration));
    if (e.notes.empty()) {
      pending += len;
      continue;
    }
    for (const auto& n : e.notes) {
      t.vlq(pending);
      pending = 0;
      t.u8(0x90);
      t.u8(static_cast<std::uint8_t>(midi_pitch(n)));
      t.u8(kVelocity);
    }
    bool first = true;
    for (const auto& n : e.notes) {
      t.vlq(first ? len : 0);
      first = false;
      t.u8(0x80);
      t.u8(static_cast<std::uint8_t>(midi_pitch(n)));
      t.u8(0);
    }
  }
  t.vlq(pending);
  t.u8(0xFF);
  t.u8(0x2F);
  t.u8(0x00);
  return t;
}

}  // namespace

std::vector<std::uint8_t> render_midi(std::span<const PerformanceSample> samples, int tempo_bpm) {
  if (samples.empty()) throw Error(ErrorCode::EmptyInput, "no performances to render");
  if (tempo_bpm < score::kMinTempo || tempo_bpm > score::kMaxTempo)
    throw Error(ErrorCode::InvalidScore, "tempo " + std::to_string(tempo_bpm) + " out of range");

  std::size_t tracks = 1;
  for (const auto& s : samples) tracks += s.voices.size();
  if (tracks > 0xFFFF) throw Error(ErrorCode::InvalidScore, "too many tracks for one MIDI file");

  ByteWriter out;
  out.tag("MThd");
  out.u32(6);
  out.u16(1);
  out.u16(static_cast<std::uint16_t>(tracks));
  out.u16(kTicksPerQuarter);

  ByteWriter conductor = conductor_track(tempo_bpm);
  chunk(out, conductor);
  for (const auto& s : samples)
    for (const auto& v : s.voices) {
      ByteWriter t = note_track(v);
      chunk(out, t);
    }
  return std::move(out.bytes());
}

std::string render_csv(const MelodyDistribution& md) {
  std::string out = "melody,probability\n";
  for (const auto& e : md.entries) out += join_melody(e.melody) + "," + fmt12(e.p) + "\n";
  return out;
}

std::string render_performance_log(std::span<const PerformanceSample> samples) {
  std::string out;
  for (const auto& s : samples)
    out += std::to_string(s.index) + "," + join_melody(s.melody()) + "," + fmt12(s.probability) + "\n";
  return out;
}

std::string render_text(const score::ScoreAST& ast) {
  std::string out = "model ";
  out += ast.model.kind == score::Model::Kind::Bundled
             ? "bundled " + std::to_string(ast.model.dim)
             : std::string("modes");
  out += ", tempo " + std::to_string(ast.tempo_bpm) + "\n";

  for (const auto& voice : ast.voices) {
    out += "voice " + voice.id + "\n";

    std::set<NoteLabel, std::greater<>> rows;  // highest note first
    std::vector<std::map<NoteLabel, std::string>> columns;
    std::vector<bool> is_bar;
    for (std::size_t k = 0; k < voice.events.size(); ++k) {
      const auto& e = voice.events[k];
      std::map<NoteLabel, std::string> cells;
      if (e.is_bar()) {
        columns.push_back(cells);
        is_bar.push_back(true);
        continue;
      }
      const auto ed = event_distribution(ast, voice.id, k);
      std::map<NoteLabel, double> weight;
      for (std::size_t o = 0; o < ed.dist.size(); ++o)
        for (const auto& n : ed.heard[o]) weight[n] += ed.dist[o].p;
      for (const auto& [n, w] : weight) {
        cells[n] = std::to_string(gray_level_of_occupancy(w).rounded());
        rows.insert(n);
      }
      if (const auto* b = std::get_if<score::BellPair>(&e.kind)) {
        const NoteLabel hi = std::max(b->first, b->second);
        const NoteLabel lo = std::min(b->first, b->second);
        cells[hi] = "/" + cells[hi];
        cells[lo] = "\\" + cells[lo];
      }
      columns.push_back(cells);
      is_bar.push_back(false);
    }
    if (rows.empty()) continue;

    std::size_t label_width = 0;
    for (const auto& n : rows) label_width = std::max(label_width, n.to_string().size() + 1);

    std::vector<std::vector<std::string>> grid;  // [row][column]
    std::vector<std::size_t> width(columns.size(), 1);
    for (const auto& n : rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string cell;
        if (is_bar[c]) {
          cell = "|";
        } else if (auto it = columns[c].find(n); it != columns[c].end()) {
          cell = it->second;
        } else {
          cell = ".";
          const auto& e = voice.events[c];
          if (const auto* b = std::get_if<score::BellPair>(&e.kind)) {
            const NoteLabel hi = std::max(b->first, b->second);
            const NoteLabel lo = std::min(b->first, b->second);
            if (lo < n && n < hi) cell = "|";
          }
        }
        width[c] = std::max(width[c], cell.size());
        line.push_back(std::move(cell));
      }
      grid.push_back(std::move(line));
    }

    std::size_t r = 0;
    for (const auto& n : rows) {
      std::string line = n.to_string() + ":";
      line.append(label_width - line.size() + 1, ' ');
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) line += ' ';
        line.append(width[c] - grid[r][c].size(), ' ');
        line += grid[r][c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
      ++r;
    }
  }
  return out;
}

}  // namespace qmus::perform
