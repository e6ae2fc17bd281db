#include "rite/ingest.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "rite/error.h"

namespace rite {

bool event_order_less(const NoteEvent& a, const NoteEvent& b) {
  return std::tie(a.onset_sec, a.channel, a.pitch, a.onset_beats, a.duration_sec, a.duration_beats,
                  a.velocity) < std::tie(b.onset_sec, b.channel, b.pitch, b.onset_beats,
                                         b.duration_sec, b.duration_beats, b.velocity);
}

void sort_events(std::vector<NoteEvent>& events) {
  std::stable_sort(events.begin(), events.end(), event_order_less);
}

// ---------------------------------------------------------------------------
// TempoMap

TempoMap::TempoMap(std::uint16_t ticks_per_quarter) : ticks_per_quarter_(ticks_per_quarter) {
  if (ticks_per_quarter == 0) {
    throw Error(ErrorCode::CorruptFile, "division of zero ticks per quarter note");
  }
}

void TempoMap::add_change(std::uint64_t tick, std::uint32_t micros_per_quarter) {
  changes_.emplace_back(tick, micros_per_quarter);
  dirty_ = true;
}

void TempoMap::rebuild() const {
  auto changes = changes_;
  std::stable_sort(changes.begin(), changes.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  segments_.clear();
  segments_.push_back({0, kDefaultMicrosPerQuarter, 0.0});
  for (const auto& [tick, micros] : changes) {
    Segment& last = segments_.back();
    if (tick == last.tick) {
      last.micros_per_quarter = micros;
      continue;
    }
    const double start = last.start_sec + static_cast<double>(tick - last.tick) *
                                              last.micros_per_quarter * 1e-6 / ticks_per_quarter_;
    segments_.push_back({tick, micros, start});
  }
  dirty_ = false;
}

double TempoMap::seconds_at(std::uint64_t tick) const {
  if (dirty_) rebuild();
  auto it = std::upper_bound(segments_.begin(), segments_.end(), tick,
                             [](std::uint64_t t, const Segment& s) { return t < s.tick; });
  const Segment& seg = *std::prev(it);
  return seg.start_sec +
         static_cast<double>(tick - seg.tick) * seg.micros_per_quarter * 1e-6 / ticks_per_quarter_;
}

// ---------------------------------------------------------------------------
// Text note table

namespace {

constexpr std::size_t kColumns = 7;

double parse_number(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::NonNumericField,
                "line " + std::to_string(line_no) + ": '" + std::string(token) + "' is not a number");
  }
  return value;
}

int parse_integral(std::string_view token, std::size_t line_no, int lo, int hi, const char* what) {
  const double value = parse_number(token, line_no);
  if (value != std::floor(value) || value < lo || value > hi) {
    throw Error(ErrorCode::FieldOutOfRange, "line " + std::to_string(line_no) + ": " + what + " '" +
                                                std::string(token) + "' outside " +
                                                std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(value);
}

void append_number(std::string& out, double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
}

}  // namespace

NoteTable parse_note_table(std::istream& in, const std::string& source) {
  NoteTable table;
  table.source = source + " (note-table)";

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
    if (tokens.size() != kColumns) {
      throw Error(ErrorCode::BadColumnCount, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(kColumns) + " fields, got " +
                                                 std::to_string(tokens.size()));
    }

    NoteEvent ev;
    ev.onset_beats = parse_number(tokens[0], line_no);
    ev.duration_beats = parse_number(tokens[1], line_no);
    ev.channel = parse_integral(tokens[2], line_no, 0, 15, "channel");
    ev.pitch = parse_integral(tokens[3], line_no, 0, 127, "pitch");
    ev.velocity = parse_integral(tokens[4], line_no, 0, 127, "velocity");
    ev.onset_sec = parse_number(tokens[5], line_no);
    ev.duration_sec = parse_number(tokens[6], line_no);

    if (ev.duration_beats <= 0.0 || ev.duration_sec <= 0.0) {
      throw Error(ErrorCode::NegativeDuration,
                  "line " + std::to_string(line_no) + ": durations must be positive");
    }
    if (ev.onset_beats < 0.0 || ev.onset_sec < 0.0) {
      throw Error(ErrorCode::FieldOutOfRange,
                  "line " + std::to_string(line_no) + ": onsets must be non-negative");
    }
    table.events.push_back(ev);
  }
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read error in " + source);

  sort_events(table.events);
  return table;
}

NoteTable load_note_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return parse_note_table(in, path.string());
}

void write_note_table(const NoteTable& table, std::ostream& out) {
  std::vector<NoteEvent> events = table.events;
  sort_events(events);

  std::string line;
  for (const auto& ev : events) {
    line.clear();
    append_number(line, ev.onset_beats);
    line += ' ';
    append_number(line, ev.duration_beats);
    line += ' ';
    line += std::to_string(ev.channel);
    line += ' ';
    line += std::to_string(ev.pitch);
    line += ' ';
    line += std::to_string(ev.velocity);
    line += ' ';
    append_number(line, ev.onset_sec);
    line += ' ';
    append_number(line, ev.duration_sec);
    line += '\n';
    out << line;
  }
}

void export_note_table(const NoteTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  write_note_table(table, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

NoteTable load_any(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".mid" || ext == ".midi" || ext == ".smf") return load_smf(path);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() == 4 && std::string_view(magic.data(), 4) == "MThd") {
    return load_smf(path);
  }
  return load_note_table(path);
}

}  // namespace rite
