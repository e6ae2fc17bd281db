#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rite {

/// One sounding note. Beat coordinates come straight from ticks; second
/// coordinates from the tempo map.
struct NoteEvent {
  double onset_beats = 0.0;
  double duration_beats = 0.0;
  int channel = 0;
  int pitch = 0;
  int velocity = 0;
  double onset_sec = 0.0;
  double duration_sec = 0.0;

  double offset_sec() const { return onset_sec + duration_sec; }
  double offset_beats() const { return onset_beats + duration_beats; }

  bool operator==(const NoteEvent&) const = default;
};

struct IngestDiagnostics {
  std::size_t dangling_notes = 0;     // note-on without note-off, clamped to track end
  std::size_t zero_length_notes = 0;  // dropped
  std::size_t stray_note_offs = 0;    // note-off without a pending note-on
  std::vector<std::string> messages;
};

/// Lowest and highest pitch of the analysed piano reduction. Informational only.
inline constexpr int kReferencePitchLow = 34;
inline constexpr int kReferencePitchHigh = 99;

struct NoteTable {
  std::vector<NoteEvent> events;  // sorted by (onset_sec, channel, pitch)
  std::string source;
  IngestDiagnostics diagnostics;
};

/// Canonical table order: (onset_sec, channel, pitch), remaining fields as
/// tie-breakers so that the order is total.
void sort_events(std::vector<NoteEvent>& events);
bool event_order_less(const NoteEvent& a, const NoteEvent& b);

/// Piecewise-linear tick -> seconds map built from set-tempo events.
class TempoMap {
 public:
  static constexpr std::uint32_t kDefaultMicrosPerQuarter = 500000;  // 120 BPM

  explicit TempoMap(std::uint16_t ticks_per_quarter);

  /// Adds a tempo change. Changes may arrive in any order; later insertions at
  /// the same tick win.
  void add_change(std::uint64_t tick, std::uint32_t micros_per_quarter);

  double seconds_at(std::uint64_t tick) const;
  std::uint16_t ticks_per_quarter() const { return ticks_per_quarter_; }

 private:
  struct Segment {
    std::uint64_t tick;
    std::uint32_t micros_per_quarter;
    double start_sec;
  };
  void rebuild() const;

  std::uint16_t ticks_per_quarter_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> changes_;
  mutable std::vector<Segment> segments_;
  mutable bool dirty_ = true;
};

/// Standard MIDI File, format 0 or 1.
NoteTable parse_smf(std::span<const std::uint8_t> bytes, const std::string& source = "<memory>");
NoteTable load_smf(const std::filesystem::path& path);

/// Seven whitespace-separated columns per line:
/// onset_beats duration_beats channel pitch velocity onset_sec duration_sec.
/// Blank lines and lines starting with '#' are skipped.
NoteTable parse_note_table(std::istream& in, const std::string& source = "<stream>");
NoteTable load_note_table(const std::filesystem::path& path);

void write_note_table(const NoteTable& table, std::ostream& out);
void export_note_table(const NoteTable& table, const std::filesystem::path& path);

/// Dispatches on the "MThd" magic: SMF when present, text note table otherwise.
NoteTable load_any(const std::filesystem::path& path);

}  // namespace rite
