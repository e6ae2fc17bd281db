#include <algorithm>
#include <deque>
#include <fstream>
#include <iterator>
#include <map>
#include <string_view>

#include "rite/error.h"
#include "rite/ingest.h"

namespace rite {

namespace {

struct RawNote {
  std::uint64_t on_tick;
  std::uint64_t off_tick;
  int channel;
  int pitch;
  int velocity;
  bool dangling;
};

struct TrackResult {
  std::vector<RawNote> notes;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> tempo_changes;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string_view context)
      : bytes_(bytes), context_(context) {}

  bool at_end() const { return pos_ >= bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint8_t u8() {
    require(1);
    return bytes_[pos_++];
  }
  std::uint8_t peek() {
    require(1);
    return bytes_[pos_];
  }
  std::uint16_t u16() {
    require(2);
    const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    require(4);
    const std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                            (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
    pos_ += 4;
    return v;
  }
  std::uint32_t varint() {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8();
      value = (value << 7) | (b & 0x7F);
      if ((b & 0x80) == 0) return value;
    }
    fail("variable-length quantity longer than 4 bytes");
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    require(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::string_view tag() {
    auto s = take(4);
    return {reinterpret_cast<const char*>(s.data()), 4};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::CorruptFile,
                std::string(context_) + " at byte " + std::to_string(pos_) + ": " + what);
  }

 private:
  void require(std::size_t n) const {
    if (remaining() < n) fail("unexpected end of data");
  }

  std::span<const std::uint8_t> bytes_;
  std::string_view context_;
  std::size_t pos_ = 0;
};

TrackResult parse_track(std::span<const std::uint8_t> data, std::size_t track_index,
                        IngestDiagnostics& diag) {
  const std::string context = "track " + std::to_string(track_index);
  ByteReader in(data, context);
  TrackResult result;

  // (channel, pitch) -> FIFO of pending (tick, velocity)
  std::map<std::pair<int, int>, std::deque<std::pair<std::uint64_t, int>>> pending;

  std::uint64_t tick = 0;
  std::uint8_t running = 0;

  while (!in.at_end()) {
    tick += in.varint();
    std::uint8_t status = in.peek();
    if (status & 0x80) {
      in.u8();
    } else {
      if (running == 0) in.fail("data byte without running status");
      status = running;
    }

    if (status == 0xFF) {
      running = 0;
      const std::uint8_t type = in.u8();
      const std::uint32_t len = in.varint();
      auto payload = in.take(len);
      if (type == 0x51) {
        if (len != 3) in.fail("set-tempo event with length " + std::to_string(len));
        const std::uint32_t micros = (std::uint32_t{payload[0]} << 16) |
                                     (std::uint32_t{payload[1]} << 8) | payload[2];
        if (micros == 0) in.fail("set-tempo of zero microseconds");
        result.tempo_changes.emplace_back(tick, micros);
      } else if (type == 0x2F) {
        break;
      }
      continue;
    }
    if (status == 0xF0 || status == 0xF7) {
      running = 0;
      in.take(in.varint());
      continue;
    }
    if (status >= 0xF0) in.fail("unexpected system message in file");

    running = status;
    const int kind = status & 0xF0;
    const int channel = status & 0x0F;
    const bool two_data = kind != 0xC0 && kind != 0xD0;
    const std::uint8_t d1 = in.u8();
    const std::uint8_t d2 = two_data ? in.u8() : 0;
    if ((d1 | d2) & 0x80) in.fail("data byte with high bit set");

    const bool note_on = kind == 0x90 && d2 > 0;
    const bool note_off = kind == 0x80 || (kind == 0x90 && d2 == 0);
    if (note_on) {
      pending[{channel, d1}].emplace_back(tick, d2);
    } else if (note_off) {
      auto& queue = pending[{channel, d1}];
      if (queue.empty()) {
        ++diag.stray_note_offs;
        continue;
      }
      auto [on_tick, velocity] = queue.front();
      queue.pop_front();
      result.notes.push_back({on_tick, tick, channel, d1, velocity, false});
    }
  }

  for (auto& [key, queue] : pending) {
    for (auto [on_tick, velocity] : queue) {
      result.notes.push_back({on_tick, tick, key.first, key.second, velocity, true});
    }
  }
  return result;
}

}  // namespace

NoteTable parse_smf(std::span<const std::uint8_t> bytes, const std::string& source) {
  ByteReader in(bytes, source);
  if (bytes.size() < 4 || in.tag() != "MThd") {
    throw Error(ErrorCode::CorruptFile, source + ": missing MThd header");
  }
  const std::uint32_t header_len = in.u32();
  if (header_len < 6) in.fail("MThd chunk shorter than 6 bytes");
  auto header = in.take(header_len);
  const std::uint16_t format = static_cast<std::uint16_t>((header[0] << 8) | header[1]);
  const std::uint16_t ntracks = static_cast<std::uint16_t>((header[2] << 8) | header[3]);
  const std::uint16_t division = static_cast<std::uint16_t>((header[4] << 8) | header[5]);

  if (format == 2) throw Error(ErrorCode::UnsupportedFormat, source + ": SMF format 2");
  if (format > 2) in.fail("unknown SMF format " + std::to_string(format));
  if (division & 0x8000) {
    throw Error(ErrorCode::UnsupportedFormat, source + ": SMPTE time division");
  }

  NoteTable table;
  table.source = source + " (smf format " + std::to_string(format) + ")";
  TempoMap tempo(division);

  std::vector<TrackResult> tracks;
  while (tracks.size() < ntracks) {
    if (in.remaining() < 8) in.fail("header announces " + std::to_string(ntracks) + " tracks, found " +
                                    std::to_string(tracks.size()));
    const std::string_view id = in.tag();
    const std::uint32_t len = in.u32();
    auto body = in.take(len);
    if (id != "MTrk") continue;  // unknown chunks are skipped
    tracks.push_back(parse_track(body, tracks.size(), table.diagnostics));
  }

  for (const auto& track : tracks) {
    for (auto [tick, micros] : track.tempo_changes) tempo.add_change(tick, micros);
  }

  const double tpq = division;
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    for (const auto& raw : tracks[t].notes) {
      if (raw.dangling) {
        ++table.diagnostics.dangling_notes;
        table.diagnostics.messages.push_back(
            "DanglingNote: track " + std::to_string(t) + " channel " + std::to_string(raw.channel) +
            " pitch " + std::to_string(raw.pitch) + " at tick " + std::to_string(raw.on_tick) +
            " clamped to end of track");
      }
      if (raw.off_tick <= raw.on_tick) {
        ++table.diagnostics.zero_length_notes;
        continue;
      }
      NoteEvent ev;
      ev.onset_beats = static_cast<double>(raw.on_tick) / tpq;
      ev.duration_beats = static_cast<double>(raw.off_tick - raw.on_tick) / tpq;
      ev.channel = raw.channel;
      ev.pitch = raw.pitch;
      ev.velocity = raw.velocity;
      ev.onset_sec = tempo.seconds_at(raw.on_tick);
      ev.duration_sec = tempo.seconds_at(raw.off_tick) - ev.onset_sec;
      table.events.push_back(ev);
    }
  }
  sort_events(table.events);
  return table;
}

NoteTable load_smf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_smf(bytes, path.string());
}

}  // namespace rite
