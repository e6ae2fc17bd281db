#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "rite/error.h"
#include "rite/tonality.h"

namespace rite {

namespace {

constexpr std::string_view kRomans[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"};

int parse_roman(std::string_view token) {
  for (std::size_t i = 0; i < std::size(kRomans); ++i) {
    if (kRomans[i] == token) return static_cast<int>(i) + 1;
  }
  return 0;
}

struct WeightGroup {
  int weight;
  std::vector<int> degrees;
};

Mode make_mode(std::string name, std::vector<int> intervals, const std::vector<WeightGroup>& groups) {
  Mode mode{std::move(name), std::move(intervals), {}};
  mode.degree_weights.assign(mode.intervals.size() + 1, 0);
  for (const auto& group : groups) {
    for (int degree : group.degrees) mode.degree_weights.at(degree - 1) = group.weight;
  }
  return mode;
}

void validate(const Mode& mode) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidCatalog, "mode '" + mode.name + "': " + why);
  };
  if (mode.name.empty()) fail("empty name");
  if (mode.intervals.empty()) fail("no intervals");
  for (std::size_t i = 0; i < mode.intervals.size(); ++i) {
    if (mode.intervals[i] < 1 || mode.intervals[i] > 11) fail("interval outside 1..11");
    if (i > 0 && mode.intervals[i] <= mode.intervals[i - 1]) fail("intervals not strictly increasing");
  }
  if (mode.degree_weights.size() != mode.intervals.size() + 1) fail("weight count != degree count");
  for (std::size_t d = 0; d < mode.degree_weights.size(); ++d) {
    if (mode.degree_weights[d] <= 0) fail("degree " + roman_numeral(static_cast<int>(d) + 1) + " has no weight");
  }
}

}  // namespace

std::string roman_numeral(int degree) {
  if (degree < 1 || degree > static_cast<int>(std::size(kRomans))) return std::to_string(degree);
  return std::string(kRomans[degree - 1]);
}

ModeCatalog::ModeCatalog(std::vector<Mode> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    validate(modes_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (modes_[j].name == modes_[i].name) {
        throw Error(ErrorCode::InvalidCatalog, "duplicate mode '" + modes_[i].name + "'");
      }
    }
  }
}

const ModeCatalog& ModeCatalog::builtin() {
  // "minor" shares aeolian's pitch content; its weights follow the ionian
  // (tonal-function) pattern so that it scores differently from aeolian.
  static const ModeCatalog catalog(std::vector<Mode>{
      make_mode("ionian_major", {2, 4, 5, 7, 9, 11}, {{5, {1, 4, 5}}, {3, {3, 6}}, {1, {2, 7}}}),
      make_mode("dorian", {2, 3, 5, 7, 9, 10}, {{5, {1, 5, 7}}, {3, {3, 4}}, {1, {2, 6}}}),
      make_mode("phrygian", {1, 3, 5, 7, 8, 10}, {{5, {1, 2, 5}}, {3, {3, 6}}, {1, {4, 7}}}),
      make_mode("lydian", {2, 4, 6, 7, 9, 11}, {{5, {1, 2, 5}}, {3, {4, 7}}, {1, {3, 6}}}),
      make_mode("mixolydian", {2, 4, 5, 7, 9, 10}, {{5, {1, 4, 7}}, {3, {5, 6}}, {1, {2, 3}}}),
      make_mode("aeolian", {2, 3, 5, 7, 8, 10}, {{5, {1, 3, 6}}, {3, {5, 7}}, {1, {2, 4}}}),
      make_mode("minor", {2, 3, 5, 7, 8, 10}, {{5, {1, 4, 5}}, {3, {3, 6}}, {1, {2, 7}}}),
      make_mode("locrian", {1, 3, 5, 6, 8, 10}, {{5, {1, 2, 5}}, {3, {4, 7}}, {1, {3, 6}}}),
      make_mode("whole_tone", {2, 4, 6, 8, 10}, {{5, {4, 5, 6}}, {3, {1}}, {1, {2, 3}}}),
      make_mode("octatonic1", {1, 3, 4, 6, 7, 9, 10}, {{5, {3, 5, 6}}, {3, {1}}, {1, {2, 4, 7, 8}}}),
      make_mode("octatonic2", {2, 3, 5, 6, 8, 9, 11}, {{5, {2, 3, 5}}, {3, {8}}, {1, {1, 4, 6, 7}}}),
  });
  return catalog;
}

std::optional<std::size_t> ModeCatalog::find(std::string_view name) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].name == name) return i;
  }
  return std::nullopt;
}

// Format:
//   mode = <name>
//   intervals = <semitones above tonic>
//   weight_<w> = <roman degrees carrying weight w>
// '#' starts a comment line. A new "mode" key opens the next entry.
ModeCatalog ModeCatalog::parse(std::istream& in) {
  struct Pending {
    std::string name;
    std::vector<int> intervals;
    std::vector<WeightGroup> groups;
    bool has_intervals = false;
  };
  std::vector<Pending> pending;

  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidCatalog, "line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");

    std::istringstream key_stream(line.substr(0, eq));
    std::string key;
    key_stream >> key;
    std::istringstream values(line.substr(eq + 1));

    if (key == "mode") {
      Pending p;
      if (!(values >> p.name)) fail("mode without a name");
      pending.push_back(std::move(p));
      continue;
    }
    if (pending.empty()) fail("'" + key + "' before any 'mode' entry");
    Pending& cur = pending.back();

    if (key == "intervals") {
      for (std::string tok; values >> tok;) {
        try {
          std::size_t used = 0;
          const int v = std::stoi(tok, &used);
          if (used != tok.size()) fail("bad interval '" + tok + "'");
          cur.intervals.push_back(v);
        } catch (const std::logic_error&) {
          fail("bad interval '" + tok + "'");
        }
      }
      cur.has_intervals = true;
    } else if (key.rfind("weight_", 0) == 0) {
      WeightGroup group{0, {}};
      try {
        group.weight = std::stoi(key.substr(7));
      } catch (const std::logic_error&) {
        fail("bad weight key '" + key + "'");
      }
      for (std::string tok; values >> tok;) {
        const int degree = parse_roman(tok);
        if (degree == 0) fail("bad degree '" + tok + "'");
        group.degrees.push_back(degree);
      }
      cur.groups.push_back(std::move(group));
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  std::vector<Mode> modes;
  for (auto& p : pending) {
    if (!p.has_intervals) throw Error(ErrorCode::InvalidCatalog, "mode '" + p.name + "' has no intervals");
    Mode mode{p.name, p.intervals, std::vector<int>(p.intervals.size() + 1, 0)};
    for (const auto& group : p.groups) {
      for (int degree : group.degrees) {
        if (degree > mode.degree_count()) {
          throw Error(ErrorCode::InvalidCatalog,
                      "mode '" + p.name + "': degree " + roman_numeral(degree) + " beyond scale");
        }
        if (mode.degree_weights[degree - 1] != 0) {
          throw Error(ErrorCode::InvalidCatalog,
                      "mode '" + p.name + "': degree " + roman_numeral(degree) + " weighted twice");
        }
        mode.degree_weights[degree - 1] = group.weight;
      }
    }
    modes.push_back(std::move(mode));
  }
  return ModeCatalog(std::move(modes));
}

ModeCatalog ModeCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return parse(in);
}

std::string ModeCatalog::format() const {
  std::ostringstream out;
  out << "# Mode catalog: intervals are semitones above the tonic; weight_<w> lists\n"
      << "# the scale degrees (I = tonic) that score w points per note occurrence.\n";
  for (const auto& mode : modes_) {
    out << "\nmode = " << mode.name << "\nintervals =";
    for (int i : mode.intervals) out << ' ' << i;
    out << '\n';

    std::vector<int> weights = mode.degree_weights;
    std::sort(weights.begin(), weights.end(), std::greater<>());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    for (int w : weights) {
      out << "weight_" << w << " =";
      for (std::size_t d = 0; d < mode.degree_weights.size(); ++d) {
        if (mode.degree_weights[d] == w) out << ' ' << roman_numeral(static_cast<int>(d) + 1);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace rite
