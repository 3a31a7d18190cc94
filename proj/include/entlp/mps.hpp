#pragma once

// NETLIB-style MPS reader.  Lines are parsed by the fixed-format column
// positions first (fields at 2-3, 5-12, 15-22, 25-36, 40-47, 50-61), with a
// whitespace-token fallback for free-format files.  The fixed path matters:
// several NETLIB files leave the RHS/RANGES set name blank, which a naive
// tokenizer misreads.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace entlp {

struct MpsParseError : std::runtime_error {
  explicit MpsParseError(std::size_t line, const std::string& what)
      : std::runtime_error("mps parse error, line " + std::to_string(line) + ": " + what) {}
};

struct MpsRowDecl {
  std::string name;
  char sense;  // 'N', 'E', 'L', 'G'
};

struct MpsEntry {
  std::string column, row;
  double value;
};

struct MpsBound {
  std::string type;  // UP LO FX FR MI PL BV
  std::string column;
  double value = 0.0;
  bool has_value = false;
};

struct RawMps {
  std::string name;
  std::vector<MpsRowDecl> rows;  // declaration order, objective included
  std::vector<std::string> columns;
  std::vector<MpsEntry> entries;  // appearance order, zero values dropped
  std::map<std::string, double> rhs;
  std::map<std::string, double> ranges;
  std::vector<MpsBound> bounds;
  std::string objective_row;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return columns.size(); }
  std::size_t entry_count() const { return entries.size(); }
};

namespace mps_detail {

inline std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// fixed-format field spans, 0-indexed [begin, end)
inline std::string field(const std::string& line, std::size_t b, std::size_t e) {
  if (b >= line.size()) return "";
  return strip(line.substr(b, std::min(e, line.size()) - b));
}

inline std::vector<std::string> fixed_fields(const std::string& line) {
  return {field(line, 1, 3),   field(line, 4, 12),  field(line, 14, 22),
          field(line, 24, 36), field(line, 39, 47), field(line, 49, 61)};
}

inline std::vector<std::string> ws_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline std::optional<double> parse_number(std::string s) {
  for (char& c : s)
    if (c == 'D' || c == 'd') c = 'E';  // Fortran exponents in old files
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

}  // namespace mps_detail

inline RawMps parse_mps(std::istream& in) {
  using namespace mps_detail;
  RawMps out;
  enum Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds, Done };
  Section section = None;
  std::map<std::string, char> row_sense;
  std::map<std::string, bool> column_seen;
  std::string line;
  std::size_t lineno = 0;

  // (row, value) pairs of one data line; `named` says whether a leading set
  // name is expected before the pairs (RHS/RANGES yes, COLUMNS after the
  // column name)
  auto read_pairs = [&](const std::vector<std::string>& f, std::size_t first,
                        std::vector<std::pair<std::string, double>>& pairs) -> bool {
    for (std::size_t i = first; i + 1 < f.size() || i < f.size(); i += 2) {
      if (i >= f.size() || f[i].empty()) break;
      if (i + 1 >= f.size()) return false;
      auto v = parse_number(f[i + 1]);
      if (!v) return false;
      pairs.emplace_back(f[i], *v);
    }
    return !pairs.empty();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    if (strip(line).empty()) continue;

    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      auto toks = ws_tokens(line);
      const std::string& head = toks[0];
      if (head == "NAME") {
        out.name = field(line, 14, 22);
        if (out.name.empty() && toks.size() > 1) out.name = toks[1];
        section = Name;
      } else if (head == "ROWS") {
        section = Rows;
      } else if (head == "COLUMNS") {
        section = Columns;
      } else if (head == "RHS") {
        section = Rhs;
      } else if (head == "RANGES") {
        section = Ranges;
      } else if (head == "BOUNDS") {
        section = Bounds;
      } else if (head == "ENDATA") {
        section = Done;
        break;
      } else {
        throw MpsParseError(lineno, "unknown section '" + head + "'");
      }
      continue;
    }

    auto ff = fixed_fields(line);
    auto wt = ws_tokens(line);

    switch (section) {
      case Rows: {
        std::string sense = ff[0], name = ff[1];
        if (sense.empty() || name.empty()) {
          if (wt.size() < 2) throw MpsParseError(lineno, "malformed row declaration");
          sense = wt[0];
          name = wt[1];
        }
        if (sense.size() != 1 || std::string("NELG").find(sense[0]) == std::string::npos)
          throw MpsParseError(lineno, "unknown row sense '" + sense + "'");
        if (row_sense.count(name))
          throw MpsParseError(lineno, "duplicate row name '" + name + "'");
        row_sense[name] = sense[0];
        out.rows.push_back({name, sense[0]});
        if (sense[0] == 'N' && out.objective_row.empty()) out.objective_row = name;
        break;
      }
      case Columns: {
        std::string col;
        std::vector<std::pair<std::string, double>> pairs;
        // fixed format first
        col = ff[1];
        bool ok = !col.empty() && read_pairs(ff, 2, pairs);
        if (!ok) {
          pairs.clear();
          if (wt.size() >= 3 && wt.size() % 2 == 1) {
            col = wt[0];
            ok = true;
            for (std::size_t i = 1; i + 1 < wt.size(); i += 2) {
              auto v = parse_number(wt[i + 1]);
              if (!v) { ok = false; break; }
              pairs.emplace_back(wt[i], *v);
            }
          }
        }
        if (!ok || pairs.empty()) {
          if (wt.size() >= 2 && (wt[1] == "'MARKER'" || (wt.size() >= 3 && wt[2] == "'INTORG'")))
            throw MpsParseError(lineno, "integrality unsupported");
          throw MpsParseError(lineno, "malformed column entry");
        }
        if (!column_seen.count(col)) {
          column_seen[col] = true;
          out.columns.push_back(col);
        }
        for (auto& [row, value] : pairs) {
          if (!row_sense.count(row))
            throw MpsParseError(lineno, "column entry references undeclared row '" + row + "'");
          if (value == 0.0) continue;  // dropped at parse time
          out.entries.push_back({col, row, value});
        }
        break;
      }
      case Rhs:
      case Ranges: {
        std::vector<std::pair<std::string, double>> pairs;
        bool ok = read_pairs(ff, 2, pairs);
        if (!ok) {
          pairs.clear();
          // free format: optional leading set name, then (row, value) pairs
          std::size_t first = (wt.size() % 2 == 1) ? 1 : 0;
          ok = wt.size() >= 2;
          for (std::size_t i = first; ok && i + 1 < wt.size(); i += 2) {
            auto v = parse_number(wt[i + 1]);
            if (!v) { ok = false; break; }
            pairs.emplace_back(wt[i], *v);
          }
        }
        if (!ok || pairs.empty()) throw MpsParseError(lineno, "malformed data line");
        for (auto& [row, value] : pairs) {
          if (!row_sense.count(row))
            throw MpsParseError(lineno, (section == Rhs ? std::string("RHS") : std::string("RANGES")) +
                                            " for undeclared row '" + row + "'");
          auto& table = (section == Rhs) ? out.rhs : out.ranges;
          table[row] = value;
        }
        break;
      }
      case Bounds: {
        std::string type = ff[0], col = ff[2], valstr = ff[3];
        if (type.empty() || col.empty()) {
          if (wt.size() < 2) throw MpsParseError(lineno, "malformed bound");
          type = wt[0];
          bool needs_value = (type == "UP" || type == "LO" || type == "FX" || type == "BV");
          if (needs_value) {
            if (wt.size() == 4) { col = wt[2]; valstr = wt[3]; }
            else if (wt.size() == 3) { col = wt[1]; valstr = wt[2]; }
            else throw MpsParseError(lineno, "malformed bound");
          } else {
            col = (wt.size() >= 3) ? wt[2] : wt[1];
            valstr.clear();
          }
        }
        static const std::vector<std::string> kTypes = {"UP", "LO", "FX", "FR", "MI", "PL", "BV"};
        bool known = false;
        for (auto& t : kTypes) known = known || (t == type);
        if (!known) throw MpsParseError(lineno, "unknown bound type '" + type + "'");
        if (!column_seen.count(col))
          throw MpsParseError(lineno, "bound references undeclared column '" + col + "'");
        MpsBound b;
        b.type = type;
        b.column = col;
        if (!valstr.empty()) {
          auto v = parse_number(valstr);
          if (!v) throw MpsParseError(lineno, "malformed bound value '" + valstr + "'");
          b.value = *v;
          b.has_value = true;
        }
        out.bounds.push_back(b);
        break;
      }
      case Name:
      case None:
      case Done:
        throw MpsParseError(lineno, "data line outside any section");
    }
  }

  if (out.objective_row.empty())
    throw MpsParseError(lineno, "no N row to use as objective");
  if (out.columns.empty()) throw MpsParseError(lineno, "no columns");
  for (auto& [row, v] : out.ranges)
    if (row == out.objective_row)
      throw MpsParseError(lineno, "RANGES entry on objective row");
  return out;
}

inline RawMps parse_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_mps(in);
}

inline RawMps parse_mps_string(const std::string& text) {
  std::istringstream in(text);
  return parse_mps(in);
}

}  // namespace entlp
