#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "spm/core.hpp"
#include "spm/types.hpp"

namespace spm {

class SpmfParseError : public DatasetError {
 public:
  SpmfParseError(std::size_t line, const std::string& what)
      : DatasetError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// SPMF sequence format: whitespace-separated integers, -1 closes an itemset,
// -2 closes a sequence. Blank lines and lines starting with '#', '%' or '@'
// (SPMF metadata) are skipped. The result is canonicalized.
inline StructuredDataset parse_spmf(std::istream& in) {
  StructuredDataset raw;
  Sequence seq;
  Itemset itemset;
  bool open_sequence = false;
  int prev = 0;
  std::size_t line_no = 0;
  std::size_t open_line = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%' || line[first] == '@') continue;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw SpmfParseError(line_no, "not an integer token '" + tok + "'");
      }
      if (v > 0) {
        if (v > std::numeric_limits<Literal>::max()) throw SpmfParseError(line_no, "event id out of range: " + tok);
        if (!open_sequence) open_line = line_no;
        open_sequence = true;
        itemset.push_back(static_cast<Literal>(v));
      } else if (v == -1) {
        if (!open_sequence) open_line = line_no;
        open_sequence = true;
        seq.push_back(std::move(itemset));
        itemset.clear();
      } else if (v == -2) {
        if (prev != -1) throw SpmfParseError(line_no, "-2 must follow -1");
        raw.sequences.push_back(std::move(seq));
        seq.clear();
        open_sequence = false;
      } else {
        throw SpmfParseError(line_no, "unexpected token '" + tok + "'");
      }
      prev = static_cast<int>(v > 0 ? 1 : v);
    }
  }
  if (open_sequence) throw SpmfParseError(open_line, "sequence not terminated by -2");
  return canonicalize(std::move(raw));
}

inline StructuredDataset parse_spmf(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_spmf(in);
}

inline void write_spmf(const StructuredDataset& d, std::ostream& out) {
  for (const auto& s : d.sequences) {
    for (const auto& is : s) {
      for (Literal l : is) out << l << ' ';
      out << "-1 ";
    }
    out << "-2\n";
  }
}

// Flattened rows as space-separated signed codes, one row per line.
inline void write_flat(const FlatDataset& f, std::ostream& out) {
  for (const auto& row : f.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
}

// One line per pattern: "<itemset> -1 <itemset> -1 #SUP: <n>", in
// PatternSet order (event count, then itemsets lexicographically).
inline void write_patterns(const PatternSet& ps, std::ostream& out) {
  for (const auto& [p, sup] : ps) out << p.to_string() << " #SUP: " << sup << '\n';
  if (!out) throw std::runtime_error("failed writing pattern output");
}

inline std::string patterns_to_string(const PatternSet& ps) {
  std::ostringstream os;
  write_patterns(ps, os);
  return os.str();
}

}  // namespace spm
