#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spm {

// Signed event encoding used by the flattened datasets and the tries.
// A positive code is an original event; a negative code is the same event
// opening a new itemset. Zero is never a valid event.
using EventCode = std::int32_t;
using Literal = std::int32_t;
using Count = std::uint64_t;

constexpr Literal literal_of(EventCode code) noexcept { return code < 0 ? -code : code; }
constexpr bool starts_itemset(EventCode code) noexcept { return code < 0; }
constexpr EventCode as_transformed(Literal lit) noexcept { return -lit; }

// Separator used by the separator-flattened layout. Lies outside the event
// domain, so it can never collide with a real event.
constexpr EventCode kSeparator = 0;

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Itemset = std::vector<Literal>;
using Sequence = std::vector<Itemset>;

struct StructuredDataset {
  std::vector<Sequence> sequences;

  std::size_t size() const noexcept { return sequences.size(); }
  bool operator==(const StructuredDataset&) const = default;
};

struct FlatDataset {
  std::vector<std::vector<EventCode>> rows;
  // Sequence count of the dataset before any filtering. Support thresholds
  // are always computed against this value.
  std::size_t n_sequences = 0;
  Literal alphabet_size = 0;
  std::size_t max_seq_len = 0;

  std::size_t entry_count() const noexcept {
    std::size_t total = 0;
    for (const auto& row : rows) total += row.size();
    return total;
  }
  bool operator==(const FlatDataset&) const = default;
};

// A sequential pattern: nonempty list of nonempty ascending itemsets.
struct Pattern {
  std::vector<Itemset> itemsets;

  std::size_t event_count() const noexcept {
    std::size_t n = 0;
    for (const auto& is : itemsets) n += is.size();
    return n;
  }

  // Flat signed-code form: first literal of every itemset negated.
  std::vector<EventCode> codes() const {
    std::vector<EventCode> out;
    out.reserve(event_count());
    for (const auto& is : itemsets) {
      for (std::size_t k = 0; k < is.size(); ++k) out.push_back(k == 0 ? as_transformed(is[k]) : is[k]);
    }
    return out;
  }

  static Pattern from_codes(const std::vector<EventCode>& codes) {
    Pattern p;
    for (EventCode c : codes) {
      if (c == 0) throw DatasetError("pattern code 0 is not an event");
      if (starts_itemset(c) || p.itemsets.empty()) p.itemsets.emplace_back();
      p.itemsets.back().push_back(literal_of(c));
    }
    return p;
  }

  // Canonical text, e.g. "1 3 -1 2 -1". Also the SPMF pattern body.
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& is : itemsets) {
      for (Literal l : is) {
        if (!first) os << ' ';
        os << l;
        first = false;
      }
      os << " -1";
    }
    return os.str();
  }

  bool operator==(const Pattern&) const = default;

  // Ordered by event count, then lexicographically by itemsets.
  friend bool operator<(const Pattern& a, const Pattern& b) {
    const auto na = a.event_count(), nb = b.event_count();
    if (na != nb) return na < nb;
    return a.itemsets < b.itemsets;
  }
};

using PatternSet = std::map<Pattern, Count>;

struct MiningParams {
  std::optional<double> theta;
  Count minsup_count = 1;

  // ceil(theta * n) with a small tolerance so that e.g. 0.6 * 5 yields 3,
  // not 4 from floating-point noise. Never below 1.
  static MiningParams from_fraction(double theta, std::size_t n_original) {
    if (!(theta > 0.0) || theta > 1.0) {
      throw std::invalid_argument("minimum support fraction must lie in (0, 1]");
    }
    const double raw = theta * static_cast<double>(n_original);
    const double nearest = std::round(raw);
    double count = std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw) ? nearest : std::ceil(raw);
    if (count < 1.0) count = 1.0;
    return MiningParams{theta, static_cast<Count>(count)};
  }

  static MiningParams from_count(Count minsup) {
    if (minsup == 0) throw std::invalid_argument("minimum support count must be positive");
    return MiningParams{std::nullopt, minsup};
  }
};

}  // namespace spm
