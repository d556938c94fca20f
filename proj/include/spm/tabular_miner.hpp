#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spm/types.hpp"

namespace spm {

// (row, position) of the end of the shortest row prefix containing a pattern.
struct PositionPair {
  std::uint32_t seq_index = 0;
  std::uint32_t pos_index = 0;
  bool operator==(const PositionPair&) const = default;
};

struct TabularFrontier {
  Pattern pattern;
  std::vector<PositionPair> positions;
};

inline Count frontier_size_tabular(const TabularFrontier& fr) noexcept { return fr.positions.size(); }

struct NoTabularVisitor {
  void operator()(const Pattern&, std::span<const PositionPair>) const noexcept {}
};

namespace layout {

// Itemset starts are marked by negative codes.
struct Transformed {
  static constexpr bool has_separators = false;
  static constexpr bool opens_itemset(EventCode c, bool /*after_separator*/) noexcept { return c < 0; }
};

// Itemset starts are the first event after a kSeparator code.
struct Separated {
  static constexpr bool has_separators = true;
  static constexpr bool opens_itemset(EventCode, bool after_separator) noexcept { return after_separator; }
};

}  // namespace layout

// Pseudo-projection miner over a flattened table. Each frontier keeps at most
// one position per row; extension happens by a single forward scan from
// each stored position.
template <class Layout, class Visitor = NoTabularVisitor>
class TabularMiner {
 public:
  TabularMiner(const FlatDataset& data, const MiningParams& params, Visitor visitor = {})
      : data_(data), minsup_(params.minsup_count), visitor_(std::move(visitor)) {
    validate();
    Literal max_lit = data_.alphabet_size;
    for (const auto& row : data_.rows)
      for (EventCode c : row) max_lit = std::max(max_lit, literal_of(c));
    seen_seq_.assign(static_cast<std::size_t>(max_lit) + 1, 0);
    seen_item_.assign(static_cast<std::size_t>(max_lit) + 1, 0);
  }

  PatternSet run() {
    result_.clear();
    std::vector<Hit> hits;
    for (std::uint32_t i = 0; i < data_.rows.size(); ++i) {
      const auto& row = data_.rows[i];
      const auto stamp = next_stamp();
      for (std::uint32_t j = 0; j < row.size(); ++j) {
        const EventCode c = row[j];
        if (c == kSeparator) continue;
        const auto lit = static_cast<std::size_t>(literal_of(c));
        if (seen_seq_[lit] == stamp) continue;
        seen_seq_[lit] = stamp;
        hits.push_back({as_transformed(literal_of(c)), {i, j}});
      }
    }
    Pattern pattern;
    expand(pattern, std::move(hits));
    return std::move(result_);
  }

 private:
  struct Hit {
    // Negative: sequence extension by |code|. Positive: itemset extension.
    EventCode code;
    PositionPair pos;
  };

  void validate() const {
    for (const auto& row : data_.rows) {
      if (row.empty()) throw DatasetError("empty row in flattened dataset");
      for (EventCode c : row) {
        if (c == kSeparator && !Layout::has_separators) {
          throw DatasetError("separator code found; use the separator-layout tabular miner");
        }
      }
      if constexpr (!Layout::has_separators) {
        if (!starts_itemset(row.front())) throw DatasetError("row does not start with a transformed event");
      } else {
        if (row.front() == kSeparator || row.back() == kSeparator) {
          throw DatasetError("separator-layout row has a leading or trailing separator");
        }
      }
    }
  }

  std::uint32_t next_stamp() {
    if (++stamp_ == 0) {
      std::fill(seen_seq_.begin(), seen_seq_.end(), 0);
      std::fill(seen_item_.begin(), seen_item_.end(), 0);
      stamp_ = 1;
    }
    return stamp_;
  }

  // Groups hits by extension code and recurses on every frequent one.
  void expand(Pattern& pattern, std::vector<Hit> hits) {
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.code < b.code; });
    std::vector<std::pair<EventCode, std::vector<PositionPair>>> children;
    for (std::size_t lo = 0; lo < hits.size();) {
      std::size_t hi = lo;
      while (hi < hits.size() && hits[hi].code == hits[lo].code) ++hi;
      if (hi - lo >= minsup_) {
        std::vector<PositionPair> pos;
        pos.reserve(hi - lo);
        for (std::size_t t = lo; t < hi; ++t) pos.push_back(hits[t].pos);
        children.emplace_back(hits[lo].code, std::move(pos));
      }
      lo = hi;
    }
    hits.clear();
    hits.shrink_to_fit();

    for (auto& [code, positions] : children) {
      if (starts_itemset(code)) {
        pattern.itemsets.push_back({literal_of(code)});
      } else {
        pattern.itemsets.back().push_back(code);
      }
      result_.emplace(pattern, positions.size());
      visitor_(pattern, std::span<const PositionPair>(positions));
      expand(pattern, scan(pattern, positions));
      positions = {};
      if (starts_itemset(code)) {
        pattern.itemsets.pop_back();
      } else {
        pattern.itemsets.back().pop_back();
      }
    }
  }

  std::vector<Hit> scan(const Pattern& pattern, const std::vector<PositionPair>& positions) {
    const Itemset& last = pattern.itemsets.back();
    const Literal last_max = last.back();
    std::vector<Hit> hits;
    for (const PositionPair& at : positions) {
      const auto& row = data_.rows[at.seq_index];
      const auto stamp = next_stamp();
      bool same_itemset = true;
      bool after_separator = false;
      std::size_t matched = last.size();
      for (std::uint32_t t = at.pos_index + 1; t < row.size(); ++t) {
        const EventCode c = row[t];
        if (c == kSeparator) {
          after_separator = true;
          continue;
        }
        const Literal lit = literal_of(c);
        const auto slot = static_cast<std::size_t>(lit);
        const bool opens = Layout::opens_itemset(c, after_separator);
        after_separator = false;
        if (opens) {
          same_itemset = false;
          matched = lit == last.front() ? 1 : 0;
          if (seen_seq_[slot] != stamp) {
            seen_seq_[slot] = stamp;
            hits.push_back({as_transformed(lit), {at.seq_index, t}});
          }
          continue;
        }
        if (same_itemset) {
          // Still inside the anchor's itemset: every later literal is a
          // first-occurrence itemset extension.
          if (lit > last_max && seen_item_[slot] != stamp) {
            seen_item_[slot] = stamp;
            hits.push_back({lit, {at.seq_index, t}});
          }
          continue;
        }
        if (matched == last.size() && lit > last_max && seen_item_[slot] != stamp) {
          seen_item_[slot] = stamp;
          hits.push_back({lit, {at.seq_index, t}});
        }
        if (seen_seq_[slot] != stamp) {
          seen_seq_[slot] = stamp;
          hits.push_back({as_transformed(lit), {at.seq_index, t}});
        }
        if (matched < last.size() && lit == last[matched]) ++matched;
      }
    }
    return hits;
  }

  const FlatDataset& data_;
  Count minsup_;
  Visitor visitor_;
  PatternSet result_;
  std::vector<std::uint32_t> seen_seq_;
  std::vector<std::uint32_t> seen_item_;
  std::uint32_t stamp_ = 0;
};

template <class Visitor = NoTabularVisitor>
PatternSet mine_tabular(const FlatDataset& f, const MiningParams& params, Visitor visitor = {}) {
  return TabularMiner<layout::Transformed, Visitor>(f, params, std::move(visitor)).run();
}

// Same miner over the separator-flattened layout (see flatten_separators).
template <class Visitor = NoTabularVisitor>
PatternSet mine_tabular_separated(const FlatDataset& f, const MiningParams& params, Visitor visitor = {}) {
  return TabularMiner<layout::Separated, Visitor>(f, params, std::move(visitor)).run();
}

}  // namespace spm
