#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "spm/types.hpp"

namespace spm {

namespace detail {

inline Literal max_literal(const StructuredDataset& d) {
  Literal m = 0;
  for (const auto& s : d.sequences)
    for (const auto& is : s)
      for (Literal l : is) m = std::max(m, l);
  return m;
}

inline void refresh_lengths(FlatDataset& f) {
  f.max_seq_len = 0;
  for (const auto& row : f.rows) f.max_seq_len = std::max(f.max_seq_len, row.size());
}

}  // namespace detail

// Per-literal count of distinct sequences containing the literal, indexed
// directly by literal (index 0 unused).
struct SupportTable {
  std::vector<Count> counts;

  Count of(Literal l) const noexcept {
    return l > 0 && static_cast<std::size_t>(l) < counts.size() ? counts[static_cast<std::size_t>(l)] : 0;
  }
};

// Each itemset's first literal becomes a negative code; the rest stay positive.
inline FlatDataset flatten_transformed(const StructuredDataset& d) {
  FlatDataset f;
  f.rows.reserve(d.sequences.size());
  for (const auto& s : d.sequences) {
    std::vector<EventCode> row;
    for (const auto& is : s)
      for (std::size_t k = 0; k < is.size(); ++k) row.push_back(k == 0 ? as_transformed(is[k]) : is[k]);
    f.rows.push_back(std::move(row));
  }
  f.n_sequences = d.sequences.size();
  f.alphabet_size = detail::max_literal(d);
  detail::refresh_lengths(f);
  return f;
}

// Itemsets joined by kSeparator; no leading or trailing separator. Only the
// tabular miner's separator variant consumes this layout.
inline FlatDataset flatten_separators(const StructuredDataset& d) {
  FlatDataset f;
  f.rows.reserve(d.sequences.size());
  for (const auto& s : d.sequences) {
    std::vector<EventCode> row;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j > 0) row.push_back(kSeparator);
      row.insert(row.end(), s[j].begin(), s[j].end());
    }
    f.rows.push_back(std::move(row));
  }
  f.n_sequences = d.sequences.size();
  f.alphabet_size = detail::max_literal(d);
  detail::refresh_lengths(f);
  return f;
}

inline Sequence unflatten_row(const std::vector<EventCode>& row) {
  Sequence s;
  for (EventCode c : row) {
    if (c == kSeparator) throw DatasetError("separator code in a transformed-event row");
    if (starts_itemset(c)) {
      s.emplace_back();
    } else if (s.empty()) {
      throw DatasetError("row starts with a non-transformed event " + std::to_string(c));
    }
    s.back().push_back(literal_of(c));
  }
  return s;
}

inline StructuredDataset unflatten(const FlatDataset& f) {
  StructuredDataset d;
  d.sequences.reserve(f.rows.size());
  for (const auto& row : f.rows) d.sequences.push_back(unflatten_row(row));
  return d;
}

inline SupportTable event_supports(const FlatDataset& f) {
  SupportTable t;
  t.counts.assign(static_cast<std::size_t>(f.alphabet_size) + 1, 0);
  std::vector<std::size_t> last_row(t.counts.size(), SIZE_MAX);
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    for (EventCode c : f.rows[i]) {
      if (c == kSeparator) continue;
      const auto l = static_cast<std::size_t>(literal_of(c));
      if (l >= t.counts.size()) {
        t.counts.resize(l + 1, 0);
        last_row.resize(l + 1, SIZE_MAX);
      }
      if (last_row[l] != i) {
        last_row[l] = i;
        ++t.counts[l];
      }
    }
  }
  return t;
}

// Removes every occurrence of a literal whose support is below minsup. If an
// itemset loses its opening event, its next surviving event is promoted to a
// transformed code. Rows left empty are dropped; n_sequences is kept.
inline FlatDataset filter_by_support(const FlatDataset& f, Count minsup) {
  const SupportTable sup = event_supports(f);
  FlatDataset out;
  out.n_sequences = f.n_sequences;
  out.alphabet_size = f.alphabet_size;
  out.rows.reserve(f.rows.size());
  for (const auto& row : f.rows) {
    std::vector<EventCode> kept;
    bool pending_start = false;
    for (EventCode c : row) {
      if (c == kSeparator) throw DatasetError("filter_by_support expects transformed-event rows");
      const bool keep = sup.of(literal_of(c)) >= minsup;
      if (starts_itemset(c)) {
        pending_start = !keep;
        if (keep) kept.push_back(c);
      } else if (keep) {
        kept.push_back(pending_start ? as_transformed(c) : c);
        pending_start = false;
      }
    }
    if (!kept.empty()) out.rows.push_back(std::move(kept));
  }
  detail::refresh_lengths(out);
  return out;
}

}  // namespace spm
