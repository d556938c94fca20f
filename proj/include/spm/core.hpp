#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spm/types.hpp"

namespace spm {

// Sorts every itemset, removes duplicate literals, drops empty itemsets and
// empty sequences. Sequence order is preserved.
inline StructuredDataset canonicalize(StructuredDataset raw) {
  StructuredDataset out;
  out.sequences.reserve(raw.sequences.size());
  for (auto& seq : raw.sequences) {
    Sequence cleaned;
    for (auto& is : seq) {
      for (Literal l : is) {
        if (l <= 0) throw DatasetError("event literal must be positive, got " + std::to_string(l));
      }
      std::sort(is.begin(), is.end());
      is.erase(std::unique(is.begin(), is.end()), is.end());
      if (!is.empty()) cleaned.push_back(std::move(is));
    }
    if (!cleaned.empty()) out.sequences.push_back(std::move(cleaned));
  }
  return out;
}

inline bool is_subset_sorted(const Itemset& small, const Itemset& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Greedy leftmost embedding; optimal for itemset-wise containment.
inline bool is_subsequence(const std::vector<Itemset>& pattern, const Sequence& seq) {
  std::size_t k = 0;
  for (const auto& want : pattern) {
    while (k < seq.size() && !is_subset_sorted(want, seq[k])) ++k;
    if (k == seq.size()) return false;
    ++k;
  }
  return true;
}

inline bool is_subsequence(const Pattern& p, const Sequence& seq) { return is_subsequence(p.itemsets, seq); }

inline Count support_of(const StructuredDataset& d, const Pattern& p) {
  Count n = 0;
  for (const auto& s : d.sequences) n += is_subsequence(p, s) ? 1 : 0;
  return n;
}

// Brute-force reference miner. Breadth-first, one event per level: a pattern
// of length L+1 is only generated from its length-L parent (the pattern with
// its last event removed), and each candidate's support is recounted by
// direct containment tests over the parent's supporting sequences.
inline PatternSet oracle_mine(const StructuredDataset& d, const MiningParams& params) {
  PatternSet result;
  if (d.sequences.empty()) return result;

  std::set<Literal> all_literals;
  for (const auto& s : d.sequences)
    for (const auto& is : s) all_literals.insert(is.begin(), is.end());

  struct Entry {
    Pattern pattern;
    std::vector<std::uint32_t> supporters;
  };

  std::vector<Literal> frequent;
  std::vector<Entry> level;
  std::vector<std::uint32_t> everyone(d.sequences.size());
  for (std::uint32_t i = 0; i < everyone.size(); ++i) everyone[i] = i;

  auto count_into = [&](const Pattern& p, const std::vector<std::uint32_t>& pool) {
    std::vector<std::uint32_t> hits;
    for (auto i : pool)
      if (is_subsequence(p, d.sequences[i])) hits.push_back(i);
    return hits;
  };

  for (Literal l : all_literals) {
    Pattern p{{{l}}};
    auto hits = count_into(p, everyone);
    if (hits.size() >= params.minsup_count) {
      frequent.push_back(l);
      result.emplace(p, hits.size());
      level.push_back({std::move(p), std::move(hits)});
    }
  }

  while (!level.empty()) {
    std::vector<Entry> next;
    for (const auto& [pattern, supporters] : level) {
      for (Literal l : frequent) {
        Pattern q = pattern;
        q.itemsets.push_back({l});
        auto hits = count_into(q, supporters);
        if (hits.size() >= params.minsup_count) {
          result.emplace(q, hits.size());
          next.push_back({std::move(q), std::move(hits)});
        }
      }
      const Literal last_max = pattern.itemsets.back().back();
      for (Literal l : frequent) {
        if (l <= last_max) continue;
        Pattern q = pattern;
        q.itemsets.back().push_back(l);
        auto hits = count_into(q, supporters);
        if (hits.size() >= params.minsup_count) {
          result.emplace(q, hits.size());
          next.push_back({std::move(q), std::move(hits)});
        }
      }
    }
    level = std::move(next);
  }
  return result;
}

}  // namespace spm
