#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spm/trie_common.hpp"
#include "spm/types.hpp"

namespace spm {

enum class ExtensionKind { sequence, itemset };

// Pattern-node pair: terminal nodes of every minimal prefix path that
// contains the pattern.
struct Frontier {
  Pattern pattern;
  std::vector<NodeId> nodes;
};

template <TrieModel Trie>
Count frontier_support(const Trie& t, std::span<const NodeId> nodes) {
  Count s = 0;
  for (NodeId n : nodes) s += t.labels(n).freq;
  return s;
}

template <TrieModel Trie>
Count frontier_support(const Trie& t, const Frontier& fr) {
  return frontier_support(t, std::span<const NodeId>(fr.nodes));
}

// Path state needed by the itemset-extension test.
struct ItemsetMatchState {
  // Every literal of the pattern's last itemset occurs earlier in the
  // candidate's data itemset.
  bool last_itemset_rematched = false;
  // A node between the anchor and the candidate already extends the
  // pattern by the candidate's literal.
  bool extended_on_path = false;
  Literal last_itemset_max = 0;
};

// First-occurrence test for a candidate reached below an anchor of the
// current frontier, from the itemset index of the candidate's ancestor.
inline bool valid_extension(std::uint32_t anchor_itemset, std::uint32_t ancestor_itemset, Literal candidate_literal,
                            ExtensionKind kind, const ItemsetMatchState& st = {}) {
  if (kind == ExtensionKind::sequence) return ancestor_itemset <= anchor_itemset;
  const bool first = ancestor_itemset < anchor_itemset || !st.extended_on_path;
  return first && st.last_itemset_rematched && candidate_literal > st.last_itemset_max;
}

template <TrieModel Trie>
bool valid_extension(const Trie& t, NodeId anchor, NodeId candidate, ExtensionKind kind,
                     const ItemsetMatchState& st = {}) {
  const auto& c = t.labels(candidate);
  return valid_extension(t.labels(anchor).itemset_idx, t.labels(c.ancestor).itemset_idx, literal_of(c.event), kind,
                         st);
}

struct NoFrontierVisitor {
  void operator()(const Pattern&, std::span<const NodeId>) const noexcept {}
};

// Depth-first pattern growth over a frozen trie. For each anchor of a
// frontier the sub-trie is searched in two phases: first the rest of the
// anchor's own data itemset, then everything below the first transformed
// event, where candidates are admitted through valid_extension.
template <TrieModel Trie, class Visitor = NoFrontierVisitor>
class TrieMiner {
 public:
  TrieMiner(const Trie& trie, const MiningParams& params, Visitor visitor = {})
      : trie_(trie), minsup_(params.minsup_count), visitor_(std::move(visitor)) {}

  PatternSet run() {
    result_.clear();
    std::vector<Hit> hits;
    std::vector<NodeId> stack{trie_.root()};
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      trie_.for_each_child(n, [&](NodeId c) {
        const auto& l = trie_.labels(c);
        if (l.ancestor == trie_.root()) hits.push_back({as_transformed(literal_of(l.event)), c});
        stack.push_back(c);
      });
    }
    Pattern pattern;
    expand(pattern, std::move(hits));
    return std::move(result_);
  }

 private:
  struct Hit {
    // Negative: sequence extension by |code|. Positive: itemset extension.
    EventCode code;
    NodeId node;
  };

  struct Frame {
    // kNoNode marks a frame that only clears the path marker of `claim`.
    NodeId node;
    std::uint32_t matched;
    // Literal this node added as an itemset extension, 0 if none. Its path
    // marker is live while the node's sub-trie is searched.
    Literal claim;
    bool below_itemset;
  };

  void expand(Pattern& pattern, std::vector<Hit> hits) {
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.code < b.code; });
    std::vector<std::pair<EventCode, std::vector<NodeId>>> children;
    for (std::size_t lo = 0; lo < hits.size();) {
      std::size_t hi = lo;
      Count support = 0;
      while (hi < hits.size() && hits[hi].code == hits[lo].code) support += trie_.labels(hits[hi++].node).freq;
      if (support >= minsup_) {
        std::vector<NodeId> nodes;
        nodes.reserve(hi - lo);
        for (std::size_t t = lo; t < hi; ++t) nodes.push_back(hits[t].node);
        children.emplace_back(hits[lo].code, std::move(nodes));
      }
      lo = hi;
    }
    hits.clear();
    hits.shrink_to_fit();

    for (auto& [code, nodes] : children) {
      if (starts_itemset(code)) {
        pattern.itemsets.push_back({literal_of(code)});
      } else {
        pattern.itemsets.back().push_back(code);
      }
      result_.emplace(pattern, frontier_support(trie_, std::span<const NodeId>(nodes)));
      visitor_(pattern, std::span<const NodeId>(nodes));
      expand(pattern, scan(pattern, nodes));
      nodes = {};
      if (starts_itemset(code)) {
        pattern.itemsets.pop_back();
      } else {
        pattern.itemsets.back().pop_back();
      }
    }
  }

  unsigned char& marker(Literal lit) {
    const auto slot = static_cast<std::size_t>(lit);
    if (slot >= extended_.size()) extended_.resize(slot + 1, 0);
    return extended_[slot];
  }

  std::vector<Hit> scan(const Pattern& pattern, const std::vector<NodeId>& frontier) {
    const Itemset& last = pattern.itemsets.back();
    const Literal last_max = last.back();
    const auto full = static_cast<std::uint32_t>(last.size());
    std::vector<Hit> hits;
    std::vector<Frame> stack;

    for (NodeId anchor : frontier) {
      const std::uint32_t anchor_itemset = trie_.labels(anchor).itemset_idx;
      stack.push_back({anchor, full, 0, false});
      while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.node == kNoNode) {
          marker(f.claim) = 0;
          continue;
        }
        if (f.claim != 0) {
          marker(f.claim) = 1;
          stack.push_back({kNoNode, 0, f.claim, false});
        }
        trie_.for_each_child(f.node, [&](NodeId c) {
          const auto& l = trie_.labels(c);
          const Literal lit = literal_of(l.event);
          const std::uint32_t ancestor_itemset = trie_.labels(l.ancestor).itemset_idx;
          if (starts_itemset(l.event)) {
            // The first transformed event below the anchor's itemset is always
            // a first occurrence; deeper ones need the ancestor test.
            if (!f.below_itemset ||
                valid_extension(anchor_itemset, ancestor_itemset, lit, ExtensionKind::sequence)) {
              hits.push_back({as_transformed(lit), c});
            }
            stack.push_back({c, lit == last.front() ? 1u : 0u, 0, true});
            return;
          }
          bool claimed = false;
          if (!f.below_itemset) {
            if (lit > last_max && !marker(lit)) {
              hits.push_back({lit, c});
              claimed = true;
            }
          } else {
            const ItemsetMatchState st{f.matched == full, marker(lit) != 0, last_max};
            if (valid_extension(anchor_itemset, ancestor_itemset, lit, ExtensionKind::itemset, st)) {
              hits.push_back({lit, c});
              claimed = true;
            }
            if (valid_extension(anchor_itemset, ancestor_itemset, lit, ExtensionKind::sequence)) {
              hits.push_back({as_transformed(lit), c});
            }
          }
          const std::uint32_t matched =
              f.below_itemset && f.matched < full && lit == last[f.matched] ? f.matched + 1 : f.matched;
          stack.push_back({c, matched, claimed ? lit : 0, f.below_itemset});
        });
      }
    }
    return hits;
  }

  const Trie& trie_;
  Count minsup_;
  Visitor visitor_;
  PatternSet result_;
  std::vector<unsigned char> extended_;
};

template <TrieModel Trie, class Visitor = NoFrontierVisitor>
PatternSet mine_trie(const Trie& t, const MiningParams& params, Visitor visitor = {}) {
  return TrieMiner<Trie, Visitor>(t, params, std::move(visitor)).run();
}

}  // namespace spm
