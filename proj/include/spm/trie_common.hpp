#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spm/types.hpp"

namespace spm {

using NodeId = std::uint32_t;
constexpr NodeId kRootNode = 0;
constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Labels shared by both trie layouts. Root: event 0, freq = number of
// inserted rows, itemset_idx 0, ancestor kNoNode.
struct NodeLabels {
  EventCode event = 0;
  std::uint32_t freq = 0;
  // 1-based ordinal of the data itemset holding this event along its path.
  std::uint32_t itemset_idx = 0;
  // Nearest strict ancestor with the same literal, else the root.
  NodeId ancestor = kNoNode;
};

// Traversal contract the miner and the analysis helpers are written against.
template <class T>
concept TrieModel = requires(const T& t, NodeId n) {
  { t.root() } -> std::same_as<NodeId>;
  { t.labels(n) } -> std::convertible_to<const NodeLabels&>;
  { t.node_count() } -> std::convertible_to<std::size_t>;
  { t.entry_count() } -> std::convertible_to<std::size_t>;
  t.for_each_child(n, [](NodeId) {});
};

namespace detail {

inline void check_row(const std::vector<EventCode>& row) {
  if (row.empty()) throw DatasetError("empty row in flattened dataset");
  if (!starts_itemset(row.front())) throw DatasetError("row does not start with a transformed event");
  for (EventCode c : row)
    if (c == kSeparator) throw DatasetError("separator code is not accepted by trie construction");
}

// Per-sequence construction state: running itemset ordinal and the last
// node seen for each literal on the current insertion path.
class PathLabeler {
 public:
  explicit PathLabeler(Literal alphabet) : last_seen_(static_cast<std::size_t>(alphabet) + 1, kRootNode) {}

  void start_sequence() {
    for (auto lit : touched_) last_seen_[lit] = kRootNode;
    touched_.clear();
    itemset_ = 0;
  }

  // Must be called once per code, before creating/matching the node. The
  // ordinal is bumped before assignment so a transformed event shares the
  // index of the rest of its itemset.
  std::uint32_t itemset_for(EventCode code) {
    if (starts_itemset(code)) ++itemset_;
    return itemset_;
  }

  NodeId ancestor_for(EventCode code) {
    const auto lit = slot(code);
    return last_seen_[lit];
  }

  void record(EventCode code, NodeId node) {
    const auto lit = slot(code);
    if (last_seen_[lit] == kRootNode) touched_.push_back(lit);
    last_seen_[lit] = node;
  }

 private:
  std::size_t slot(EventCode code) {
    const auto lit = static_cast<std::size_t>(literal_of(code));
    if (lit >= last_seen_.size()) last_seen_.resize(lit + 1, kRootNode);
    return lit;
  }

  std::vector<NodeId> last_seen_;
  std::vector<std::size_t> touched_;
  std::uint32_t itemset_ = 0;
};

}  // namespace detail

template <TrieModel Trie>
std::vector<NodeId> children_of(const Trie& t, NodeId n) {
  std::vector<NodeId> out;
  t.for_each_child(n, [&](NodeId c) { out.push_back(c); });
  return out;
}

// Rows ending exactly at n.
template <TrieModel Trie>
std::int64_t terminations(const Trie& t, NodeId n) {
  std::int64_t left = t.labels(n).freq;
  t.for_each_child(n, [&](NodeId c) { left -= t.labels(c).freq; });
  return left;
}

// Emits every stored row, each path repeated terminations(n) times, in
// preorder of the logical trie.
template <TrieModel Trie>
FlatDataset reconstruct(const Trie& t) {
  FlatDataset out;
  std::vector<EventCode> path;
  struct Frame {
    NodeId node;
    std::vector<NodeId> kids;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  auto enter = [&](NodeId n) {
    const auto left = terminations(t, n);
    if (left < 0) throw DatasetError("corrupt trie: children outnumber node frequency");
    for (std::int64_t r = 0; r < left; ++r) out.rows.push_back(path);
    stack.push_back({n, children_of(t, n)});
  };
  enter(t.root());
  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.next == top.kids.size()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const NodeId c = top.kids[top.next++];
    path.push_back(t.labels(c).event);
    enter(c);
  }
  out.rows.erase(std::remove_if(out.rows.begin(), out.rows.end(), [](const auto& r) { return r.empty(); }),
                 out.rows.end());
  out.n_sequences = out.rows.size();
  for (const auto& row : out.rows) {
    out.max_seq_len = std::max(out.max_seq_len, row.size());
    for (EventCode c : row) out.alphabet_size = std::max(out.alphabet_size, literal_of(c));
  }
  return out;
}

// Node counts per depth of the logical trie, root layer first.
template <TrieModel Trie>
std::vector<std::size_t> layer_sizes(const Trie& t) {
  std::vector<std::size_t> sizes;
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto [n, depth] = stack.back();
    stack.pop_back();
    if (sizes.size() <= depth) sizes.resize(depth + 1, 0);
    ++sizes[depth];
    t.for_each_child(n, [&](NodeId c) { stack.emplace_back(c, depth + 1); });
  }
  return sizes;
}

// Sorted (event, freq, itemset_idx, depth) tuples of all non-root nodes.
using LabelTuple = std::tuple<EventCode, std::uint32_t, std::uint32_t, std::size_t>;

template <TrieModel Trie>
std::vector<LabelTuple> label_multiset(const Trie& t) {
  std::vector<LabelTuple> out;
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto [n, depth] = stack.back();
    stack.pop_back();
    if (n != t.root()) {
      const auto& l = t.labels(n);
      out.emplace_back(l.event, l.freq, l.itemset_idx, depth);
    }
    t.for_each_child(n, [&](NodeId c) { stack.emplace_back(c, depth + 1); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Number of root-to-leaf paths.
template <TrieModel Trie>
std::size_t maximal_path_count(const Trie& t) {
  std::size_t leaves = 0;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    bool has_child = false;
    t.for_each_child(n, [&](NodeId c) {
      has_child = true;
      stack.push_back(c);
    });
    if (!has_child && n != t.root()) ++leaves;
  }
  return leaves;
}

}  // namespace spm
