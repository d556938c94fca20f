#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "spm/trie_common.hpp"
#include "spm/types.hpp"

namespace spm {

// Binary data trie node: the labels plus exactly one child link and one
// sibling link. The logical children of n are child(n) followed by the
// sibling chain of child(n).
struct BdNode : NodeLabels {
  NodeId child = kNoNode;
  NodeId sibling = kNoNode;
};

static_assert(std::is_trivially_copyable_v<BdNode>);
static_assert(sizeof(BdNode) == 6 * sizeof(std::uint32_t), "BdNode must stay a fixed six-field record");

class BdTrie {
 public:
  static BdTrie build(const FlatDataset& f) {
    BdTrie t;
    t.nodes_.emplace_back();
    detail::PathLabeler labeler(f.alphabet_size);
    for (const auto& row : f.rows) {
      detail::check_row(row);
      labeler.start_sequence();
      NodeId cur = kRootNode;
      ++t.nodes_[kRootNode].freq;
      for (EventCode code : row) {
        const std::uint32_t itemset = labeler.itemset_for(code);
        NodeId next = t.nodes_[cur].child;
        if (next == kNoNode) {
          next = t.make_node(code, itemset, labeler.ancestor_for(code));
          t.nodes_[cur].child = next;
        } else {
          while (t.nodes_[next].event != code && t.nodes_[next].sibling != kNoNode) next = t.nodes_[next].sibling;
          if (t.nodes_[next].event == code) {
            ++t.nodes_[next].freq;
          } else {
            const NodeId fresh = t.make_node(code, itemset, labeler.ancestor_for(code));
            t.nodes_[next].sibling = fresh;
            next = fresh;
          }
        }
        labeler.record(code, next);
        cur = next;
      }
      t.entry_count_ += row.size();
    }
    return t;
  }

  NodeId root() const noexcept { return kRootNode; }
  const BdNode& node(NodeId n) const { return nodes_[n]; }
  const NodeLabels& labels(NodeId n) const { return nodes_[n]; }

  template <class F>
  void for_each_child(NodeId n, F&& f) const {
    for (NodeId c = nodes_[n].child; c != kNoNode; c = nodes_[c].sibling) f(c);
  }

  std::vector<NodeId> logical_children(NodeId n) const { return children_of(*this, n); }

  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  std::size_t entry_count() const noexcept { return entry_count_; }
  std::size_t sequence_count() const noexcept { return nodes_[kRootNode].freq; }

  // Sequence modelled by a root-anchored path of child/sibling arcs. A node
  // contributes its event if it is left through a child arc or ends the
  // path; nodes left through a sibling arc are skipped.
  std::vector<EventCode> tf_b(std::span<const NodeId> path) const {
    if (path.empty() || path.front() != kRootNode) throw std::invalid_argument("tf_b path must start at the root");
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const NodeId from = path[j], to = path[j + 1];
      if (to >= nodes_.size() || (nodes_[from].child != to && (j == 0 || nodes_[from].sibling != to))) {
        throw std::invalid_argument("tf_b path is not connected by child/sibling arcs");
      }
    }
    std::vector<EventCode> out;
    for (std::size_t j = 1; j < path.size(); ++j) {
      const bool last = j + 1 == path.size();
      if (last || nodes_[path[j]].child == path[j + 1]) out.push_back(nodes_[path[j]].event);
    }
    return out;
  }

 private:
  BdTrie() = default;

  NodeId make_node(EventCode code, std::uint32_t itemset, NodeId ancestor) {
    BdNode n;
    n.event = code;
    n.freq = 1;
    n.itemset_idx = itemset;
    n.ancestor = ancestor;
    nodes_.push_back(n);
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  std::vector<BdNode> nodes_;
  std::size_t entry_count_ = 0;
};

static_assert(TrieModel<BdTrie>);

inline BdTrie build_bdtrie(const FlatDataset& f) { return BdTrie::build(f); }
inline FlatDataset reconstruct_bd(const BdTrie& t) { return reconstruct(t); }

}  // namespace spm
