#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spm/trie_common.hpp"
#include "spm/types.hpp"

namespace spm {

struct SdNode : NodeLabels {
  std::vector<NodeId> children;
};

// Sequential data trie: one node per distinct flattened prefix, each node
// owning a growable list of its children.
class SdTrie {
 public:
  static SdTrie build(const FlatDataset& f) {
    SdTrie t;
    t.nodes_.emplace_back();
    detail::PathLabeler labeler(f.alphabet_size);
    for (const auto& row : f.rows) {
      detail::check_row(row);
      labeler.start_sequence();
      NodeId cur = kRootNode;
      ++t.nodes_[kRootNode].freq;
      for (EventCode code : row) {
        const std::uint32_t itemset = labeler.itemset_for(code);
        NodeId next = kNoNode;
        for (NodeId c : t.nodes_[cur].children) {
          if (t.nodes_[c].event == code) {
            next = c;
            break;
          }
        }
        if (next != kNoNode) {
          ++t.nodes_[next].freq;
        } else {
          next = static_cast<NodeId>(t.nodes_.size());
          SdNode fresh;
          fresh.event = code;
          fresh.freq = 1;
          fresh.itemset_idx = itemset;
          fresh.ancestor = labeler.ancestor_for(code);
          t.nodes_.push_back(std::move(fresh));
          t.nodes_[cur].children.push_back(next);
        }
        labeler.record(code, next);
        cur = next;
      }
      t.entry_count_ += row.size();
    }
    return t;
  }

  NodeId root() const noexcept { return kRootNode; }
  const SdNode& node(NodeId n) const { return nodes_[n]; }
  const NodeLabels& labels(NodeId n) const { return nodes_[n]; }

  std::span<const NodeId> sd_children(NodeId n) const { return nodes_[n].children; }

  template <class F>
  void for_each_child(NodeId n, F&& f) const {
    for (NodeId c : nodes_[n].children) f(c);
  }

  // Non-root nodes.
  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  std::size_t entry_count() const noexcept { return entry_count_; }
  std::size_t sequence_count() const noexcept { return nodes_[kRootNode].freq; }

 private:
  SdTrie() = default;

  std::vector<SdNode> nodes_;
  std::size_t entry_count_ = 0;
};

static_assert(TrieModel<SdTrie>);

inline SdTrie build_sdtrie(const FlatDataset& f) { return SdTrie::build(f); }
inline FlatDataset reconstruct_sd(const SdTrie& t) { return reconstruct(t); }

}  // namespace spm
