#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "spm/trie_common.hpp"
#include "spm/types.hpp"

namespace spm {

// Word-based memory cost model. Every integer label and every link is one
// machine word. An SDTrie node also pays for the header of its growable
// child list; a tabular row pays for the header of its event list.
namespace cost_model {
inline constexpr std::uint64_t kWordBytes = 8;
inline constexpr std::uint64_t kLabelWords = 4;  // event, freq, itemset index, ancestor
inline constexpr std::uint64_t kDynamicArrayHeaderWords = 3;
inline constexpr std::uint64_t kBinaryLinkWords = 2;  // child, sibling
}  // namespace cost_model

struct TrieStats {
  std::size_t node_count = 0;
  std::size_t entry_count = 0;
  double compression = 0.0;
  std::vector<std::size_t> layer_sizes;
  std::uint64_t est_bytes_tabular = 0;
  std::uint64_t est_bytes_sdtrie = 0;
  std::uint64_t est_bytes_bdtrie = 0;
  // min(N, (2|E|)^m) * m, saturating.
  std::uint64_t node_ceiling = 0;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t node_ceiling(std::uint64_t n, std::uint64_t alphabet, std::uint64_t depth) {
  std::uint64_t power = 1;
  for (std::uint64_t j = 0; j < depth && power < n; ++j) power = saturating_mul(power, 2 * alphabet);
  return saturating_mul(std::min(n, power), depth);
}

template <TrieModel Trie>
std::size_t distinct_literals(const Trie& t) {
  std::set<Literal> seen;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    t.for_each_child(n, [&](NodeId c) {
      seen.insert(literal_of(t.labels(c).event));
      stack.push_back(c);
    });
  }
  return seen.size();
}

}  // namespace detail

template <TrieModel Trie>
TrieStats compute_stats(const Trie& t, const FlatDataset& f) {
  using namespace cost_model;
  TrieStats s;
  s.node_count = t.node_count();
  s.entry_count = f.entry_count();
  s.compression = s.entry_count == 0 ? 0.0 : 1.0 - static_cast<double>(s.node_count) / static_cast<double>(s.entry_count);
  s.layer_sizes = layer_sizes(t);

  const std::uint64_t nodes_with_root = s.node_count + 1;
  s.est_bytes_tabular = (s.entry_count + f.rows.size() * kDynamicArrayHeaderWords) * kWordBytes;
  // Every non-root node occupies one slot in its parent's child list.
  s.est_bytes_sdtrie = (nodes_with_root * (kLabelWords + kDynamicArrayHeaderWords) + s.node_count) * kWordBytes;
  s.est_bytes_bdtrie = nodes_with_root * (kLabelWords + kBinaryLinkWords) * kWordBytes;

  const std::uint64_t depth = s.layer_sizes.size() - 1;
  s.node_ceiling = detail::node_ceiling(t.labels(t.root()).freq, detail::distinct_literals(t), depth);
  return s;
}

// Per-layer and total node-count bounds: |layer j| <= min(N, |layer j-1| * 2|E|)
// and node_count <= min(N, (2|E|)^m) * m.
template <TrieModel Trie>
bool check_layer_bounds(const Trie& t) {
  const auto layers = layer_sizes(t);
  const std::uint64_t n = t.labels(t.root()).freq;
  const std::uint64_t fanout = 2 * detail::distinct_literals(t);
  for (std::size_t j = 1; j < layers.size(); ++j) {
    if (layers[j] > std::min<std::uint64_t>(n, detail::saturating_mul(layers[j - 1], fanout))) return false;
  }
  const std::uint64_t depth = layers.size() - 1;
  return t.node_count() <= detail::node_ceiling(n, fanout / 2, depth);
}

}  // namespace spm
