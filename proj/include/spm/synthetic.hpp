#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spm/core.hpp"
#include "spm/types.hpp"

namespace spm::synthetic {

struct RandomShape {
  std::size_t max_sequences = 30;
  Literal alphabet = 6;
  std::size_t max_itemsets = 4;
  std::size_t max_itemset_size = 3;
};

// Uniformly shaped small dataset; sizes drawn uniformly from [1, max].
template <class Rng>
StructuredDataset random_dataset(Rng& rng, const RandomShape& shape) {
  std::uniform_int_distribution<std::size_t> n_dist(1, shape.max_sequences);
  std::uniform_int_distribution<std::size_t> len_dist(1, shape.max_itemsets);
  std::uniform_int_distribution<std::size_t> width_dist(1, shape.max_itemset_size);
  std::uniform_int_distribution<Literal> event_dist(1, shape.alphabet);
  StructuredDataset d;
  const std::size_t n = n_dist(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Sequence s(len_dist(rng));
    for (auto& is : s) {
      const std::size_t w = width_dist(rng);
      for (std::size_t k = 0; k < w; ++k) is.push_back(event_dist(rng));
    }
    d.sequences.push_back(std::move(s));
  }
  return canonicalize(std::move(d));
}

struct ZipfShape {
  std::size_t sequences = 100000;
  Literal alphabet = 100;
  double exponent = 1.0;
  std::size_t max_itemsets = 5;
  std::size_t max_itemset_size = 2;
};

// Events drawn from a Zipf law over 1..alphabet (event 1 most frequent).
template <class Rng>
StructuredDataset zipf_dataset(Rng& rng, const ZipfShape& shape) {
  std::vector<double> weights(static_cast<std::size_t>(shape.alphabet));
  for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), shape.exponent);
  std::discrete_distribution<Literal> event_dist(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> len_dist(1, shape.max_itemsets);
  std::uniform_int_distribution<std::size_t> width_dist(1, shape.max_itemset_size);
  StructuredDataset d;
  d.sequences.reserve(shape.sequences);
  for (std::size_t i = 0; i < shape.sequences; ++i) {
    Sequence s(len_dist(rng));
    for (auto& is : s) {
      const std::size_t w = width_dist(rng);
      for (std::size_t k = 0; k < w; ++k) is.push_back(event_dist(rng) + 1);
    }
    d.sequences.push_back(std::move(s));
  }
  return canonicalize(std::move(d));
}

}  // namespace spm::synthetic
