// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "running_example.hpp"

using namespace spm;
using namespace spm::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

int g_failed = 0;

void report(int id, const std::string& title, const Check& c, double seconds) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << seconds << " s)\n";
  for (const auto& f : c.failures) std::cout << "    " << f << '\n';
  if (!c.ok()) ++g_failed;
}

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  report(id, title, c, std::chrono::duration<double>(Clock::now() - start).count());
}

std::vector<std::vector<EventCode>> sorted_rows(std::vector<std::vector<EventCode>> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Randomized pool shared by criteria 2, 4, 7 and 8.
struct Instance {
  StructuredDataset data;
  FlatDataset flat;
  std::vector<Count> thresholds;
};

std::vector<Instance> instance_pool() {
  std::mt19937_64 rng(20240601);
  std::vector<Instance> pool;
  for (int i = 0; i < 200; ++i) {
    Instance in;
    in.data = synthetic::random_dataset(rng, {30, 6, 4, 3});
    in.flat = flatten_transformed(in.data);
    const Count half = (in.data.size() + 1) / 2;
    in.thresholds = {1, 2, 3, half};
    pool.push_back(std::move(in));
  }
  return pool;
}

using TrieFrontiers = std::map<Pattern, Count>;  // pattern -> node count, checked against freq sum

template <class Trie>
std::map<Pattern, std::pair<std::size_t, Count>> trie_frontiers(const Trie& t, Count minsup) {
  std::map<Pattern, std::pair<std::size_t, Count>> out;
  mine_trie(t, MiningParams::from_count(minsup), [&](const Pattern& p, std::span<const NodeId> nodes) {
    out[p] = {nodes.size(), frontier_support(t, nodes)};
  });
  return out;
}

std::map<Pattern, std::size_t> tabular_frontiers(const FlatDataset& f, Count minsup) {
  std::map<Pattern, std::size_t> out;
  mine_tabular(f, MiningParams::from_count(minsup),
               [&](const Pattern& p, std::span<const PositionPair> pos) { out[p] = pos.size(); });
  return out;
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  const auto pool = instance_pool();

  run(1, "running-example goldens", [](Check& c) {
    const auto start = Clock::now();
    const auto flat = running_flat();
    c.expect(flat.rows == std::vector<std::vector<EventCode>>{{-1, 2, -1, -2}, {-1, 2, 3, -3}, {-1, -2},
                                                            {-1, 3, -1, 3}, {-1, 2, 3}},
             "flattened rows differ");
    const auto filtered = filter_by_support(flat, MiningParams::from_fraction(0.8, 5).minsup_count);
    c.expect(filtered.rows ==
                 std::vector<std::vector<EventCode>>{{-1, 2, -1, -2}, {-1, 2}, {-1, -2}, {-1, -1}, {-1, 2}},
             "filtered rows differ");
    const auto sd = build_sdtrie(flat);
    const auto bd = build_bdtrie(flat);
    c.expect(sd.node_count() == 10 && bd.node_count() == 10, "expected 10 nodes");
    const std::vector<EventCode> events{-1, 2, -1, -2, 3, -3, -2, 3, -1, 3};
    const std::vector<std::uint32_t> freqs{5, 3, 1, 1, 2, 1, 1, 1, 1, 1};
    const std::vector<NodeId> ancestors{0, 0, n1, n2, 0, n5, 0, 0, n1, n8};
    for (NodeId n = 1; n <= 10 && sd.node_count() == 10; ++n) {
      const auto& l = sd.labels(n);
      c.expect(l.event == events[n - 1], "event of n" + std::to_string(n));
      c.expect(l.freq == freqs[n - 1], "freq of n" + std::to_string(n));
      c.expect(l.ancestor == ancestors[n - 1], "ancestor of n" + std::to_string(n));
    }
    c.expect(maximal_path_count(sd) == 4 && maximal_path_count(bd) == 4, "expected 4 maximal paths");
    c.expect(std::chrono::duration<double>(Clock::now() - start).count() < 1.0, "slower than 1 s");
  });

  run(2, "oracle equivalence over 200 random datasets", [&](Check& c) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& in = pool[i];
      const auto sd = build_sdtrie(in.flat);
      const auto bd = build_bdtrie(in.flat);
      for (Count k : in.thresholds) {
        const auto params = MiningParams::from_count(k);
        const auto want = oracle_mine(in.data, params);
        const std::string tag = " instance " + std::to_string(i) + " minsup " + std::to_string(k);
        c.expect(mine_tabular(in.flat, params) == want, "tabular" + tag);
        c.expect(mine_trie(sd, params) == want, "sdtrie" + tag);
        c.expect(mine_trie(bd, params) == want, "bdtrie" + tag);
        const auto filtered = filter_by_support(in.flat, k);
        c.expect(oracle_mine(unflatten(filtered), params) == want, "filtered oracle" + tag);
        c.expect(mine_tabular(filtered, params) == want, "filtered tabular" + tag);
        c.expect(mine_trie(build_sdtrie(filtered), params) == want, "filtered sdtrie" + tag);
        c.expect(mine_trie(build_bdtrie(filtered), params) == want, "filtered bdtrie" + tag);
      }
    }
  });

  run(3, "support of <{a},{c}> is 2 from every miner", [](Check& c) {
    const auto target = pat({{a}, {spm::testing::c}});
    const auto params = MiningParams::from_count(1);
    const auto flat = running_flat();
    c.expect(support_of(running_example(), target) == 2, "direct support");
    c.expect(oracle_mine(running_example(), params).at(target) == 2, "oracle");
    c.expect(mine_tabular(flat, params).at(target) == 2, "tabular");
    c.expect(mine_tabular_separated(flatten_separators(running_example()), params).at(target) == 2,
             "tabular (separator layout)");
    c.expect(mine_trie(build_sdtrie(flat), params).at(target) == 2, "sdtrie");
    c.expect(mine_trie(build_bdtrie(flat), params).at(target) == 2, "bdtrie");
  });

  run(4, "trie frontier never exceeds tabular frontier; freq sum equals pair count", [&](Check& c) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& in = pool[i];
      for (bool filter : {false, true}) {
        for (Count k : in.thresholds) {
          const auto flat = filter ? filter_by_support(in.flat, k) : in.flat;
          const auto tab = tabular_frontiers(flat, k);
          const auto sd = trie_frontiers(build_sdtrie(flat), k);
          const auto bd = trie_frontiers(build_bdtrie(flat), k);
          const std::string tag = " instance " + std::to_string(i) + " minsup " + std::to_string(k);
          c.expect(sd.size() == tab.size() && bd.size() == tab.size(), "pattern sets differ" + tag);
          for (const auto& [p, pairs] : tab) {
            for (const auto* fr : {&sd, &bd}) {
              const auto it = fr->find(p);
              if (it == fr->end()) {
                c.expect(false, "missing frontier for " + p.to_string() + tag);
                continue;
              }
              c.expect(it->second.first <= pairs, "frontier larger than pairs for " + p.to_string() + tag);
              c.expect(it->second.second == pairs, "freq sum differs for " + p.to_string() + tag);
            }
          }
        }
      }
    }
  });

  run(5, "SDTrie and BDTrie structurally equivalent; layer bounds hold", [&](Check& c) {
    const auto check = [&](const FlatDataset& f, const std::string& tag) {
      const auto sd = build_sdtrie(f);
      const auto bd = build_bdtrie(f);
      c.expect(sd.node_count() == bd.node_count(), "node_count" + tag);
      c.expect(layer_sizes(sd) == layer_sizes(bd), "layer_sizes" + tag);
      c.expect(label_multiset(sd) == label_multiset(bd), "labels" + tag);
      c.expect(check_layer_bounds(sd) && check_layer_bounds(bd), "layer bounds" + tag);
    };
    check(running_flat(), " running example");
    for (std::size_t i = 0; i < pool.size(); ++i) {
      check(pool[i].flat, " instance " + std::to_string(i));
      for (Count k : pool[i].thresholds) check(filter_by_support(pool[i].flat, k), " filtered " + std::to_string(i));
    }
  });

  run(6, "compression metric", [](Check& c) {
    const auto flat = running_flat();
    c.expect(std::abs(compute_stats(build_sdtrie(flat), flat).compression - (1.0 - 10.0 / 17.0)) <= 1e-9,
             "running example");
    c.expect(std::abs(compute_stats(build_bdtrie(flat), flat).compression - (1.0 - 10.0 / 17.0)) <= 1e-9,
             "running example (bdtrie)");
    for (std::size_t n : {1u, 2u, 7u, 50u}) {
      FlatDataset same;
      same.rows.assign(n, {-2, 3, -1});
      same.n_sequences = n;
      const double want = 1.0 - 1.0 / static_cast<double>(n);
      c.expect(std::abs(compute_stats(build_sdtrie(same), same).compression - want) <= 1e-9,
               "full sharing N=" + std::to_string(n));
      c.expect(std::abs(compute_stats(build_bdtrie(same), same).compression - want) <= 1e-9,
               "full sharing (bdtrie) N=" + std::to_string(n));

      FlatDataset disjoint;
      for (std::size_t e = 1; e <= n; ++e) disjoint.rows.push_back({-static_cast<EventCode>(e), 1});
      disjoint.n_sequences = n;
      c.expect(std::abs(compute_stats(build_sdtrie(disjoint), disjoint).compression) <= 1e-9,
               "no sharing N=" + std::to_string(n));
      c.expect(std::abs(compute_stats(build_bdtrie(disjoint), disjoint).compression) <= 1e-9,
               "no sharing (bdtrie) N=" + std::to_string(n));
    }
  });

  run(7, "round trips", [&](Check& c) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& in = pool[i];
      const std::string tag = " instance " + std::to_string(i);
      c.expect(unflatten(in.flat).sequences == in.data.sequences, "unflatten" + tag);
      const auto want = sorted_rows(in.flat.rows);
      c.expect(sorted_rows(reconstruct(build_sdtrie(in.flat)).rows) == want, "sdtrie reconstruct" + tag);
      c.expect(sorted_rows(reconstruct(build_bdtrie(in.flat)).rows) == want, "bdtrie reconstruct" + tag);
      std::ostringstream os;
      write_spmf(in.data, os);
      c.expect(parse_spmf(os.str()).sequences == in.data.sequences, "spmf text" + tag);
    }
  });

  run(8, "filtering before mining does not change the result", [&](Check& c) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& in = pool[i];
      for (Count k : in.thresholds) {
        const auto params = MiningParams::from_count(k);
        const auto filtered = filter_by_support(in.flat, k);
        const std::string tag = " instance " + std::to_string(i) + " minsup " + std::to_string(k);
        c.expect(filtered.n_sequences == in.flat.n_sequences, "N changed" + tag);
        c.expect(mine_tabular(filtered, params) == mine_tabular(in.flat, params), "tabular" + tag);
        c.expect(mine_trie(build_bdtrie(filtered), params) == mine_trie(build_bdtrie(in.flat), params),
                 "bdtrie" + tag);
      }
      // Fractional thresholds resolve against the original N.
      const auto params = MiningParams::from_fraction(0.3, in.data.size());
      c.expect(run_model(in.data, Model::sdtrie, MinsupSpec{0.3, 0}, true).patterns ==
                   mine_trie(build_sdtrie(in.flat), params),
               "fractional threshold instance " + std::to_string(i));
    }
  });

  run(9, "desk-scale benchmark, 1e5 Zipf sequences over 100 events", [](Check& c) {
    std::mt19937_64 rng(7);
    const auto d = synthetic::zipf_dataset(rng, {});
    c.expect(d.size() == 100000, "dataset size");
    BenchOptions opt;
    opt.minsups = {MinsupSpec::parse("0.1"), MinsupSpec::parse("0.02")};
    opt.models = {Model::oracle, Model::tabular, Model::sdtrie, Model::bdtrie};
    opt.repeat = 1;
    const auto rows = run_bench(d, opt);
    c.expect(rows.size() == 8, "expected 8 rows");
    std::map<Count, std::size_t> count_per_threshold;
    for (const auto& r : rows) {
      c.expect(r.status == "ok", r.model + ": " + r.status);
      const auto [it, fresh] = count_per_threshold.emplace(r.minsup_count, r.pattern_count);
      c.expect(fresh || it->second == r.pattern_count, r.model + " pattern count differs");
      c.expect(r.pattern_count > 0, r.model + " found no patterns");
    }
    c.expect(count_per_threshold.size() == 2, "expected two thresholds");

    std::ostringstream os;
    write_bench_csv(rows, os);
    std::cout << os.str();
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    c.expect(line == kBenchCsvHeader, "csv header");
    const auto columns = std::count(line.begin(), line.end(), ',') + 1;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      c.expect(std::count(line.begin(), line.end(), ',') + 1 == columns, "csv row width: " + line);
    }
    c.expect(n == rows.size(), "csv row count");
  });

  std::cout << (g_failed == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failed) + " CRITERIA FAILED") << '\n';
  return g_failed == 0 ? 0 : 1;
}
