// Command-line driver: convert / mine / stats / bench / gen over SPMF files.
//
// Exit codes: 0 ok, 1 usage error, 2 runtime error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spm/spm.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

spm::StructuredDataset load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input '" + path + "'");
  return spm::parse_spmf(in);
}

// Writes to `path`, or stdout when path is empty or "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output '" + path + "'");
  write(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

bool parse_switch(const std::string& v, const char* flag) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw UsageError(std::string(flag) + " must be 'on' or 'off'");
}

spm::Flattening parse_flattening(const std::string& v) {
  if (v == "transformed") return spm::Flattening::transformed;
  if (v == "separator") return spm::Flattening::separator;
  throw UsageError("--flatten must be 'transformed' or 'separator'");
}

spm::MinsupSpec parse_minsup(const std::string& v) {
  try {
    return spm::MinsupSpec::parse(v);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class Trie>
nlohmann::json stats_json(const Trie& t, const spm::FlatDataset& flat, const std::string& model) {
  const auto s = spm::compute_stats(t, flat);
  nlohmann::json j;
  j["model"] = model;
  j["sequences"] = flat.rows.size();
  j["nodes"] = s.node_count;
  j["entries"] = s.entry_count;
  j["compression"] = s.compression;
  j["layer_sizes"] = s.layer_sizes;
  j["maximal_paths"] = spm::maximal_path_count(t);
  j["est_bytes_tabular"] = s.est_bytes_tabular;
  j["est_bytes_sdtrie"] = s.est_bytes_sdtrie;
  j["est_bytes_bdtrie"] = s.est_bytes_bdtrie;
  j["node_ceiling"] = s.node_ceiling;
  j["layer_bounds_ok"] = spm::check_layer_bounds(t);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential pattern mining over tabular, SDTrie and BDTrie dataset models"};
  app.require_subcommand(1);

  std::string input, output, minsup = "0.1", model = "bdtrie", filter = "on", flatten = "transformed";
  std::string convert_to = "transformed";
  std::string report_path;

  auto* convert = app.add_subcommand("convert", "Canonicalize and flatten an SPMF file");
  convert->add_option("input", input, "SPMF input file")->required();
  convert->add_option("--to", convert_to, "spmf | transformed | separator")
      ->check(CLI::IsMember({"spmf", "transformed", "separator"}));
  convert->add_option("-o,--output", output, "Output file (default stdout)");

  auto* mine = app.add_subcommand("mine", "Mine frequent sequential patterns");
  mine->add_option("input", input, "SPMF input file")->required();
  mine->add_option("--minsup", minsup, "Fraction in (0,1] (e.g. 0.6) or absolute count (e.g. 3)")->required();
  mine->add_option("--model", model, "oracle | tabular | sdtrie | bdtrie")
      ->check(CLI::IsMember({"oracle", "tabular", "sdtrie", "bdtrie"}));
  mine->add_option("--filter", filter, "Support-based filtering before mining: on | off");
  mine->add_option("--flatten", flatten, "transformed | separator (tabular only)");
  mine->add_option("-o,--output", output, "Pattern output file (default stdout)");
  mine->add_option("--report", report_path, "Write the run report JSON here instead of stderr");

  auto* stats = app.add_subcommand("stats", "Trie size, compression and layer statistics");
  stats->add_option("input", input, "SPMF input file")->required();
  stats->add_option("--model", model, "sdtrie | bdtrie")->check(CLI::IsMember({"sdtrie", "bdtrie"}));
  stats->add_option("--minsup", minsup, "Threshold used when --filter on");
  stats->add_option("--filter", filter, "on | off (default off)");
  stats->add_option("-o,--output", output, "Output file (default stdout)");

  std::string minsup_list = "0.1,0.08,0.06,0.04,0.02,0.005", models = "tabular,sdtrie,bdtrie";
  std::size_t repeat = 1, threads = 1;
  bool in_process = false;
  auto* bench = app.add_subcommand("bench", "Run a threshold x model matrix and emit CSV");
  bench->add_option("input", input, "SPMF input file")->required();
  bench->add_option("--minsup-list", minsup_list, "Comma-separated thresholds");
  bench->add_option("--models", models, "Comma-separated models");
  bench->add_option("--repeat", repeat, "Repetitions per cell (median reported)")->check(CLI::PositiveNumber);
  bench->add_option("--threads", threads, "Cells run concurrently; 1 = single-core protocol")
      ->check(CLI::PositiveNumber);
  bench->add_option("--filter", filter, "on | off");
  bench->add_option("--flatten", flatten, "transformed | separator");
  bench->add_flag("--in-process", in_process, "Do not fork per run (peak memory becomes process-wide)");
  bench->add_option("-o,--output", output, "CSV output file (default stdout)");

  spm::synthetic::ZipfShape shape;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Write a synthetic Zipf-distributed SPMF dataset");
  gen->add_option("--sequences", shape.sequences, "Number of sequences");
  gen->add_option("--alphabet", shape.alphabet, "Number of distinct events");
  gen->add_option("--exponent", shape.exponent, "Zipf exponent");
  gen->add_option("--max-itemsets", shape.max_itemsets, "Max itemsets per sequence");
  gen->add_option("--max-itemset-size", shape.max_itemset_size, "Max events per itemset");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*convert) {
      const auto d = load(input);
      with_output(output, [&](std::ostream& out) {
        if (convert_to == "spmf") {
          spm::write_spmf(d, out);
        } else if (convert_to == "separator") {
          spm::write_flat(spm::flatten_separators(d), out);
        } else {
          spm::write_flat(spm::flatten_transformed(d), out);
        }
      });
    } else if (*mine) {
      const auto spec = parse_minsup(minsup);
      const bool use_filter = parse_switch(filter, "--filter");
      const auto flattening = parse_flattening(flatten);
      if (flattening == spm::Flattening::separator && model != "tabular") {
        throw UsageError("--flatten separator requires --model tabular");
      }
      const auto d = load(input);
      const auto run = spm::run_model(d, spm::parse_model(model), spec, use_filter, flattening);
      with_output(output, [&](std::ostream& out) { spm::write_patterns(run.patterns, out); });
      const std::string line = run.report.to_json().dump();
      if (report_path.empty()) {
        std::cerr << line << '\n';
      } else {
        with_output(report_path, [&](std::ostream& out) { out << line << '\n'; });
      }
    } else if (*stats) {
      const bool use_filter = parse_switch(stats->count("--filter") ? filter : "off", "--filter");
      const auto d = load(input);
      auto flat = spm::flatten_transformed(d);
      if (use_filter) flat = spm::filter_by_support(flat, parse_minsup(minsup).resolve(d.size()).minsup_count);
      const auto j = model == "sdtrie" ? stats_json(spm::build_sdtrie(flat), flat, model)
                                       : stats_json(spm::build_bdtrie(flat), flat, "bdtrie");
      with_output(output, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
    } else if (*bench) {
      spm::BenchOptions opt;
      for (const auto& m : split_list(minsup_list)) opt.minsups.push_back(parse_minsup(m));
      for (const auto& m : split_list(models)) {
        try {
          opt.models.push_back(spm::parse_model(m));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      if (opt.minsups.empty() || opt.models.empty()) throw UsageError("empty --minsup-list or --models");
      opt.repeat = repeat;
      opt.threads = threads;
      opt.filter = parse_switch(filter, "--filter");
      opt.flattening = parse_flattening(flatten);
      opt.isolate = !in_process;
      const auto d = load(input);
      const auto rows = spm::run_bench(d, opt);
      with_output(output, [&](std::ostream& out) { spm::write_bench_csv(rows, out); });
    } else if (*gen) {
      if (shape.alphabet <= 0 || shape.max_itemsets == 0 || shape.max_itemset_size == 0) {
        throw UsageError("gen sizes must be positive");
      }
      std::mt19937_64 rng(seed);
      const auto d = spm::synthetic::zipf_dataset(rng, shape);
      with_output(output, [&](std::ostream& out) { spm::write_spmf(d, out); });
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
