#pragma once

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>
#define SPM_HAVE_FORK 1
#endif

#include "json.hpp"
#include "spm/bdtrie.hpp"
#include "spm/core.hpp"
#include "spm/preprocess.hpp"
#include "spm/sdtrie.hpp"
#include "spm/stats.hpp"
#include "spm/tabular_miner.hpp"
#include "spm/trie_miner.hpp"

namespace spm {

enum class Model { oracle, tabular, sdtrie, bdtrie };
enum class Flattening { transformed, separator };

inline std::string_view model_name(Model m) {
  switch (m) {
    case Model::oracle: return "oracle";
    case Model::tabular: return "tabular";
    case Model::sdtrie: return "sdtrie";
    case Model::bdtrie: return "bdtrie";
  }
  return "?";
}

inline Model parse_model(std::string_view s) {
  for (Model m : {Model::oracle, Model::tabular, Model::sdtrie, Model::bdtrie})
    if (model_name(m) == s) return m;
  throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

// Minimum support as given on the command line: a fraction containing a
// decimal point (0.6, 1.0) or an absolute count (3).
struct MinsupSpec {
  std::optional<double> fraction;
  Count count = 0;

  static MinsupSpec parse(std::string_view s) {
    const std::string text(s);
    std::size_t used = 0;
    MinsupSpec spec;
    try {
      if (text.find_first_of(".eE") != std::string::npos) {
        const double v = std::stod(text, &used);
        if (used != text.size() || !(v > 0.0) || v > 1.0) throw std::invalid_argument("range");
        spec.fraction = v;
      } else {
        const long long v = std::stoll(text, &used);
        if (used != text.size() || v <= 0) throw std::invalid_argument("range");
        spec.count = static_cast<Count>(v);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("minsup must be a fraction in (0, 1] or a positive count, got '" + text + "'");
    }
    return spec;
  }

  MiningParams resolve(std::size_t n_original) const {
    return fraction ? MiningParams::from_fraction(*fraction, n_original) : MiningParams::from_count(count);
  }
};

struct RunReport {
  std::string model;
  std::optional<double> theta;
  Count minsup_count = 0;
  std::size_t pattern_count = 0;
  double wall_time_ms = 0.0;
  std::uint64_t peak_memory_bytes = 0;
  std::optional<std::size_t> node_count;
  std::optional<double> compression;
  std::string status = "ok";

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["model"] = model;
    j["theta"] = theta ? nlohmann::json(*theta) : nlohmann::json(nullptr);
    j["minsup_count"] = minsup_count;
    j["patterns"] = pattern_count;
    j["wall_ms"] = wall_time_ms;
    j["peak_bytes"] = peak_memory_bytes;
    j["nodes"] = node_count ? nlohmann::json(*node_count) : nlohmann::json(nullptr);
    j["compression"] = compression ? nlohmann::json(*compression) : nlohmann::json(nullptr);
    j["status"] = status;
    return j;
  }

  static RunReport from_json(const nlohmann::json& j) {
    RunReport r;
    r.model = j.at("model").get<std::string>();
    if (!j.at("theta").is_null()) r.theta = j.at("theta").get<double>();
    r.minsup_count = j.at("minsup_count").get<Count>();
    r.pattern_count = j.at("patterns").get<std::size_t>();
    r.wall_time_ms = j.at("wall_ms").get<double>();
    r.peak_memory_bytes = j.at("peak_bytes").get<std::uint64_t>();
    if (!j.at("nodes").is_null()) r.node_count = j.at("nodes").get<std::size_t>();
    if (!j.at("compression").is_null()) r.compression = j.at("compression").get<double>();
    r.status = j.at("status").get<std::string>();
    return r;
  }
};

// Max resident set size of this process so far; coarse and platform
// dependent (0 where unavailable).
inline std::uint64_t peak_rss_bytes() {
#ifdef SPM_HAVE_FORK
  rusage ru{};
  if (getrusage(RUSAGE_SELF, &ru) != 0) return 0;
#ifdef __APPLE__
  return static_cast<std::uint64_t>(ru.ru_maxrss);
#else
  return static_cast<std::uint64_t>(ru.ru_maxrss) * 1024;
#endif
#else
  return 0;
#endif
}

struct RunOutput {
  PatternSet patterns;
  RunReport report;
};

// flatten -> optional filter (threshold against the original N) -> build
// model -> mine. Timing covers all of these steps.
inline RunOutput run_model(const StructuredDataset& d, Model model, const MinsupSpec& minsup, bool filter,
                           Flattening flattening = Flattening::transformed) {
  if (flattening == Flattening::separator && model != Model::tabular) {
    throw std::invalid_argument("separator flattening is only supported by the tabular model");
  }
  const MiningParams params = minsup.resolve(d.size());
  RunOutput out;
  out.report.model = std::string(model_name(model));
  out.report.theta = params.theta;
  out.report.minsup_count = params.minsup_count;

  const auto start = std::chrono::steady_clock::now();
  FlatDataset flat = flatten_transformed(d);
  if (filter) flat = filter_by_support(flat, params.minsup_count);
  switch (model) {
    case Model::oracle:
      out.patterns = oracle_mine(unflatten(flat), params);
      break;
    case Model::tabular:
      if (flattening == Flattening::separator) {
        out.patterns = mine_tabular_separated(flatten_separators(unflatten(flat)), params);
      } else {
        out.patterns = mine_tabular(flat, params);
      }
      break;
    case Model::sdtrie: {
      const SdTrie t = build_sdtrie(flat);
      out.report.node_count = t.node_count();
      out.report.compression = compute_stats(t, flat).compression;
      out.patterns = mine_trie(t, params);
      break;
    }
    case Model::bdtrie: {
      const BdTrie t = build_bdtrie(flat);
      out.report.node_count = t.node_count();
      out.report.compression = compute_stats(t, flat).compression;
      out.patterns = mine_trie(t, params);
      break;
    }
  }
  out.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report.pattern_count = out.patterns.size();
  out.report.peak_memory_bytes = peak_rss_bytes();
  return out;
}

struct BenchOptions {
  std::vector<MinsupSpec> minsups;
  std::vector<Model> models;
  std::size_t repeat = 1;
  // Number of cells run at once. 1 is the single-core protocol.
  std::size_t threads = 1;
  bool filter = true;
  Flattening flattening = Flattening::transformed;
  // Run every repetition in a forked child so peak RSS is per run.
  bool isolate = true;
};

inline constexpr std::string_view kBenchCsvHeader =
    "model,theta,minsup_count,patterns,wall_ms,peak_bytes,nodes,compression,status";

inline void write_bench_csv(const std::vector<RunReport>& rows, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << r.model << ',' << (r.theta ? std::to_string(*r.theta) : "") << ',' << r.minsup_count << ','
        << r.pattern_count << ',' << r.wall_time_ms << ',' << r.peak_memory_bytes << ','
        << (r.node_count ? std::to_string(*r.node_count) : "") << ','
        << (r.compression ? std::to_string(*r.compression) : "") << ',' << status << '\n';
  }
}

namespace detail {

inline RunReport run_cell_in_process(const StructuredDataset& d, Model m, const MinsupSpec& ms,
                                     const BenchOptions& opt) {
  try {
    return run_model(d, m, ms, opt.filter, opt.flattening).report;
  } catch (const std::exception& e) {
    RunReport r;
    r.model = std::string(model_name(m));
    r.theta = ms.fraction;
    r.minsup_count = ms.count;
    r.status = std::string("error: ") + e.what();
    return r;
  }
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline RunReport merge_repeats(const std::vector<RunReport>& runs) {
  RunReport merged = runs.front();
  std::vector<double> wall, peak;
  for (const auto& r : runs) {
    if (r.status != "ok") return r;
    if (r.pattern_count != merged.pattern_count) {
      merged.status = "error: pattern count differs between repeats";
      return merged;
    }
    wall.push_back(r.wall_time_ms);
    peak.push_back(static_cast<double>(r.peak_memory_bytes));
  }
  merged.wall_time_ms = median(wall);
  merged.peak_memory_bytes = static_cast<std::uint64_t>(median(peak));
  return merged;
}

#ifdef SPM_HAVE_FORK
struct Child {
  std::size_t task;
  int fd;
};

inline std::string drain(int fd) {
  std::string data;
  char buf[4096];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n > 0) {
      data.append(buf, static_cast<std::size_t>(n));
    } else if (n == 0 || errno != EINTR) {
      break;
    }
  }
  ::close(fd);
  return data;
}

// Runs every task in a forked child, at most `parallel` at a time. Peak
// memory is the child's max RSS as reported by wait4.
template <class Task>
std::vector<RunReport> run_forked(const std::vector<Task>& tasks, std::size_t parallel,
                                  const StructuredDataset& d, const BenchOptions& opt) {
  std::vector<RunReport> reports(tasks.size());
  std::map<pid_t, Child> live;
  std::size_t next = 0;
  auto fail = [&](std::size_t t, const std::string& why) {
    reports[t].model = std::string(model_name(tasks[t].model));
    reports[t].theta = tasks[t].minsup.fraction;
    reports[t].status = "error: " + why;
  };
  while (next < tasks.size() || !live.empty()) {
    while (next < tasks.size() && live.size() < std::max<std::size_t>(1, parallel)) {
      int fds[2];
      if (::pipe(fds) != 0) {
        reports[next] = run_cell_in_process(d, tasks[next].model, tasks[next].minsup, opt);
        ++next;
        continue;
      }
      const pid_t pid = ::fork();
      if (pid == 0) {
        ::close(fds[0]);
        const RunReport r = run_cell_in_process(d, tasks[next].model, tasks[next].minsup, opt);
        const std::string payload = r.to_json().dump();
        std::size_t off = 0;
        while (off < payload.size()) {
          const ssize_t w = ::write(fds[1], payload.data() + off, payload.size() - off);
          if (w <= 0) break;
          off += static_cast<std::size_t>(w);
        }
        ::close(fds[1]);
        ::_exit(0);
      }
      ::close(fds[1]);
      if (pid < 0) {
        ::close(fds[0]);
        reports[next] = run_cell_in_process(d, tasks[next].model, tasks[next].minsup, opt);
      } else {
        live.emplace(pid, Child{next, fds[0]});
      }
      ++next;
    }
    if (live.empty()) continue;
    // Reports fit in a pipe buffer, so a child never blocks on write before
    // it is reaped.
    int status = 0;
    rusage ru{};
    const pid_t done = ::wait4(-1, &status, 0, &ru);
    if (done < 0) {
      if (errno == EINTR) continue;
      for (auto& [pid, c] : live) {
        ::close(c.fd);
        fail(c.task, "wait4 failed");
      }
      live.clear();
      break;
    }
    auto it = live.find(done);
    if (it == live.end()) continue;
    const Child c = it->second;
    live.erase(it);
    const std::string payload = drain(c.fd);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0 || payload.empty()) {
      fail(c.task, "child process terminated abnormally");
      continue;
    }
    try {
      reports[c.task] = RunReport::from_json(nlohmann::json::parse(payload));
#ifdef __APPLE__
      reports[c.task].peak_memory_bytes = static_cast<std::uint64_t>(ru.ru_maxrss);
#else
      reports[c.task].peak_memory_bytes = static_cast<std::uint64_t>(ru.ru_maxrss) * 1024;
#endif
    } catch (const std::exception& e) {
      fail(c.task, std::string("bad child report: ") + e.what());
    }
  }
  return reports;
}
#endif

}  // namespace detail

// Runs the (minsup x model) matrix `repeat` times per cell and reports the
// median wall time and median peak memory of each cell. Failures are kept
// as rows with a non-"ok" status.
inline std::vector<RunReport> run_bench(const StructuredDataset& d, const BenchOptions& opt) {
  struct Task {
    std::size_t cell;
    Model model;
    MinsupSpec minsup;
  };
  std::vector<Task> tasks;
  std::size_t cells = 0;
  for (const auto& ms : opt.minsups) {
    for (Model m : opt.models) {
      for (std::size_t r = 0; r < std::max<std::size_t>(1, opt.repeat); ++r) tasks.push_back({cells, m, ms});
      ++cells;
    }
  }

  std::vector<RunReport> runs;
#ifdef SPM_HAVE_FORK
  if (opt.isolate) {
    runs = detail::run_forked(tasks, opt.threads, d, opt);
  } else
#endif
  {
    for (const auto& t : tasks) runs.push_back(detail::run_cell_in_process(d, t.model, t.minsup, opt));
  }

  std::vector<std::vector<RunReport>> grouped(cells);
  for (std::size_t i = 0; i < tasks.size(); ++i) grouped[tasks[i].cell].push_back(std::move(runs[i]));
  std::vector<RunReport> out;
  out.reserve(cells);
  for (const auto& g : grouped) out.push_back(detail::merge_repeats(g));
  return out;
}

}  // namespace spm
