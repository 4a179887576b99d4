#include "bench.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "submode/baselines.hpp"
#include "submode/generate.hpp"
#include "submode/mode.hpp"
#include "submode/suffix.hpp"

namespace smtool {

namespace {

using submode::LeafColoredTree;
using submode::ModeTable;

LeafColoredTree make_instance(const BenchConfig& cfg, std::int64_t size) {
  if (cfg.from_docs) {
    const submode::DocumentCollection docs =
        submode::generate_random_documents(cfg.num_docs, size, cfg.sigma, cfg.seed);
    return submode::GeneralizedSuffixTree::build(docs).as_leaf_colored_tree();
  }
  return submode::generate_random_tree(size, cfg.delta, cfg.max_arity, cfg.seed);
}

ModeTable run_algo(const std::string& algo, const LeafColoredTree& t) {
  if (algo == "scm") return submode::scm_all_modes(t);
  if (algo == "ba1") return submode::ba1_all_modes(t);
  if (algo == "ba2") return submode::ba2_all_modes(t);
  if (algo == "ba3") return submode::ba3_all_modes(t);
  if (algo == "brute") {
    const submode::HistogramTable h = submode::brute_all_modes(t);
    ModeTable m;
    m.c_max.resize(t.size());
    m.f_max.resize(t.size());
    for (submode::NodeId v = 0; v < t.size(); ++v) {
      const auto [c, f] = submode::histogram_mode(h, v);
      m.c_max[v] = c;
      m.f_max[v] = static_cast<std::int32_t>(f);
    }
    return m;
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

// Child side: run one instance and report through the pipe.
void child_run(int fd, const BenchConfig& cfg, const std::string& algo,
               std::int64_t size) {
  std::string msg;
  try {
    const LeafColoredTree t = make_instance(cfg, size);
    const auto start = std::chrono::steady_clock::now();
    const ModeTable m = run_algo(algo, t);
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "ok %.3f %llu", ms,
                  static_cast<unsigned long long>(submode::frequency_checksum(m)));
    msg = buf;
  } catch (const submode::ResourceLimitError&) {
    msg = "refused";
  } catch (const std::exception& e) {
    msg = std::string("error ") + e.what();
  }
  msg.push_back('\n');
  ssize_t ignored = write(fd, msg.data(), msg.size());
  (void)ignored;
  close(fd);
  _exit(0);
}

struct RunResult {
  std::string status = "error";
  double ms = 0.0;
  std::uint64_t checksum = 0;
  std::int64_t peak_bytes = 0;
};

struct PendingRun {
  pid_t pid = -1;
  int fd = -1;
  std::string algo;
  std::int64_t size = 0;
};

PendingRun spawn(const BenchConfig& cfg, const std::string& algo, std::int64_t size) {
  int pipefd[2];
  if (pipe(pipefd) != 0) throw std::runtime_error("pipe() failed");
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork() failed");
  if (pid == 0) {
    close(pipefd[0]);
    child_run(pipefd[1], cfg, algo, size);
  }
  close(pipefd[1]);
  return {pid, pipefd[0], algo, size};
}

RunResult collect(const PendingRun& run, std::int64_t budget_ms) {
  RunResult res;
  bool timed_out = false;
  if (budget_ms > 0) {
    pollfd p{run.fd, POLLIN, 0};
    const int r = poll(&p, 1, static_cast<int>(budget_ms));
    if (r == 0) {
      timed_out = true;
      kill(run.pid, SIGKILL);
    }
  }
  std::string line;
  if (!timed_out) {
    char buf[256];
    ssize_t got;
    while ((got = read(run.fd, buf, sizeof buf)) > 0) line.append(buf, got);
  }
  close(run.fd);

  rusage ru{};
  int status = 0;
  wait4(run.pid, &status, 0, &ru);
  res.peak_bytes = static_cast<std::int64_t>(ru.ru_maxrss) * 1024;

  if (timed_out) {
    res.status = "timeout";
    return res;
  }
  std::istringstream ss(line);
  std::string word;
  ss >> word;
  if (word == "ok") {
    res.status = "ok";
    ss >> res.ms >> res.checksum;
  } else if (word == "refused") {
    res.status = "refused";
  }
  return res;
}

void write_row(std::ostream& out, const BenchConfig& cfg, const PendingRun& run,
               const RunResult& res) {
  const std::int32_t delta = cfg.from_docs ? cfg.num_docs : cfg.delta;
  char ms_buf[32];
  std::snprintf(ms_buf, sizeof ms_buf, "%.3f", res.ms);
  out << run.algo << "," << run.size << "," << delta << "," << ms_buf << ","
      << res.peak_bytes << "," << res.checksum << "," << res.status << "\n";
}

}  // namespace

bool run_bench(const BenchConfig& cfg, std::ostream& out) {
  out << "algorithm,N,delta,build_ms,peak_bytes,checksum,status\n";
  bool all_ok = true;
  if (cfg.parallel) {
    std::vector<PendingRun> runs;
    for (std::int64_t size : cfg.sizes) {
      for (const std::string& algo : cfg.algos) runs.push_back(spawn(cfg, algo, size));
    }
    for (const PendingRun& run : runs) {
      const RunResult res = collect(run, 0);
      if (res.status == "error") all_ok = false;
      write_row(out, cfg, run, res);
    }
    return all_ok;
  }
  for (std::int64_t size : cfg.sizes) {
    for (const std::string& algo : cfg.algos) {
      const PendingRun run = spawn(cfg, algo, size);
      const RunResult res = collect(run, cfg.budget_ms);
      if (res.status == "error") all_ok = false;
      write_row(out, cfg, run, res);
    }
  }
  return all_ok;
}

}  // namespace smtool
