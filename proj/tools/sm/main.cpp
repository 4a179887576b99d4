#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench.hpp"
#include "submode/baselines.hpp"
#include "submode/dag.hpp"
#include "submode/mode.hpp"
#include "submode/retrieval.hpp"
#include "submode/suffix.hpp"
#include "submode/tree.hpp"

namespace {

using namespace submode;

// Flag combinations CLI11 cannot express (e.g. "at least one pattern").
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw submode::ParseError("cannot open output file: " + path);
  fn(f);
}

std::vector<std::string> gather_patterns(const std::vector<std::string>& inline_pats,
                                         const std::string& pattern_file) {
  std::vector<std::string> out = inline_pats;
  if (!pattern_file.empty()) {
    std::ifstream f(pattern_file);
    if (!f) throw submode::ParseError("cannot open pattern file: " + pattern_file);
    std::string line;
    while (std::getline(f, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (!line.empty()) out.push_back(line);
    }
  }
  if (out.empty()) throw UsageError("no pattern given (use -p or --patterns)");
  return out;
}

ModeTable modes_by_algo(const LeafColoredTree& t, const std::string& algo) {
  if (algo == "scm") return scm_all_modes(t);
  if (algo == "ba1") return ba1_all_modes(t);
  if (algo == "ba2") return ba2_all_modes(t);
  if (algo == "ba3") return ba3_all_modes(t);
  const HistogramTable h = brute_all_modes(t);
  ModeTable m;
  m.c_max.resize(t.size());
  m.f_max.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto [c, f] = histogram_mode(h, v);
    m.c_max[v] = c;
    m.f_max[v] = static_cast<std::int32_t>(f);
  }
  return m;
}

AntiModeTable anti_modes_by_algo(const LeafColoredTree& t, const std::string& algo) {
  if (algo == "scm") return scm_anti_modes(t);
  const HistogramTable h = brute_all_modes(t);
  AntiModeTable a;
  a.c_min.resize(t.size());
  a.f_min.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto [c, f] = histogram_anti_mode(h, v);
    a.c_min[v] = c;
    a.f_min[v] = static_cast<std::int32_t>(f);
  }
  return a;
}

TopKTable top_k_by_algo(const LeafColoredTree& t, std::int32_t k, const std::string& algo) {
  if (algo == "scm") return scm_top_k(t, k);
  const HistogramTable h = brute_all_modes(t);
  TopKTable out(t.size(), k);
  std::vector<std::pair<std::int64_t, ColorId>> row;
  for (NodeId v = 0; v < t.size(); ++v) {
    row.clear();
    for (ColorId c = 0; c < h.delta; ++c) {
      if (h.row(v)[c] > 0) row.emplace_back(h.row(v)[c], c);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    const std::int32_t take = std::min<std::int32_t>(k, static_cast<std::int32_t>(row.size()));
    out.mutable_length(v) = take;
    for (std::int32_t i = 0; i < take; ++i) {
      out.mutable_colors(v)[i] = row[i].second;
      out.mutable_freqs(v)[i] = static_cast<std::int32_t>(row[i].first);
    }
  }
  return out;
}

void cmd_mode(const std::string& tree_path, const std::string& algo,
              const std::string& out_path) {
  const LeafColoredTree t = parse_tree_file(tree_path);
  const ModeTable m = modes_by_algo(t, algo);
  with_output(out_path, [&](std::ostream& os) { write_mode_table(m, os); });
}

void cmd_antimode(const std::string& tree_path, const std::string& algo,
                  const std::string& out_path) {
  const LeafColoredTree t = parse_tree_file(tree_path);
  const AntiModeTable a = anti_modes_by_algo(t, algo);
  with_output(out_path, [&](std::ostream& os) { write_anti_mode_table(a, os); });
}

void cmd_ksm(const std::string& tree_path, std::int32_t k, const std::string& algo,
             const std::string& out_path) {
  const LeafColoredTree t = parse_tree_file(tree_path);
  const TopKTable table = top_k_by_algo(t, k, algo);
  with_output(out_path, [&](std::ostream& os) { write_top_k_table(table, os); });
}

void cmd_docs_index(const std::string& docs_path) {
  const GeneralizedSuffixTree gst =
      GeneralizedSuffixTree::build(parse_documents_file(docs_path));
  std::cout << "documents " << gst.num_docs() << "\n"
            << "alphabet " << gst.sigma() << "\n"
            << "text_length " << gst.text_length() << "\n"
            << "nodes " << gst.size() << "\n"
            << "leaves " << gst.num_leaves() << "\n";
}

void cmd_docs_dr1(const std::string& docs_path, const std::vector<std::string>& pats,
                  const std::string& pattern_file, bool bottom) {
  const std::vector<std::string> patterns = gather_patterns(pats, pattern_file);
  const DocRetrievalIndex idx = DocRetrievalIndex::build(parse_documents_file(docs_path));
  for (const std::string& p : patterns) {
    const DocHit h = bottom ? dr_bottom1(idx, p) : dr1(idx, p);
    if (h.doc == kNoColor) {
      std::cout << p << "\t-1\n";
    } else {
      std::cout << p << "\t" << h.doc << "\t" << h.freq << "\n";
    }
  }
}

void cmd_docs_kdr(const std::string& docs_path, const std::vector<std::string>& pats,
                  const std::string& pattern_file, std::int32_t k) {
  if (k < 1) throw UsageError("--k must be at least 1");
  const std::vector<std::string> patterns = gather_patterns(pats, pattern_file);
  const DocRetrievalIndex idx =
      DocRetrievalIndex::build(parse_documents_file(docs_path), k);
  for (const std::string& p : patterns) {
    const std::vector<DocHit> hits = dr_topk(idx, p, k);
    std::cout << p;
    if (hits.empty()) {
      std::cout << "\t-1";
    } else {
      for (const DocHit& h : hits) std::cout << "\t" << h.doc << "\t" << h.freq;
    }
    std::cout << "\n";
  }
}

void cmd_docs_upm(const std::string& docs_path, std::int64_t epsilon, std::int64_t limit,
                  bool compact, const std::string& out_path) {
  const DocRetrievalIndex idx = DocRetrievalIndex::build(parse_documents_file(docs_path));
  with_output(out_path, [&](std::ostream& os) {
    if (compact) {
      std::int64_t count = 0;
      upm_mine(idx, epsilon, [&](const UniformPattern& r) {
        os << r.node << "\t" << r.lo << "\t" << r.hi << "\n";
        ++count;
        return limit == 0 || count < limit;
      });
      return;
    }
    std::vector<std::string> expanded;
    upm_mine(idx, epsilon, [&](const UniformPattern& r) {
      for (std::int64_t len = r.lo; len <= r.hi; ++len) {
        expanded.push_back(upm_expand(idx.gst, r.node, len));
      }
      return true;
    });
    std::sort(expanded.begin(), expanded.end());
    if (limit > 0 && static_cast<std::int64_t>(expanded.size()) > limit) {
      expanded.resize(limit);
    }
    for (const std::string& p : expanded) os << p << "\n";
  });
}

void cmd_docs_cqs(const std::string& docs_path, const std::vector<std::string>& pats,
                  const std::string& pattern_file, std::int64_t q, std::int64_t epsilon) {
  if (q < 1) throw UsageError("--q must be at least 1");
  const std::vector<std::string> patterns = gather_patterns(pats, pattern_file);
  const DocRetrievalIndex idx = DocRetrievalIndex::build(parse_documents_file(docs_path));
  for (const std::string& p : patterns) {
    std::cout << cqs(idx, p, q, epsilon) << "\n";
  }
}

void cmd_bmm(const std::string& matrix_path) {
  const auto [a, b] = parse_bmm_file(matrix_path);
  const BoolMatrix c = bmm_via_dm(a, b);
  for (std::int32_t i = 0; i < c.n; ++i) {
    for (std::int32_t j = 0; j < c.n; ++j) std::cout << (c.at(i, j) ? '1' : '0');
    std::cout << "\n";
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

std::vector<std::int64_t> parse_sizes(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const std::string& item : split_list(s)) {
    try {
      const double v = std::stod(item);
      if (v < 1 || v > 2e9) throw std::out_of_range(item);
      out.push_back(static_cast<std::int64_t>(v + 0.5));
    } catch (const std::exception&) {
      throw UsageError("bad size: " + item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subtree color modes, document retrieval, and pattern mining"};
  app.require_subcommand(1);

  const std::vector<std::string> kModeAlgos{"scm", "ba1", "ba2", "ba3", "brute"};
  const std::vector<std::string> kTableAlgos{"scm", "brute"};

  std::string tree_path, algo = "scm", out_path;
  std::int32_t k = 1;

  CLI::App* mode = app.add_subcommand("mode", "most frequent leaf color per subtree");
  mode->add_option("tree", tree_path, "tree file")->required();
  mode->add_option("--algo", algo, "algorithm")->check(CLI::IsMember(kModeAlgos));
  mode->add_option("--out", out_path, "output file (default stdout)");
  mode->callback([&] { cmd_mode(tree_path, algo, out_path); });

  CLI::App* antimode = app.add_subcommand("antimode", "least frequent color per subtree");
  antimode->add_option("tree", tree_path, "tree file")->required();
  antimode->add_option("--algo", algo, "algorithm")->check(CLI::IsMember(kTableAlgos));
  antimode->add_option("--out", out_path, "output file (default stdout)");
  antimode->callback([&] { cmd_antimode(tree_path, algo, out_path); });

  CLI::App* ksm = app.add_subcommand("ksm", "k most frequent colors per subtree");
  ksm->add_option("tree", tree_path, "tree file")->required();
  ksm->add_option("--k", k, "list length")->required()->check(CLI::PositiveNumber);
  ksm->add_option("--algo", algo, "algorithm")->check(CLI::IsMember(kTableAlgos));
  ksm->add_option("--out", out_path, "output file (default stdout)");
  ksm->callback([&] { cmd_ksm(tree_path, k, algo, out_path); });

  std::string docs_path, pattern_file;
  std::vector<std::string> patterns;
  std::int64_t epsilon = 0, q = 0, limit = 0;
  bool compact = false, bottom = false;

  CLI::App* docs = app.add_subcommand("docs", "document collection queries");
  docs->require_subcommand(1);

  CLI::App* dindex = docs->add_subcommand("index", "build the index, print stats");
  dindex->add_option("docs", docs_path, "documents file")->required();
  dindex->callback([&] { cmd_docs_index(docs_path); });

  CLI::App* ddr1 = docs->add_subcommand("dr1", "document with the most occurrences");
  ddr1->add_option("docs", docs_path, "documents file")->required();
  ddr1->add_option("-p,--pattern", patterns, "query pattern (repeatable)");
  ddr1->add_option("--patterns", pattern_file, "pattern file, one per line");
  ddr1->add_flag("--bottom", bottom, "report the fewest occurrences instead");
  ddr1->callback([&] { cmd_docs_dr1(docs_path, patterns, pattern_file, bottom); });

  CLI::App* dkdr = docs->add_subcommand("kdr", "k documents with the most occurrences");
  dkdr->add_option("docs", docs_path, "documents file")->required();
  dkdr->add_option("-p,--pattern", patterns, "query pattern (repeatable)");
  dkdr->add_option("--patterns", pattern_file, "pattern file, one per line");
  dkdr->add_option("--k", k, "list length")->required()->check(CLI::PositiveNumber);
  dkdr->callback([&] { cmd_docs_kdr(docs_path, patterns, pattern_file, k); });

  CLI::App* dupm = docs->add_subcommand("upm", "mine epsilon-uniform patterns");
  dupm->add_option("docs", docs_path, "documents file")->required();
  dupm->add_option("--epsilon", epsilon, "uniformity slack")->check(CLI::NonNegativeNumber);
  dupm->add_option("--limit", limit, "cap on emitted lines")->check(CLI::NonNegativeNumber);
  dupm->add_flag("--compact", compact, "emit (node, lo, hi) triples");
  dupm->add_option("--out", out_path, "output file (default stdout)");
  dupm->callback([&] { cmd_docs_upm(docs_path, epsilon, limit, compact, out_path); });

  CLI::App* dcqs = docs->add_subcommand("cqs", "count consistent q-grams of a pattern");
  dcqs->add_option("docs", docs_path, "documents file")->required();
  dcqs->add_option("-p,--pattern", patterns, "query pattern (repeatable)");
  dcqs->add_option("--patterns", pattern_file, "pattern file, one per line");
  dcqs->add_option("--q", q, "q-gram length")->required()->check(CLI::PositiveNumber);
  dcqs->add_option("--epsilon", epsilon, "consistency slack")->check(CLI::NonNegativeNumber);
  dcqs->callback([&] { cmd_docs_cqs(docs_path, patterns, pattern_file, q, epsilon); });

  smtool::BenchConfig bench_cfg;
  std::string algos_arg, sizes_arg;

  CLI::App* bench = app.add_subcommand("bench", "timing/memory comparison CSV");
  bench->add_option("--algos", algos_arg, "comma list of scm,ba1,ba2,ba3,brute")->required();
  bench->add_option("--sizes", sizes_arg, "comma list of node counts (2.5e5 ok)")->required();
  bench->add_option("--delta", bench_cfg.delta, "colors (documents with --docs)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_cfg.seed, "generator seed")->required();
  bench->add_option("--arity", bench_cfg.max_arity, "max children per node")
      ->check(CLI::PositiveNumber);
  bench->add_option("--budget-ms", bench_cfg.budget_ms, "per-run wall budget, 0=off")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--sigma", bench_cfg.sigma, "letters per document with --docs")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--parallel", bench_cfg.parallel, "run instances concurrently");
  bench->add_flag("--docs", bench_cfg.from_docs,
                  "sizes are document lengths; instance is the suffix tree");
  bench->add_option("--out", out_path, "output file (default stdout)");
  bench->callback([&] {
    bench_cfg.algos = split_list(algos_arg);
    bench_cfg.sizes = parse_sizes(sizes_arg);
    if (bench_cfg.algos.empty()) throw UsageError("--algos is empty");
    if (bench_cfg.sizes.empty()) throw UsageError("--sizes is empty");
    for (const std::string& a : bench_cfg.algos) {
      if (std::find(kModeAlgos.begin(), kModeAlgos.end(), a) == kModeAlgos.end()) {
        throw UsageError("unknown algorithm: " + a);
      }
    }
    bench_cfg.num_docs = bench_cfg.delta;
    with_output(out_path, [&](std::ostream& os) { smtool::run_bench(bench_cfg, os); });
  });

  std::string matrix_path;
  CLI::App* bmm = app.add_subcommand("bmm", "boolean product via descendant modes");
  bmm->add_option("matrix", matrix_path, "file: n, then A rows, then B rows")->required();
  bmm->callback([&] { cmd_bmm(matrix_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
