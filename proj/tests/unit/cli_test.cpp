#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "submode/generate.hpp"
#include "submode/tree.hpp"

// End-to-end runs of the installed command line tool.  SM_BINARY is the
// path to the freshly built executable.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_sm(const std::string& args) {
  const std::string cmd = std::string(SM_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

// Third whitespace field of each line — the frequency column of the
// mode/antimode output format.
std::vector<long> frequency_column(const std::string& text) {
  std::vector<long> freqs;
  for (const std::string& line : lines_of(text)) {
    std::stringstream ss(line);
    long id, color, freq;
    ss >> id >> color >> freq;
    freqs.push_back(freq);
  }
  return freqs;
}

std::string fig2() { return fixtures::data_path("fig2.tree"); }
std::string docs() { return fixtures::data_path("docs.txt"); }

std::string temp_path(const std::string& stem) {
  return "/tmp/sm_cli_" + std::to_string(getpid()) + "_" + stem;
}

}  // namespace

TEST_CASE("mode subcommand prints the full table") {
  const RunResult r = run_sm("mode " + fig2());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 19);
  CHECK(lines[0] == "0 0 4");
  CHECK(lines[1] == "1 0 3");
  CHECK(lines[2] == "2 3 2");
  CHECK(lines[3] == "3 0 2");
}

TEST_CASE("every algorithm choice yields the same frequencies") {
  const std::vector<long> base = frequency_column(run_sm("mode " + fig2()).out);
  for (const std::string algo : {"ba1", "ba2", "ba3", "brute"}) {
    const RunResult r = run_sm("mode " + fig2() + " --algo " + algo);
    CHECK(r.exit_code == 0);
    CHECK(frequency_column(r.out) == base);
  }
}

TEST_CASE("antimode subcommand matches the brute algorithm") {
  const RunResult scm = run_sm("antimode " + fig2());
  CHECK(scm.exit_code == 0);
  const RunResult brute = run_sm("antimode " + fig2() + " --algo brute");
  CHECK(frequency_column(scm.out) == frequency_column(brute.out));
  const auto lines = lines_of(scm.out);
  REQUIRE(lines.size() == 19);
  CHECK(lines[3] == "3 3 0");  // d misses orange
  std::stringstream root_line(lines[0]);
  long id, c, f;
  root_line >> id >> c >> f;
  CHECK(f == 2);
}

TEST_CASE("ksm subcommand lists the two best colors") {
  const RunResult r = run_sm("ksm " + fig2() + " --k 2");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 19);
  CHECK(lines[0] == "0 0 4 3 3");
  CHECK(lines[7] == "7 0 1");  // a leaf: one distinct color only
  // The brute path sorts identically, ties included.
  CHECK(run_sm("ksm " + fig2() + " --k 2 --algo brute").out == r.out);
}

TEST_CASE("mode output lands in a file with --out") {
  const std::string path = temp_path("mode.out");
  const RunResult r = run_sm("mode " + fig2() + " --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream body;
  body << f.rdbuf();
  CHECK(body.str() == run_sm("mode " + fig2()).out);
  std::remove(path.c_str());
}

TEST_CASE("docs index reports collection statistics") {
  const RunResult r = run_sm("docs index " + docs());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "documents 2");
  CHECK(lines[1] == "alphabet 256");
  CHECK(lines[2] == "text_length 10");  // 8 letters + 2 delimiters
}

TEST_CASE("docs dr1 answers hits and misses") {
  const RunResult r = run_sm("docs dr1 " + docs() + " -p aa -p zz");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "aa\t0\t3");
  CHECK(lines[1] == "zz\t-1");
}

TEST_CASE("docs dr1 --bottom reports the scarcest document") {
  const RunResult r = run_sm("docs dr1 " + docs() + " --bottom -p aaa");
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out)[0] == "aaa\t1\t0");
}

TEST_CASE("docs kdr ranks documents by count") {
  const RunResult r = run_sm("docs kdr " + docs() + " --k 2 -p a -p zz");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "a\t0\t4\t1\t2");
  CHECK(lines[1] == "zz\t-1");
}

TEST_CASE("patterns can come from a file") {
  const std::string path = temp_path("patterns.txt");
  {
    std::ofstream f(path);
    f << "aa\nb\n";
  }
  const RunResult r = run_sm("docs dr1 " + docs() + " --patterns " + path);
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "aa\t0\t3");
  std::remove(path.c_str());
}

TEST_CASE("docs upm emits the sorted expanded patterns") {
  const RunResult r = run_sm("docs upm " + docs() + " --epsilon 1");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> want = {"aaaa", "aaaab", "aaab", "aab", "ab", "b"};
  CHECK(lines_of(r.out) == want);

  const RunResult limited = run_sm("docs upm " + docs() + " --epsilon 1 --limit 3");
  CHECK(lines_of(limited.out) ==
        std::vector<std::string>{"aaaa", "aaaab", "aaab"});

  const RunResult compact = run_sm("docs upm " + docs() + " --epsilon 1 --compact");
  CHECK(compact.exit_code == 0);
  for (const std::string& line : lines_of(compact.out)) {
    std::stringstream ss(line);
    long node, lo, hi;
    REQUIRE((ss >> node >> lo >> hi));
    CHECK(lo >= 1);
    CHECK(lo <= hi);
  }
}

TEST_CASE("docs cqs prints one count per pattern") {
  const RunResult r = run_sm("docs cqs " + docs() + " --q 2 -p aab -p aaaab");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "2");
}

TEST_CASE("bmm prints the boolean product") {
  const RunResult r = run_sm("bmm " + fixtures::data_path("bmm_fig4.txt"));
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out) == std::vector<std::string>{"01", "10"});
}

TEST_CASE("bench emits one deterministic CSV row per run") {
  const std::string args =
      "bench --algos scm,ba3 --sizes 500,1000 --delta 6 --seed 7";
  const RunResult r = run_sm(args);
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "algorithm,N,delta,build_ms,peak_bytes,checksum,status");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields;
    std::stringstream ss(lines[i]);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 7);
    CHECK(fields[6] == "ok");
    rows.push_back(fields);
  }
  // Same instance -> same checksum across algorithms.
  CHECK(rows[0][5] == rows[1][5]);
  CHECK(rows[2][5] == rows[3][5]);
  CHECK(rows[0][5] != rows[2][5]);  // different sizes differ
  // Checksums and statuses reproduce run over run.
  const RunResult again = run_sm(args);
  const auto relines = lines_of(again.out);
  REQUIRE(relines.size() == 5);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> a, b;
    std::stringstream sa(lines[i]), sb(relines[i]);
    std::string f;
    while (std::getline(sa, f, ',')) a.push_back(f);
    while (std::getline(sb, f, ',')) b.push_back(f);
    CHECK(a[5] == b[5]);
    CHECK(a[6] == b[6]);
  }
}

TEST_CASE("usage problems exit with code 1") {
  CHECK(run_sm("").exit_code == 1);
  CHECK(run_sm("mode").exit_code == 1);
  CHECK(run_sm("mode " + fig2() + " --algo nope").exit_code == 1);
  CHECK(run_sm("ksm " + fig2() + " --k 0").exit_code == 1);
  CHECK(run_sm("docs dr1 " + docs()).exit_code == 1);  // no pattern
  CHECK(run_sm("docs cqs " + docs() + " -p ab").exit_code == 1);  // no --q
  CHECK(run_sm("bench --algos scm --sizes 100").exit_code == 1);  // no --seed
  CHECK(run_sm("bench --algos nope --sizes 100 --seed 1").exit_code == 1);
}

TEST_CASE("input problems exit with code 2") {
  CHECK(run_sm("mode /nonexistent.tree").exit_code == 2);
  const std::string path = temp_path("bad.tree");
  {
    std::ofstream f(path);
    f << "0 -1\n1 0\n";  // uncolored leaf
  }
  CHECK(run_sm("mode " + path).exit_code == 2);
  std::remove(path.c_str());
  CHECK(run_sm("docs dr1 /nonexistent.docs -p a").exit_code == 2);
}

TEST_CASE("the histogram guard exits with code 3") {
  // 5e5 nodes x 1e4 colors: five billion cells, over the 2^32 budget.
  const std::string path = temp_path("wide.tree");
  {
    const submode::LeafColoredTree t =
        submode::generate_random_tree(500'000, 10'000, 3, 99);
    std::ofstream f(path);
    submode::serialize_tree(t, f);
  }
  const RunResult r = run_sm("mode " + path + " --algo ba1");
  CHECK(r.exit_code == 3);
  // scm itself has no such limit.
  CHECK(run_sm("mode " + path + " --out /dev/null").exit_code == 0);
  std::remove(path.c_str());
}
