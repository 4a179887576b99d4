#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace smtool {

struct BenchConfig {
  std::vector<std::string> algos;
  std::vector<std::int64_t> sizes;
  std::int32_t delta = 8;
  std::int32_t max_arity = 8;
  std::uint64_t seed = 1;
  std::int64_t budget_ms = 0;  // 0 = unlimited
  bool parallel = false;
  bool from_docs = false;  // sizes are total document lengths
  std::int32_t num_docs = 8;
  std::int32_t sigma = 4;
};

// One CSV row per (size, algo): algorithm,N,delta,build_ms,peak_bytes,
// checksum,status with status in {ok, refused, timeout, error}.
// Each run happens in a forked child so peak memory and kills stay
// per-run.  Returns false if any run errored.
bool run_bench(const BenchConfig& cfg, std::ostream& out);

}  // namespace smtool
