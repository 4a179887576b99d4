#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "submode/baselines.hpp"
#include "submode/generate.hpp"
#include "submode/mode.hpp"

using namespace submode;

namespace {

void check_frequencies(const LeafColoredTree& t, const ModeTable& m) {
  const auto hist = oracles::subtree_histograms(t);
  REQUIRE(m.f_max.size() == static_cast<std::size_t>(t.size()));
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto [c, f] = oracles::row_mode(hist[v]);
    CHECK(m.f_max[v] == f);
    CHECK(hist[v][m.c_max[v]] == f);
  }
}

}  // namespace

TEST_CASE("all four algorithms match on the worked tree") {
  const LeafColoredTree t = fixtures::worked_tree();
  const ModeTable scm = scm_all_modes(t);
  for (const ModeTable& m : {ba1_all_modes(t), ba2_all_modes(t), ba3_all_modes(t)}) {
    CHECK(m.f_max == scm.f_max);
    check_frequencies(t, m);
  }
  const HistogramTable h = brute_all_modes(t);
  for (NodeId v = 0; v < t.size(); ++v) {
    CHECK(histogram_mode(h, v).second == scm.f_max[v]);
  }
}

TEST_CASE("histogram readers use the library tie rule") {
  const LeafColoredTree t = fixtures::worked_tree();
  const HistogramTable h = brute_all_modes(t);
  CHECK(histogram_mode(h, fixtures::kA) == std::pair<ColorId, std::int64_t>{0, 4});
  CHECK(histogram_mode(h, fixtures::kC) == std::pair<ColorId, std::int64_t>{3, 2});
  CHECK(histogram_anti_mode(h, fixtures::kA) == std::pair<ColorId, std::int64_t>{1, 2});
  CHECK(histogram_anti_mode(h, fixtures::kD) == std::pair<ColorId, std::int64_t>{3, 0});
}

TEST_CASE("histogram accumulation refuses oversized tables") {
  const LeafColoredTree t = generate_random_tree(1000, 50, 3, 7);
  CHECK_THROWS_AS(ba1_all_modes(t, 10'000), ResourceLimitError);
  CHECK_THROWS_AS(brute_all_modes(t, 10'000), ResourceLimitError);
  CHECK_NOTHROW(ba1_all_modes(t, 50'000));
}

TEST_CASE("range-mode index answers match direct counting") {
  const std::vector<ColorId> data = {2, 0, 0, 1, 2, 2, 0, 1, 1, 1, 3};
  for (const std::int32_t blocks : {1, 3, 11}) {
    const RangeModeIndex idx(data, blocks);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(data.size()); ++i) {
      for (std::int32_t j = i; j < static_cast<std::int32_t>(data.size()); ++j) {
        const auto [oc, of] = oracles::range_mode(data, i, j);
        const auto [c, f] = idx.query(i, j);
        CHECK(f == of);
        std::int32_t attained = 0;
        for (std::int32_t p = i; p <= j; ++p) attained += data[p] == c;
        CHECK(attained == f);
      }
    }
  }
}

TEST_CASE("range-mode index validates its inputs") {
  CHECK_THROWS_AS(RangeModeIndex({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(RangeModeIndex({0, 1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(RangeModeIndex({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(RangeModeIndex({0, -2}, 1), std::invalid_argument);
  const RangeModeIndex idx({0, 1, 0}, 2);
  CHECK_THROWS_AS(idx.query(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(idx.query(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(idx.query(0, 3), std::invalid_argument);
}

TEST_CASE("range-mode index on random arrays across block counts") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<int> len_pick(1, 300);
    std::uniform_int_distribution<ColorId> col_pick(0, 15);
    const std::int32_t n = len_pick(rng);
    std::vector<ColorId> data(n);
    for (auto& c : data) c = col_pick(rng);
    const std::int32_t root = static_cast<std::int32_t>(std::ceil(std::sqrt(n)));
    for (const std::int32_t blocks : {1, root, n}) {
      const RangeModeIndex idx(data, blocks);
      std::uniform_int_distribution<std::int32_t> pos(0, n - 1);
      for (int q = 0; q < 50; ++q) {
        std::int32_t i = pos(rng), j = pos(rng);
        if (i > j) std::swap(i, j);
        const auto [oc, of] = oracles::range_mode(data, i, j);
        const auto [c, f] = idx.query(i, j);
        CHECK(f == of);
        std::int32_t attained = 0;
        for (std::int32_t p = i; p <= j; ++p) attained += data[p] == c;
        CHECK(attained == f);
      }
    }
  }
}

TEST_CASE("baselines agree with scm frequencies on random trees") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<std::int64_t> size_pick(1, 200);
    std::uniform_int_distribution<int> delta_pick(1, 8);
    const LeafColoredTree t =
        generate_random_tree(size_pick(rng), delta_pick(rng), 4, rng());
    const ModeTable scm = scm_all_modes(t);
    CHECK(ba1_all_modes(t).f_max == scm.f_max);
    CHECK(ba2_all_modes(t).f_max == scm.f_max);
    CHECK(ba3_all_modes(t).f_max == scm.f_max);
    CHECK(frequency_checksum(ba3_all_modes(t)) == frequency_checksum(scm));
    check_frequencies(t, ba1_all_modes(t));
    check_frequencies(t, ba2_all_modes(t));
    check_frequencies(t, ba3_all_modes(t));
  }
}
