#include "cli/commands.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sfm/grid.h"
#include "sfm/grid_io.h"
#include "sfm/lovasz.h"

namespace sfm::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun sfm(std::vector<std::string> args) {
  args.insert(args.begin(), "sfm");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "sfm_cli_test" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  fs::path path(const std::string& name) const { return dir_ / name; }
  fs::path dir_;
};

const fs::path kGrid2x2 = fs::path(SFM_TEST_DATA_DIR) / "grid2x2.txt";

TEST_F(CliTest, SolveGrid2x2MatchesEnumeration) {
  const CliRun r = sfm({"solve", "--input", kGrid2x2.string(), "--algorithm", "bcd", "--epsilon-mode",
                     "fixed", "--epsilon", "0.25", "--output", path("m.pgm").string(), "--trace",
                     path("t.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  // Enumeration with the smaller-cardinality tie-break.
  const CutFunction f = grid_cut_function(load_grid_spec(kGrid2x2));
  std::uint64_t best_mask = 0;
  double best = 0.0;
  for (std::uint64_t mask = 1; mask < 16; ++mask) {
    const double v = f.evaluate(Subset::from_mask(4, mask));
    if (v < best - 1e-12) {
      best = v;
      best_mask = mask;
    }
  }
  const ImageVolume mask = load_pgm(path("m.pgm"));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(mask.intensities[j], (best_mask >> j & 1U) ? 255.0 : 0.0) << j;
  }
  const auto rows = lines(slurp(path("t.csv")));
  EXPECT_EQ(rows[0], "iter,sfmd_total,sfmd_1,sfmd_2,sfmc_total,discrete_gap,best_value,epsilon,wall_ms");
  EXPECT_GE(rows.size(), 2u);
}

TEST_F(CliTest, UnreadableInputExitsOne) {
  const CliRun r = sfm({"solve", "--input", path("missing.txt").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, BadFlagsExitOne) {
  EXPECT_EQ(sfm({"solve", "--algorithm", "newton"}).code, 1);
  EXPECT_EQ(sfm({"solve", "--no-such-flag"}).code, 1);
  EXPECT_EQ(sfm({"solve", "--dims", "0x3"}).code, 1);
  EXPECT_EQ(sfm({"solve", "--algorithm", "aar", "--epsilon-mode", "delta"}).code, 1);
  EXPECT_EQ(sfm({}).code, 1);
}

TEST_F(CliTest, HelpExitsZero) {
  const CliRun r = sfm({"solve", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--epsilon-mode"), std::string::npos);
}

TEST_F(CliTest, ZeroBudgetExitsTwoWithInitialRow) {
  const CliRun r = sfm({"solve", "--input", kGrid2x2.string(), "--max-outer-iters", "0", "--trace",
                     path("t.csv").string(), "--output", path("m.pgm").string()});
  EXPECT_EQ(r.code, 2);
  const auto rows = lines(slurp(path("t.csv")));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].rfind("0,0,0,0,0,", 0), 0u);
  EXPECT_TRUE(fs::exists(path("m.pgm")));
}

TEST_F(CliTest, VolumeMaskIsRawWithHeader) {
  ASSERT_EQ(sfm({"gen", "--dims", "3x3x2", "--seed", "4", "--out", path("v.txt").string()}).code,
            0);
  const CliRun r = sfm({"solve", "--input", path("v.txt").string(), "--output",
                     path("m.raw").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const ImageVolume mask = load_raw_volume(path("m.raw"), path("m.raw.hdr"));
  EXPECT_EQ(mask.num_cells(), 18u);
}

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(sfm({"gen", "--dims", "8x8", "--seed", "1", "--out", path("a.txt").string()}).code, 0);
  ASSERT_EQ(sfm({"gen", "--dims", "8x8", "--seed", "1", "--out", path("b.txt").string()}).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  ASSERT_EQ(sfm({"gen", "--dims", "8x8", "--seed", "2", "--out", path("c.txt").string()}).code, 0);
  EXPECT_NE(slurp(path("a.txt")), slurp(path("c.txt")));
}

TEST_F(CliTest, GenSmallGridIsSolvable) {
  ASSERT_EQ(sfm({"gen", "--dims", "2x2", "--seed", "0", "--out", path("g.txt").string()}).code, 0);
  EXPECT_EQ(sfm({"solve", "--input", path("g.txt").string()}).code, 0);
}

TEST_F(CliTest, GenThreeDimensionalEdgeCounts) {
  ASSERT_EQ(sfm({"gen", "--dims", "4x3x2", "--seed", "5", "--out", path("g.txt").string()}).code,
            0);
  const GridSpec spec = load_grid_spec(path("g.txt"));
  EXPECT_EQ(spec.ndim, 3u);
  EXPECT_EQ(spec.weights[0].size(), 18u);
  EXPECT_EQ(spec.weights[1].size(), 16u);
  EXPECT_EQ(spec.weights[2].size(), 12u);
}

TEST_F(CliTest, GenUnwritablePathExitsOne) {
  EXPECT_EQ(sfm({"gen", "--dims", "2x2", "--out", (path("no_dir") / "g.txt").string()}).code, 1);
}

TEST_F(CliTest, BenchSweepWritesSixGroups) {
  const CliRun r = sfm({"bench", "--dims", "32x32", "--algorithms", "bcd,acc", "--epsilon-modes",
                     "delta,delta_over_t,delta_over_sqrt_t", "--seeds", "1", "--max-outer-iters",
                     "30", "--out", path("b.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::set<std::string> groups;
  const auto rows = lines(slurp(path("b.csv")));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto second_comma = rows[k].find(',', rows[k].find(',') + 1);
    groups.insert(rows[k].substr(0, second_comma));
  }
  EXPECT_EQ(groups.size(), 6u);
  const auto summary = lines(slurp(path("b.summary.csv")));
  EXPECT_EQ(summary.size(), 7u);
}

TEST_F(CliTest, EmptySweepExitsOne) {
  EXPECT_EQ(sfm({"bench", "--out", path("b.csv").string()}).code, 1);
  EXPECT_EQ(sfm({"bench", "--algorithms", "bcd", "--epsilon-modes", "delta", "--out",
                 path("b.csv").string()})
                .code,
            1);
}

TEST_F(CliTest, PartialFailureIsRecordedPerCell) {
  const CliRun r = sfm({"bench", "--dims", "6x6", "--algorithms", "bcd,aar", "--epsilon-modes",
                     "delta", "--seeds", "3", "--out", path("b.csv").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("aar"), std::string::npos);
  const auto summary = lines(slurp(path("b.summary.csv")));
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_NE(summary[2].find(",error,"), std::string::npos);
  const CliRun all_bad = sfm({"bench", "--dims", "6x6", "--algorithms", "aar", "--epsilon-modes",
                           "delta", "--seeds", "3", "--out", path("c.csv").string()});
  EXPECT_EQ(all_bad.code, 1);
}

TEST_F(CliTest, SingleCellBenchEqualsSolveTrace) {
  for (const char* algorithm : {"bcd", "acc", "aar"}) {
    const std::string mode = std::string(algorithm) == "aar" ? "infinite" : "delta_over_sqrt_t";
    ASSERT_EQ(sfm({"solve", "--dims", "12x10", "--seed", "9", "--algorithm", algorithm,
                   "--epsilon-mode", mode, "--trace", path("s.csv").string()})
                  .code,
              0);
    ASSERT_EQ(sfm({"bench", "--dims", "12x10", "--seeds", "9", "--algorithms", algorithm,
                   "--epsilon-modes", mode, "--out", path("b.csv").string()})
                  .code,
              0);
    const auto solve_rows = lines(slurp(path("s.csv")));
    const auto bench_rows = lines(slurp(path("b.csv")));
    ASSERT_EQ(solve_rows.size(), bench_rows.size());
    const std::string prefix = std::string(algorithm) + "," + mode + ",9,";
    EXPECT_EQ(bench_rows[0], "algorithm,epsilon_mode,seed," + solve_rows[0]);
    for (std::size_t k = 1; k < solve_rows.size(); ++k) {
      EXPECT_EQ(bench_rows[k], prefix + solve_rows[k]);
    }
  }
}

TEST_F(CliTest, BenchIsDeterministicAcrossThreadCounts) {
  const std::vector<std::string> args{"bench", "--dims", "10x10", "--algorithms", "bcd,acc",
                                      "--epsilon-modes", "delta,delta_over_t", "--seeds", "1,2"};
  setenv("SFM_THREADS", "1", 1);
  auto a = args;
  a.insert(a.end(), {"--out", path("a.csv").string()});
  ASSERT_EQ(sfm(a).code, 0);
  setenv("SFM_THREADS", "4", 1);
  auto b = args;
  b.insert(b.end(), {"--out", path("b.csv").string()});
  ASSERT_EQ(sfm(b).code, 0);
  unsetenv("SFM_THREADS");
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.summary.csv")), slurp(path("b.summary.csv")));
}

TEST_F(CliTest, BadThreadCountExitsOne) {
  setenv("SFM_THREADS", "zero", 1);
  const CliRun r = sfm({"bench", "--dims", "4x4", "--algorithms", "bcd", "--epsilon-modes", "delta",
                     "--seeds", "1", "--out", path("b.csv").string()});
  unsetenv("SFM_THREADS");
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# solver settings\n"
        << "input = " << kGrid2x2.string() << "\n"
        << "max_outer_iters = 0\n"
        << "epsilon_mode = fixed\n"
        << "trace = " << path("t.csv").string() << "\n";
  }
  EXPECT_EQ(sfm({"solve", "--config", path("run.cfg").string()}).code, 2);
  EXPECT_EQ(sfm({"solve", "--config", path("run.cfg").string(), "--max-outer-iters", "100"}).code,
            0);
  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "just words\n";
  }
  EXPECT_EQ(sfm({"solve", "--config", path("bad.cfg").string()}).code, 1);
  {
    std::ofstream cfg(path("unknown.cfg"));
    cfg << "colour = blue\n";
  }
  EXPECT_EQ(sfm({"solve", "--config", path("unknown.cfg").string()}).code, 1);
}

TEST_F(CliTest, PgmInputSegmentsBrightRegion) {
  std::vector<std::uint8_t> pixels(8 * 8, 20);
  for (std::size_t y = 2; y < 6; ++y) {
    for (std::size_t x = 2; x < 6; ++x) pixels[x + 8 * y] = 230;
  }
  save_pgm(path("img.pgm"), 8, 8, pixels);
  const CliRun r = sfm({"solve", "--input", path("img.pgm").string(), "--lambda", "0.1",
                     "--output", path("mask.pgm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const ImageVolume mask = load_pgm(path("mask.pgm"));
  for (std::size_t j = 0; j < pixels.size(); ++j) {
    EXPECT_EQ(mask.intensities[j], pixels[j] > 128 ? 255.0 : 0.0) << j;
  }
}

}  // namespace
}  // namespace sfm::cli
