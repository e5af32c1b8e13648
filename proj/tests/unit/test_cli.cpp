#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maskobs/cli.hpp"
#include "maskobs/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = MASKOBS_TEST_DATA_DIR;

std::string data(const std::string& name) { return (kRoot / "data" / name).string(); }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = maskobs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

// Set MASKOBS_UPDATE_GOLDEN=1 to rewrite the files after a deliberate change.
void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path path = kRoot / "golden" / (name + ".txt");
  if (std::getenv("MASKOBS_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  EXPECT_EQ(actual, maskobs::read_file(path.string())) << "golden " << path;
}

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesFile) {
  const GoldenCase& c = GetParam();
  const Outcome r = run(c.args);
  ASSERT_EQ(r.code, 0) << r.err;
  expect_golden(c.name, r.out);
  // Byte-identical on a second run.
  EXPECT_EQ(run(c.args).out, r.out);
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"maskable_sz", {"maskable", "--observable", data("sz.obs"), "--method", "both"}},
        GoldenCase{"maskable_short_bloch", {"maskable", "--observable", data("short.obs"), "--method", "bloch"}},
        GoldenCase{"maskable_identity_d3", {"maskable", "--observable", data("id3.obs"), "--dim", "3"}},
        GoldenCase{"maskable_diag31", {"maskable", "--observable", data("diag31.obs"), "--method", "oracle"}},
        GoldenCase{"mask_sz", {"mask", "--observable", data("sz.obs")}},
        GoldenCase{"mask_diag31", {"mask", "--observable", data("diag31.obs")}},
        GoldenCase{"nohide_north", {"nohide", "--theta", "0", "--phi", "0"}},
        GoldenCase{"nohide_x_dressed",
                   {"nohide", "--theta", "1.5707963267948966", "--phi", "0", "--u0", data("hadamard.mat"), "--u1",
                    data("hadamard.mat")}},
        GoldenCase{"comask_north", {"comask", "--states", data("north.bloch"), "--dim", "2"}},
        GoldenCase{"comask_chord", {"comask", "--states", data("chord.bloch"), "--dim", "2"}},
        GoldenCase{"comask_disk", {"comask", "--states", data("disk.bloch"), "--dim", "2"}},
        GoldenCase{"comask_qutrit", {"comask", "--states", data("diag100.bloch"), "--dim", "3"}},
        GoldenCase{"common_state_sz", {"common-state", "--observables", data("sz.obs")}},
        GoldenCase{"common_state_sz_sx", {"common-state", "--observables", data("sz.obs"), data("sx.obs")}},
        GoldenCase{"common_state_sz_sxz", {"common-state", "--observables", data("sz.obs"), data("sxz.obs")}},
        GoldenCase{"counterexample", {"counterexample", "--b", data("north.bloch"), "--bprime", data("quarter.bloch"), "--dim", "2"}},
        GoldenCase{"bitcommit_d2_seed7", {"bitcommit-demo", "--dim", "2", "--seed", "7"}},
        GoldenCase{"bitcommit_d3_seed7", {"bitcommit-demo", "--dim", "3", "--seed", "7"}}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

TEST(Cli, PinnedLinesForPauliZ) {
  const Outcome r = run({"maskable", "--observable", data("sz.obs"), "--method", "both"});
  EXPECT_NE(r.out.find("\nmaskable: true\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nplane_distance: 0.5\n"), std::string::npos);
  EXPECT_NE(r.out.find("\neig_range: -1 1\n"), std::string::npos);
}

TEST(Cli, PinnedLinesForBitCommit) {
  const Outcome r = run({"bitcommit-demo", "--dim", "2", "--seed", "7"});
  EXPECT_NE(r.out.find("\nconcealment_gap: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("\ncheat_fidelity: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nproportional_checks: 20/20\n"), std::string::npos);
}

TEST(Cli, MaskWritesParsableKraus) {
  const fs::path out = fs::temp_directory_path() / "maskobs_cli_kraus.txt";
  const Outcome r = run({"mask", "--observable", data("sz.obs"), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::vector<maskobs::Record> kraus = maskobs::parse_records(maskobs::read_file(out.string()));
  ASSERT_EQ(kraus.size(), 2u);
  expect_golden("mask_sz_kraus", maskobs::read_file(out.string()));
  fs::remove(out);
}

TEST(Cli, SelftestPasses) {
  const Outcome r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\nfailed: 0\n"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("maskable"), std::string::npos);
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"maskable"}).code, 2);
  EXPECT_EQ(run({"maskable", "--observable", data("sz.obs"), "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"maskable", "--observable", data("missing.obs")}).code, 2);
  EXPECT_EQ(run({"maskable", "--observable", data("bad_row.obs")}).code, 2);
  EXPECT_EQ(run({"maskable", "--observable", data("nonherm.obs")}).code, 2);
  EXPECT_EQ(run({"maskable", "--observable", data("sz.obs"), "--dim", "3"}).code, 2);
  EXPECT_EQ(run({"nohide", "--theta", "abc", "--phi", "0"}).code, 2);
  EXPECT_EQ(run({"nohide", "--theta", "0", "--phi", "0", "--u0", data("twoI.obs")}).code, 2);
  EXPECT_EQ(run({"comask", "--states", data("north.bloch"), "--dim", "3"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--b", data("north.bloch"), "--bprime", data("north.bloch"), "--dim", "2"}).code, 2);
  EXPECT_EQ(run({"common-state", "--observables", data("sz.obs"), data("twosz.obs")}).code, 2);
  EXPECT_EQ(run({"bitcommit-demo", "--dim", "1", "--seed", "3"}).code, 2);
  const Outcome r = run({"maskable", "--observable", data("bad_row.obs")});
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, VerdictDoesNotChangeExitCode) {
  const Outcome r = run({"maskable", "--observable", data("twoI.obs")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\nmaskable: false\n"), std::string::npos);
}

}  // namespace
