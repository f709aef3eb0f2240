// Copyright 2026 The CQLA Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end runs of the command-line tool.

#include "cqla/errors.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int cli(const std::string& args) {
  const std::string cmd = std::string(CQLA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("cqla_cli_" + name);
  fs::remove_all(d);
  return d;
}

TEST(Cli, GenCircuitAndScheduleIt) {
  const auto dir = scratch("gen");
  ASSERT_EQ(cli("gen-circuit --kind adder -n 16 --out " + dir.string()), 0);
  ASSERT_TRUE(fs::exists(dir / "adder_16.qc"));
  EXPECT_EQ(cli("schedule --circuit " + (dir / "adder_16.qc").string() + " --blocks 4 9 --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "parallelism.csv"));
  EXPECT_TRUE(fs::exists(dir / "utilization.csv"));
  fs::remove_all(dir);
}

TEST(Cli, SimulateWritesVersionedReportAndTrace) {
  const auto dir = scratch("sim");
  ASSERT_EQ(cli("simulate --size 64 --format json --out " + dir.string()), 0);
  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_TRUE(j.at("metadata").contains("timestamp"));
  for (const char* k : {"hit_rate", "transfers", "exec_time", "l1_speedup", "l2_speedup", "adder_speedup", "gain_product"}) {
    EXPECT_TRUE(j.at("results").contains(k)) << k;
  }
  EXPECT_TRUE(fs::exists(dir / "cache_trace.csv"));
  fs::remove_all(dir);
}

TEST(Cli, AreaAndBandwidth) {
  EXPECT_EQ(cli("area --size 1024 --blocks 100"), 0);
  EXPECT_EQ(cli("bandwidth --format json"), 0);
}

TEST(Cli, ExitCodes) {
  using cqla::ErrorKind;
  using cqla::exit_code;
  EXPECT_EQ(cli("simulate --size 64 --l1-time-fraction 0.5"), exit_code(ErrorKind::Fidelity));
  EXPECT_EQ(cli("simulate --size 64 --set experiment.par_xfer=0"), exit_code(ErrorKind::Config));
  EXPECT_EQ(cli("simulate --size 64 --set 'tech.cycle_time = 3 parsecs'"), exit_code(ErrorKind::Config));
  EXPECT_EQ(cli("simulate --no-such-flag"), exit_code(ErrorKind::Config));
  EXPECT_EQ(cli("area --out /proc/cqla_cannot_write_here"), exit_code(ErrorKind::Io));
  EXPECT_NE(exit_code(ErrorKind::Fidelity), exit_code(ErrorKind::Config));
  EXPECT_NE(exit_code(ErrorKind::Io), exit_code(ErrorKind::Config));
}

}  // namespace
