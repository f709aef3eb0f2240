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

#include "cqla/circuit.hpp"
#include "cqla/scheduler.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

namespace {

using namespace cqla;

Circuit random_circuit(std::mt19937& rng, std::size_t qubits, std::size_t gates) {
  Circuit c(qubits, "random");
  std::uniform_int_distribution<QubitId> q(0, static_cast<QubitId>(qubits - 1));
  for (std::size_t i = 0; i < gates; ++i) {
    const QubitId a = q(rng);
    QubitId b = q(rng);
    if (rng() % 3 == 0 || a == b) {
      c.add(GateType::X, {a});
    } else {
      c.add(GateType::CNOT, {a, b});
    }
  }
  return c;
}

// Exact optimum for unit-time gates and at most k starts per slot: shortest
// path over sets of finished gates. Starting a maximal set of ready gates
// never hurts with unit times, so only maximal subsets are explored.
std::uint64_t optimal_makespan(const Circuit& c, std::size_t k) {
  const DependencyGraph g(c);
  const std::size_t n = c.size();
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> dist(full + 1, -1);
  std::vector<std::uint32_t> frontier = {0};
  dist[0] = 0;
  for (int step = 0; !frontier.empty(); ++step) {
    std::vector<std::uint32_t> next;
    for (auto done : frontier) {
      if (done == full) return static_cast<std::uint64_t>(step);
      std::vector<std::size_t> ready;
      for (std::size_t i = 0; i < n; ++i) {
        if (done >> i & 1u) continue;
        bool ok = true;
        for (auto p : g.preds(i)) ok = ok && (done >> p & 1u);
        if (ok) ready.push_back(i);
      }
      const std::size_t take = std::min(k, ready.size());
      std::vector<bool> pick(ready.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(take), true);
      do {
        std::uint32_t m = done;
        for (std::size_t j = 0; j < ready.size(); ++j) {
          if (pick[j]) m |= 1u << ready[j];
        }
        if (dist[m] < 0) {
          dist[m] = step + 1;
          next.push_back(m);
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    frontier = std::move(next);
  }
  return 0;
}

void expect_valid(const Circuit& c, const Schedule& s, std::size_t limit, const SlotModel& slots) {
  const DependencyGraph g(c);
  std::map<std::uint64_t, std::size_t> starts;
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(s.finish[i], s.start[i] + slots(c[i]));
    for (auto p : g.preds(i)) EXPECT_GE(s.start[i], s.finish[p]);
    ++starts[s.start[i]];
    EXPECT_LE(s.finish[i], s.makespan);
  }
  for (auto [t, k] : starts) EXPECT_LE(k, limit) << "slot " << t;
}

TEST(Scheduler, GreedyWithinGrahamBoundOfOptimal) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = random_circuit(rng, 3 + trial % 4, 6 + trial % 7);
    for (std::size_t k : {1u, 2u, 3u}) {
      const auto got = schedule(c, k, SlotModel::unit()).makespan;
      const auto opt = optimal_makespan(c, k);
      EXPECT_GE(got, opt);
      EXPECT_LE(static_cast<double>(got), (2.0 - 1.0 / static_cast<double>(k)) * static_cast<double>(opt));
    }
  }
}

TEST(Scheduler, SchedulesAreValid) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_circuit(rng, 8, 60);
    for (std::size_t k : {std::size_t{1}, std::size_t{3}, kUnlimited}) {
      expect_valid(c, schedule(c, k, SlotModel::unit()), k, SlotModel::unit());
    }
  }
  const auto adder = gen_cla_adder(32);
  for (std::size_t k : {std::size_t{2}, std::size_t{7}, kUnlimited}) expect_valid(adder, schedule(adder, k), k, {});
}

TEST(Scheduler, LimitOneSerializesUnitGates) {
  const auto adder = gen_cla_adder(16);
  EXPECT_EQ(schedule(adder, 1, SlotModel::unit()).makespan, adder.size());
}

TEST(Scheduler, UnlimitedMakespanIsCriticalPath) {
  for (std::size_t n : {8u, 32u, 64u}) {
    const auto adder = gen_cla_adder(n);
    const DependencyGraph g(adder);
    const SlotModel slots;
    EXPECT_EQ(schedule(adder, kUnlimited).makespan, g.critical_path([&](std::size_t i) { return slots(adder[i]); }));
  }
}

TEST(Scheduler, MakespanNonIncreasingInLimit) {
  const auto adder = gen_cla_adder(64);
  const auto prof = parallelism_profile(adder, {}, 20);
  std::uint64_t prev = ~0ull;
  for (auto [limit, m] : prof.makespan) {
    EXPECT_LE(m, prev) << limit;
    prev = m;
  }
  EXPECT_EQ(prof.makespan.rbegin()->second, prof.unlimited_makespan);
}

TEST(Scheduler, SixteenBitAdderSaturatesEarly) {
  const auto prof = parallelism_profile(gen_cla_adder(16));
  EXPECT_LE(prof.saturation, 15u);
}

TEST(Scheduler, TiesBrokenByLowestIndex) {
  // four independent equal gates, two issue slots
  const auto c = parse_circuit("X q0\nX q1\nX q2\nX q3\n");
  const auto s = schedule(c, 2, SlotModel::unit());
  ASSERT_GE(s.cycles.size(), 2u);
  EXPECT_EQ(s.cycles[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.cycles[1], (std::vector<std::size_t>{2, 3}));
}

TEST(Scheduler, EmptyCircuit) {
  const Circuit c(3, "empty");
  EXPECT_EQ(schedule(c, 4).makespan, 0u);
}

TEST(Scheduler, ZeroLimitRejected) {
  EXPECT_THROW(schedule(gen_cla_adder(4), 0), DomainError);
}

TEST(Blocks, CapacityRespected) {
  const auto adder = gen_cla_adder(64);
  const DependencyGraph g(adder);
  for (std::size_t b : {1u, 4u, 16u}) {
    const auto s = schedule_on_blocks(adder, g, BlockModel{b, 9});
    std::map<std::pair<std::uint32_t, std::uint64_t>, int> load;
    for (std::size_t i = 0; i < adder.size(); ++i) {
      for (auto t = s.start[i]; t < s.finish[i]; ++t) load[{s.block_assignment[i], t}] += adder[i].size();
      for (auto p : g.preds(i)) EXPECT_GE(s.start[i], s.finish[p]);
    }
    for (const auto& [key, v] : load) EXPECT_LE(v, 9);
  }
}

TEST(Blocks, UtilizationBounds) {
  const auto adder = gen_cla_adder(128);
  for (std::size_t b : {1u, 9u, 25u, 49u}) {
    const auto u = utilization(adder, b, 9);
    EXPECT_GT(u.utilization, 0.0);
    EXPECT_LE(u.utilization, 1.0);
  }
  EXPECT_NEAR(utilization(adder, 1, 9).utilization, 1.0, 1e-12);
}

TEST(Blocks, UtilizationFallsOnceMakespanPlateaus) {
  const auto adder = gen_cla_adder(128);
  const auto u16 = utilization(adder, 16, 9), u25 = utilization(adder, 25, 9);
  const auto u36 = utilization(adder, 36, 9), u49 = utilization(adder, 49, 9);
  EXPECT_GT(u16.utilization, u25.utilization);
  EXPECT_EQ(u36.makespan, u49.makespan);
  EXPECT_GT(u36.utilization, u49.utilization);
}

TEST(Blocks, InvalidModel) {
  const auto adder = gen_cla_adder(8);
  EXPECT_THROW(utilization(adder, 0, 9), DomainError);
  EXPECT_THROW(utilization(adder, 4, 2), DomainError);
}

}  // namespace
