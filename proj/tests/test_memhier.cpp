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

#include "cqla/default_profile.hpp"
#include "cqla/memhier.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace cqla;

struct Ctx {
  Profile p = default_profile();
  CodeTable codes = CodeTable::from_profile(p);
  TechnologyParams tech = TechnologyParams::from_profile(p);
  TransferTable xfer = TransferTable::from_profile(p);
};

constexpr Encoding S1{CodeId::Steane713, 1}, S2{CodeId::Steane713, 2};
constexpr Encoding B1{CodeId::BaconShor913, 1}, B2{CodeId::BaconShor913, 2};

TEST(TransferTable, EchoesPublishedLatencies) {
  const Ctx c;
  const double want[4][4] = {{0, 0.6, 0.02, 0.2}, {1.3, 0, 1.3, 1.5}, {0.01, 0.5, 0, 0.1}, {0.4, 0.9, 0.4, 0}};
  const Encoding order[4] = {S1, S2, B1, B2};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(transfer_latency(c.xfer, order[i], order[j]), want[i][j]);
  }
}

TEST(TransferTable, RejectsBadEntries) {
  auto p = default_profile();
  p.set_number("memhier.transfer.steane_l1.steane_l1", 0.5);
  EXPECT_THROW(TransferTable::from_profile(p), ConfigError);
  auto q = default_profile();
  q.set_number("memhier.transfer.steane_l1.steane_l2", 0.0);
  EXPECT_THROW(TransferTable::from_profile(q), ConfigError);
  const Ctx c;
  EXPECT_THROW(c.xfer.latency({CodeId::Steane713, 3}, S1), DomainError);
}

TEST(CacheState, LruEviction) {
  CacheState c(3);
  EXPECT_FALSE(c.insert(1));
  EXPECT_FALSE(c.insert(2));
  EXPECT_FALSE(c.insert(3));
  c.touch(1);
  const auto v = c.insert(4);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, 2u);
  EXPECT_TRUE(c.resident(1));
  EXPECT_FALSE(c.resident(2));
  EXPECT_EQ(c.size(), 3u);
  EXPECT_THROW(c.touch(2), DomainError);
  EXPECT_THROW(CacheState(2), ConfigError);
}

TEST(OptimizedFetch, PrefersResidentOperands) {
  const auto circ = parse_circuit("CNOT q0 q1\nCNOT q2 q3\nCNOT q4 q5\n");
  CacheState cache(4);
  cache.insert(2);
  cache.insert(3);
  cache.insert(4);
  const std::vector<std::size_t> ready = {0, 1, 2};
  EXPECT_EQ(optimized_fetch(circ, ready, cache), 1u);
  const std::vector<std::size_t> two = {0, 2};
  EXPECT_EQ(optimized_fetch(circ, two, cache), 2u);
  EXPECT_THROW(optimized_fetch(circ, std::span<const std::size_t>{}, cache), DomainError);
}

TEST(TraceValidator, AcceptsDisjointAndRejectsOverlap) {
  std::vector<TransferEvent> ok = {{0, 1, 0}, {1, 2, 0}, {0, 2, 1}};
  EXPECT_TRUE(validate_trace(ok, 2).ok);
  EXPECT_EQ(validate_trace(ok, 2).max_concurrency, 2u);
  std::vector<TransferEvent> overlap = {{0, 1, 0}, {0.5, 2, 0}};
  EXPECT_FALSE(validate_trace(overlap, 2).ok);
  std::vector<TransferEvent> too_many = {{0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  EXPECT_FALSE(validate_trace(too_many, 2).ok);
}

HierarchyRun run(const Circuit& c, std::size_t cache, FetchPolicy pol, std::size_t par = 10) {
  const Ctx ctx;
  const auto timing = HierarchyTiming::for_code(ctx.codes, ctx.tech, ctx.xfer, CodeId::Steane713);
  return simulate_cache(c, {cache, 144, pol, par}, timing);
}

TEST(CacheSim, CountsAreConsistent) {
  const auto adder = gen_cla_adder(64);
  for (auto pol : {FetchPolicy::Naive, FetchPolicy::Optimized}) {
    const auto r = run(adder, 200, pol);
    EXPECT_EQ(r.hits + r.misses, adder.size());
    EXPECT_GE(r.fetches, r.misses);
    EXPECT_LE(r.write_backs, r.fetches);
    EXPECT_EQ(r.transfers, r.trace.size());
    EXPECT_GE(r.exec_time, r.compute_bound);
    std::set<std::size_t> seen(r.order.begin(), r.order.end());
    EXPECT_EQ(seen.size(), adder.size());
  }
}

TEST(CacheSim, TracesRespectChannelLimit) {
  const auto adder = gen_cla_adder(128);
  for (std::size_t par : {1u, 5u, 10u}) {
    for (auto pol : {FetchPolicy::Naive, FetchPolicy::Optimized}) {
      const auto r = run(adder, 225, pol, par);
      const auto chk = validate_trace(r.trace, par);
      EXPECT_TRUE(chk.ok) << chk.message;
      EXPECT_LE(chk.max_concurrency, par);
    }
  }
}

// With room for every qubit, the only misses are first touches.
TEST(CacheSim, LargeCacheHasOnlyCompulsoryMisses) {
  const auto adder = gen_cla_adder(32);
  std::set<QubitId> seen;
  std::size_t compulsory = 0;
  for (const auto& g : adder.gates()) {
    bool fresh = false;
    for (int i = 0; i < g.size(); ++i) fresh = seen.insert(g.q[static_cast<std::size_t>(i)]).second || fresh;
    compulsory += fresh ? 1 : 0;
  }
  const auto r = run(adder, adder.qubit_count(), FetchPolicy::Naive);
  EXPECT_EQ(r.misses, compulsory);
  EXPECT_EQ(r.write_backs, 0u);
}

TEST(CacheSim, OptimizedNeverWorseThanNaive) {
  for (std::size_t n : {64u, 128u}) {
    const auto adder = gen_cla_adder(n);
    const std::size_t compute = n == 64 ? 144 : 225;
    for (std::size_t cache : {compute, compute + compute / 2, 2 * compute}) {
      EXPECT_GE(run(adder, cache, FetchPolicy::Optimized).hit_rate, run(adder, cache, FetchPolicy::Naive).hit_rate);
    }
  }
}

TEST(CacheSim, NaiveFollowsProgramOrder) {
  const auto adder = gen_cla_adder(16);
  const auto r = run(adder, 20, FetchPolicy::Naive);
  for (std::size_t i = 0; i < r.order.size(); ++i) EXPECT_EQ(r.order[i], i);
}

TEST(CacheSim, RejectsTinyCapacities) {
  const auto adder = gen_cla_adder(8);
  const Ctx ctx;
  const auto timing = HierarchyTiming::for_code(ctx.codes, ctx.tech, ctx.xfer, CodeId::Steane713);
  EXPECT_THROW(simulate_cache(adder, {2, 9, FetchPolicy::Naive, 1}, timing), ConfigError);
  EXPECT_THROW(simulate_cache(adder, {9, 2, FetchPolicy::Naive, 1}, timing), ConfigError);
  EXPECT_THROW(simulate_cache(adder, {9, 9, FetchPolicy::Naive, 0}, timing), ConfigError);
}

TEST(CacheSim, Deterministic) {
  const auto adder = gen_cla_adder(64);
  const auto a = run(adder, 100, FetchPolicy::Optimized), b = run(adder, 100, FetchPolicy::Optimized);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.exec_time, b.exec_time);
}

TEST(L1Speedup, AffineInInverseParallelism) {
  const Ctx c;
  const auto m = l1_speedup_model(c.p, c.codes, c.tech, c.xfer, CodeId::Steane713, 1024, 456);
  // 1/s(par) = a + b/par: three points on one line
  const double y1 = 1 / l1_adder_speedup(m, 1), y5 = 1 / l1_adder_speedup(m, 5), y10 = 1 / l1_adder_speedup(m, 10);
  EXPECT_NEAR((y1 - y5) / (1.0 - 0.2), (y5 - y10) / (0.2 - 0.1), 1e-9);
  EXPECT_NEAR(1.0 / m.speedup_limit(), y10 - (y5 - y10) / (0.2 - 0.1) * 0.1, 1e-9);
  EXPECT_THROW(l1_adder_speedup(m, 0.5), DomainError);
}

TEST(L1Speedup, IncreasesWithParallelism) {
  const Ctx c;
  for (auto code : kAllCodes) {
    const auto m = l1_speedup_model(c.p, c.codes, c.tech, c.xfer, code, 512, 426);
    double prev = 0.0;
    for (double par = 1; par <= 64; par *= 2) {
      const double s = l1_adder_speedup(m, par);
      EXPECT_GT(s, prev);
      EXPECT_LT(s, m.speedup_limit());
      prev = s;
    }
  }
}

TEST(Pipeline, ClosedForm) {
  EXPECT_DOUBLE_EQ(pipelined_adder_speedup(0.5, 4, 4), 8.0);  // two pipelines in parallel
  EXPECT_DOUBLE_EQ(pipelined_adder_speedup(0.0, 10, 2), 2.0);
  EXPECT_DOUBLE_EQ(pipelined_adder_speedup(0.8, 18, 0.88), 0.88 / 0.2);
  EXPECT_THROW(pipelined_adder_speedup(1.5, 1, 1), DomainError);
  EXPECT_THROW(pipelined_adder_speedup(0.5, 0, 1), DomainError);
}

TEST(MixedLevel, OneToTwoMix) {
  const auto r = mixed_level_time(300, {}, 1.0, 10.0, 1.0);
  EXPECT_EQ(r.l1_adds, 100u);
  EXPECT_EQ(r.l2_adds, 200u);
  EXPECT_DOUBLE_EQ(r.total_time, 100 * 1.0 + 200 * 10.0);
  EXPECT_NEAR(r.l1_time_fraction, 100.0 / 2100.0, 1e-15);
}

TEST(MixedLevel, RejectsOverBudget) {
  try {
    mixed_level_time(300, {1, 1}, 10.0, 10.0, 0.02);
    FAIL() << "expected FidelityError";
  } catch (const FidelityError& e) {
    EXPECT_NEAR(e.offending_fraction(), 0.5, 1e-12);
  }
  EXPECT_THROW(check_l1_time_fraction(0.5, 0.02), FidelityError);
  EXPECT_NO_THROW(check_l1_time_fraction(0.01, 0.02));
}

TEST(MixedLevel, PartialPeriod) {
  const auto r = mixed_level_time(4, {1, 2}, 1.0, 1.0, 1.0);
  EXPECT_EQ(r.l1_adds, 2u);
  EXPECT_EQ(r.l2_adds, 2u);
}

}  // namespace
