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

#include "adder_oracle.hpp"
#include "cqla/circuit.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace cqla;
using cqla::testing::adder_correct;

TEST(Adder, ExhaustiveUpToSixBits) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto adder = gen_cla_adder(n);
    for (std::uint64_t a = 0; a < (1u << n); ++a) {
      for (std::uint64_t b = 0; b < (1u << n); ++b) {
        ASSERT_TRUE(adder_correct(adder, n, a, b)) << "n=" << n << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Adder, RandomTwelveBit) {
  const auto adder = gen_cla_adder(12);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto a = rng() & 0xfff, b = rng() & 0xfff;
    ASSERT_TRUE(adder_correct(adder, 12, a, b)) << a << '+' << b;
  }
}

TEST(Adder, RandomWideAdders) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {17u, 31u, 33u, 64u}) {
    const auto adder = gen_cla_adder(n);
    for (int i = 0; i < 200; ++i) {
      const auto mask = n >= 64 ? ~0ull : ((1ull << n) - 1);
      ASSERT_TRUE(adder_correct(adder, n, rng() & mask, rng() & mask)) << n;
    }
  }
}

TEST(Adder, WidthMatchesLayoutFormula) {
  for (std::size_t n : {4u, 16u, 64u, 128u}) {
    const AdderLayout L(n);
    std::size_t want = 3 * n - 1;
    for (std::size_t t = 1; (std::size_t{1} << (t + 1)) <= n - 1; ++t) want += ((n - 1) >> t) - 1;
    EXPECT_EQ(L.qubits, want) << n;
    EXPECT_EQ(gen_cla_adder(n).qubit_count(), L.qubits);
  }
}

TEST(Adder, DepthGrowsLogarithmically) {
  auto depth = [](std::size_t n) {
    const auto c = gen_cla_adder(n);
    return DependencyGraph(c).critical_path([](std::size_t) { return 1u; });
  };
  const auto d64 = depth(64), d128 = depth(128), d256 = depth(256);
  // doubling the width adds a constant number of layers
  EXPECT_EQ(d128 - d64, d256 - d128);
  EXPECT_LT(d256, 64u);
}

TEST(Adder, ZeroBitsRejected) { EXPECT_THROW(gen_cla_adder(0), DomainError); }

TEST(Qft, GateCounts) {
  const auto q = gen_qft(10);
  EXPECT_EQ(q.count(GateType::H), 10u);
  EXPECT_EQ(q.count(GateType::CPhase), 45u);
}

TEST(Qft, HasNoClassicalSemantics) {
  const auto q = gen_qft(3);
  EXPECT_THROW(simulate_classical(q, BitString(3, 0)), UnsupportedGateError);
}

TEST(Circuit, TextRoundTrip) {
  const auto c = gen_cla_adder(9);
  const auto back = parse_circuit(to_text(c));
  ASSERT_EQ(back.size(), c.size());
  EXPECT_EQ(back.qubit_count(), c.qubit_count());
  EXPECT_EQ(back.label(), c.label());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back[i].type, c[i].type);
    EXPECT_EQ(back[i].q, c[i].q);
  }
}

TEST(Circuit, ParserRejectsMalformedInput) {
  EXPECT_THROW(parse_circuit("FOO q1\n"), DomainError);
  EXPECT_THROW(parse_circuit("CNOT q1\n"), DomainError);
  EXPECT_THROW(parse_circuit("CNOT q1 q1\n"), DomainError);
  EXPECT_THROW(parse_circuit("X q1 q2\n"), DomainError);
  EXPECT_THROW(parse_circuit("# qubits 2\nX q5\n"), DomainError);
}

TEST(Circuit, ParserAcceptsAliases) {
  const auto c = parse_circuit("CX q0 q1\nCCX q0 q1 q2\n");
  EXPECT_EQ(c[0].type, GateType::CNOT);
  EXPECT_EQ(c[1].type, GateType::Toffoli);
  EXPECT_EQ(c.qubit_count(), 3u);
}

TEST(Circuit, MissingFileIsIoError) { EXPECT_THROW(load_circuit("/nonexistent.qc"), IoError); }

TEST(Circuit, OperandOutOfRange) {
  Circuit c(2, "x");
  EXPECT_THROW(c.add(GateType::X, {2}), DomainError);
  EXPECT_THROW(c.add(GateType::CNOT, {0}), DomainError);
}

TEST(DependencyGraph, EdgesFollowSharedOperands) {
  const auto c = parse_circuit("X q0\nX q1\nCNOT q0 q1\nX q2\nX q0\n");
  const DependencyGraph g(c);
  EXPECT_TRUE(g.preds(0).empty());
  EXPECT_EQ(g.preds(2).size(), 2u);
  EXPECT_TRUE(g.preds(3).empty());
  ASSERT_EQ(g.preds(4).size(), 1u);
  EXPECT_EQ(g.preds(4)[0], 2u);
}

TEST(DependencyGraph, AcyclicAndTopological) {
  const auto c = gen_cla_adder(32);
  const DependencyGraph g(c);
  const auto order = g.topological_order();
  ASSERT_EQ(order.size(), c.size());
  std::vector<std::size_t> pos(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (auto s : g.succs(i)) EXPECT_LT(pos[i], pos[s]);
  }
}

TEST(Modexp, CallCount) {
  const auto s = gen_modexp_schedule(16);
  EXPECT_EQ(s.size(), 2u * 16 * 16 * 2);
  const auto last = s[s.size() - 1];
  EXPECT_EQ(last.exponent_bit, 31u);
  EXPECT_EQ(last.multiplier_bit, 15u);
  EXPECT_EQ(last.step, 1u);
  EXPECT_THROW(gen_modexp_schedule(1), DomainError);
}

TEST(Bits, StringRoundTrip) {
  EXPECT_EQ(bits_to_string(bits_from_string("0110")), "0110");
  EXPECT_THROW(bits_from_string("012"), DomainError);
}

}  // namespace
