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
#include "cqla/ecc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace cqla;

// Direct evaluation in long double, written independently of the library.
long double direct_pf(int level, long double p0, long double pth, long double r) {
  if (level == 0) return p0;
  const long double pf = pth / std::pow(r, static_cast<long double>(level)) *
                         std::pow(p0 / pth, std::pow(2.0L, static_cast<long double>(level)));
  return std::min(pf, 1.0L);
}

struct Ctx {
  Profile p = default_profile();
  CodeTable codes = CodeTable::from_profile(p);
  TechnologyParams tech = TechnologyParams::from_profile(p);
};

TEST(FailureProb, MatchesDirectEvaluation) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> lvl(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const int L = lvl(rng);
    const double pth = std::pow(10.0, -5.0 + 3.0 * u(rng));
    const double p0 = pth * (0.001 + 0.998 * u(rng));
    const double r = 1.0 + 20.0 * u(rng);
    const double got = failure_prob(L, p0, pth, r);
    const auto want = direct_pf(L, p0, pth, r);
    if (want == 0.0L) {
      EXPECT_EQ(got, 0.0);
    } else {
      EXPECT_LE(std::fabs((static_cast<long double>(got) - want) / want), 1e-12L) << L << ' ' << p0;
    }
  }
}

TEST(FailureProb, LevelZeroIsP0) {
  EXPECT_EQ(failure_prob(0, 3.7e-6, 7.5e-5, 12), 3.7e-6);
}

TEST(FailureProb, DecreasesWithLevelBelowThreshold) {
  double prev = 1.0;
  for (int L = 0; L <= 4; ++L) {
    const double pf = failure_prob(L, 6.55e-7, 7.5e-5, 12);
    EXPECT_LT(pf, prev);
    prev = pf;
  }
}

TEST(FailureProb, AboveThresholdSaturatesAtOne) {
  EXPECT_EQ(failure_prob(6, 1e-3, 7.5e-5, 12), 1.0);
}

TEST(FailureProb, RejectsBadInputs) {
  EXPECT_THROW(failure_prob(-1, 1e-6, 7.5e-5, 12), DomainError);
  EXPECT_THROW(failure_prob(1, 0.0, 7.5e-5, 12), DomainError);
  EXPECT_THROW(failure_prob(1, 1e-6, 7.5e-5, 0.5), DomainError);
}

TEST(EcTime, SteaneLevelOneFromCycles) {
  const Ctx c;
  EXPECT_NEAR(ec_time(c.codes, CodeId::Steane713, 1, c.tech), 2 * 154 * 10e-6, 1e-15);
  EXPECT_EQ(ec_time(c.codes, CodeId::Steane713, 0, c.tech), 0.0);
  EXPECT_THROW(ec_time(c.codes, CodeId::Steane713, 3, c.tech), DomainError);
}

TEST(EcTime, LevelRatioIsAboutTwoOrdersOfMagnitude) {
  const Ctx c;
  for (auto code : kAllCodes) {
    const double ratio = ec_time(c.codes, code, 2, c.tech) / ec_time(c.codes, code, 1, c.tech);
    EXPECT_GE(ratio, 50.0);
    EXPECT_LE(ratio, 300.0);
  }
}

TEST(EcTime, MonotoneInLevel) {
  const Ctx c;
  for (auto code : kAllCodes) {
    EXPECT_LT(ec_time(c.codes, code, 0, c.tech), ec_time(c.codes, code, 1, c.tech));
    EXPECT_LT(ec_time(c.codes, code, 1, c.tech), ec_time(c.codes, code, 2, c.tech));
  }
}

TEST(GateTime, ToffoliIsFifteenCnots) {
  const Ctx c;
  for (auto code : kAllCodes) {
    for (int l = 1; l <= 2; ++l) {
      EXPECT_DOUBLE_EQ(logical_gate_time(c.codes, code, l, GateKind::Toffoli, c.tech),
                       15.0 * logical_gate_time(c.codes, code, l, GateKind::Cnot, c.tech));
    }
  }
}

TEST(GateTime, CnotIsTransversalPlusEc) {
  const Ctx c;
  EXPECT_NEAR(logical_gate_time(c.codes, CodeId::Steane713, 1, GateKind::Cnot, c.tech), 6.2e-3 + 3.08e-3, 1e-12);
  EXPECT_NEAR(logical_gate_time(c.codes, CodeId::Steane713, 2, GateKind::Cnot, c.tech), 0.8, 1e-12);
}

TEST(Technology, MeanFailure) {
  const TechnologyParams t;
  EXPECT_NEAR(t.mean_failure(), (1e-8 + 1e-7 + 1e-8 + 2.5e-6) / 4.0, 1e-20);
}

TEST(CodeTable, RejectsLevelOutOfRange) {
  const Ctx c;
  EXPECT_THROW(c.codes.at(CodeId::Steane713, 0), DomainError);
  EXPECT_THROW(c.codes.at(CodeId::Steane713, 3), DomainError);
}

TEST(CodeTable, MissingKeyIsConfigError) {
  auto p = Profile::parse("ecc.syndromes_per_ec = 2\n");
  EXPECT_THROW(CodeTable::from_profile(p), ConfigError);
}

TEST(ParseCode, AcceptsAliases) {
  EXPECT_EQ(parse_code("steane"), CodeId::Steane713);
  EXPECT_EQ(parse_code("9"), CodeId::BaconShor913);
  EXPECT_THROW(parse_code("surface"), ConfigError);
}

TEST(Budget, DefaultProfileGivesAboutTwoPercent) {
  const Ctx c;
  const auto b = FidelityBudget::from_profile(c.p, CodeId::Steane713, c.tech);
  const auto r = l1_time_budget(b, ec_time(c.codes, CodeId::Steane713, 1, c.tech),
                                ec_time(c.codes, CodeId::Steane713, 2, c.tech));
  EXPECT_EQ(r.status, BudgetStatus::Ok);
  EXPECT_NEAR(r.fraction, 0.02, 0.01);
}

// Independent restatement of the budget: solve n1*P1 + (S-n1)*P2 = 1 for n1.
TEST(Budget, MatchesOperationCountOracle) {
  FidelityBudget b;
  b.p0 = 6.55e-7;
  b.time_steps = 5.43e5;
  b.logical_qubits = 5808;
  const double S = b.time_steps * b.logical_qubits;
  const double p1 = (7.5e-5 / 12) * std::pow(6.55e-7 / 7.5e-5, 2);
  const double p2 = (7.5e-5 / 144) * std::pow(6.55e-7 / 7.5e-5, 4);
  const double n1 = (1.0 - S * p2) / (p1 - p2);
  const double t1 = 3.08e-3, t2 = 0.3;
  const double want = n1 * t1 / (n1 * t1 + (S - n1) * t2);
  const auto r = l1_time_budget(b, t1, t2);
  EXPECT_NEAR(r.fraction, want, 1e-9 * want);
}

TEST(Budget, AboveThreshold) {
  FidelityBudget b;
  b.p0 = 1e-4;
  b.time_steps = 1;
  b.logical_qubits = 1;
  const auto r = l1_time_budget(b, 1e-3, 0.1);
  EXPECT_EQ(r.status, BudgetStatus::AboveThreshold);
  EXPECT_EQ(r.fraction, 0.0);
}

TEST(Budget, LooseTargetAllowsAllLevelOne) {
  FidelityBudget b;
  b.p0 = 6.55e-7;
  b.time_steps = 1;
  b.logical_qubits = 1;
  EXPECT_DOUBLE_EQ(l1_time_budget(b, 1e-3, 0.1).fraction, 1.0);
}

TEST(Budget, TightTargetMakesLevelTwoInsufficient) {
  FidelityBudget b;
  b.p0 = 6.55e-7;
  b.time_steps = 1e15;
  b.logical_qubits = 1e6;
  EXPECT_EQ(l1_time_budget(b, 1e-3, 0.1).status, BudgetStatus::Level2Insufficient);
}

TEST(Budget, TimeShareIsMonotoneInOperationShare) {
  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double f = l1_time_share(i / 10.0, 0.02, 0.8);
    EXPECT_GT(f, prev);
    prev = f;
  }
}

}  // namespace
