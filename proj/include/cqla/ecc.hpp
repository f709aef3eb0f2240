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

/**
 * @file ecc.hpp
 * @brief Ion-trap technology parameters and error-correction cost model.
 *
 * Level-1 EC time is recomputed from the syndrome cycle count; level-2
 * values are the tabulated constants (no level-2 movement schedule is
 * modelled). Failure probability follows the local-architecture
 * concatenation estimate with the geometry constant folded into p_th:
 *
 *     P_f(L) = (p_th / r^L) * (p0 / p_th)^(2^L)
 */

#pragma once

#include "cqla/config.hpp"
#include "cqla/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace cqla {

/// Physical operation costs for one technology column (defaults: projected).
struct TechnologyParams {
  double single_gate_time = 1e-6;
  double double_gate_time = 10e-6;
  double measure_time = 10e-6;
  double move_time = 10e-6;
  double split_time = 0.1e-6;
  double cool_time = 0.1e-6;
  double single_gate_fail = 1e-8;
  double double_gate_fail = 1e-7;
  double measure_fail = 1e-8;
  double move_fail_per_um = 5e-8;
  double trap_pitch = 50.0;  // um, trapping region incl. junction
  double cycle_time = 10e-6;

  /// Unweighted mean of the gate, measurement, and one-pitch move failure rates.
  double mean_failure() const {
    return (single_gate_fail + double_gate_fail + measure_fail + move_fail_per_um * trap_pitch) / 4.0;
  }

  void validate() const {
    for (double t : {single_gate_time, double_gate_time, measure_time, move_time, split_time,
                     cool_time, cycle_time, trap_pitch}) {
      if (!(t > 0.0)) throw ConfigError("technology times and trap pitch must be > 0");
    }
    for (double p : {single_gate_fail, double_gate_fail, measure_fail, move_fail_per_um * trap_pitch}) {
      if (!(p >= 0.0 && p < 1.0)) throw ConfigError("failure probabilities must lie in [0,1)");
    }
  }

  static TechnologyParams from_profile(const Profile& p, const std::string& prefix = "tech.") {
    TechnologyParams t;
    t.single_gate_time = p.number_or(prefix + "single_gate_time", t.single_gate_time);
    t.double_gate_time = p.number_or(prefix + "double_gate_time", t.double_gate_time);
    t.measure_time = p.number_or(prefix + "measure_time", t.measure_time);
    t.move_time = p.number_or(prefix + "move_time", t.move_time);
    t.split_time = p.number_or(prefix + "split_time", t.split_time);
    t.cool_time = p.number_or(prefix + "cool_time", t.cool_time);
    t.single_gate_fail = p.number_or(prefix + "single_gate_fail", t.single_gate_fail);
    t.double_gate_fail = p.number_or(prefix + "double_gate_fail", t.double_gate_fail);
    t.measure_fail = p.number_or(prefix + "measure_fail", t.measure_fail);
    t.move_fail_per_um = p.number_or(prefix + "move_fail", t.move_fail_per_um);
    t.trap_pitch = p.number_or(prefix + "trap_pitch", t.trap_pitch);
    t.cycle_time = p.number_or(prefix + "cycle_time", t.cycle_time);
    t.validate();
    return t;
  }
};

enum class CodeId { Steane713, BaconShor913 };

inline constexpr std::array<CodeId, 2> kAllCodes = {CodeId::Steane713, CodeId::BaconShor913};

/// Profile key fragment for a code.
inline std::string_view code_key(CodeId c) {
  return c == CodeId::Steane713 ? "steane" : "bacon_shor";
}

/// Short label as printed in transfer tables ("7", "9").
inline std::string_view code_label(CodeId c) { return c == CodeId::Steane713 ? "7" : "9"; }

inline CodeId parse_code(std::string_view s) {
  if (s == "steane" || s == "7" || s == "steane713" || s == "St") return CodeId::Steane713;
  if (s == "bacon_shor" || s == "9" || s == "bacon-shor" || s == "baconshor913" || s == "BSr") {
    return CodeId::BaconShor913;
  }
  throw ConfigError("unknown code '" + std::string(s) + "'");
}

/// A code at a recursion level, the unit that transfer networks connect.
struct Encoding {
  CodeId code = CodeId::Steane713;
  int level = 2;
  friend bool operator==(const Encoding&, const Encoding&) = default;
};

/// Per (code, level) error-correction metrics.
struct CodeMetrics {
  CodeId code = CodeId::Steane713;
  int level = 1;
  double ec_time = 0.0;  // tabulated value
  double transversal_gate_time = 0.0;
  double tile_area = 0.0;  // mm^2
  int data_qubit_count = 0;
  int ancilla_qubit_count = 0;
  int ec_cycles_per_syndrome = 0;  // level 1 only
};

/// Metrics for both codes at levels 1 and 2, plus the EC-procedure constants.
class CodeTable {
 public:
  CodeTable() = default;

  static CodeTable from_profile(const Profile& p) {
    CodeTable t;
    t.syndromes_per_ec_ = static_cast<int>(p.number_or("ecc.syndromes_per_ec", 2));
    t.toffoli_rounds_ = static_cast<int>(p.number_or("ecc.toffoli_cnot_rounds", 15));
    for (CodeId c : kAllCodes) {
      for (int level = 1; level <= 2; ++level) {
        const std::string base =
            "ecc." + std::string(code_key(c)) + ".l" + std::to_string(level) + ".";
        CodeMetrics m;
        m.code = c;
        m.level = level;
        m.ec_time = p.number(base + "ec_time");
        m.transversal_gate_time = p.number(base + "transversal_gate_time");
        m.tile_area = p.number(base + "tile_area");
        m.data_qubit_count = static_cast<int>(p.number(base + "data_qubits"));
        m.ancilla_qubit_count = static_cast<int>(p.number(base + "ancilla_qubits"));
        if (level == 1) {
          m.ec_cycles_per_syndrome = static_cast<int>(p.number(base + "ec_cycles_per_syndrome"));
        }
        if (!(m.ec_time > 0 && m.transversal_gate_time > 0 && m.tile_area > 0 &&
              m.data_qubit_count > 0 && m.ancilla_qubit_count > 0) ||
            (level == 1 && m.ec_cycles_per_syndrome <= 0)) {
          throw ConfigError("code metrics under '" + base + "' must be positive");
        }
        t.at_mut(c, level) = m;
      }
    }
    return t;
  }

  const CodeMetrics& at(CodeId c, int level) const {
    if (level < 1 || level > 2) {
      throw DomainError("code metrics exist for levels 1 and 2, got " + std::to_string(level));
    }
    return metrics_[index(c, level)];
  }

  int syndromes_per_ec() const { return syndromes_per_ec_; }
  int toffoli_rounds() const { return toffoli_rounds_; }

 private:
  static std::size_t index(CodeId c, int level) {
    return static_cast<std::size_t>(c == CodeId::Steane713 ? 0 : 2) + static_cast<std::size_t>(level - 1);
  }
  CodeMetrics& at_mut(CodeId c, int level) { return metrics_[index(c, level)]; }

  std::array<CodeMetrics, 4> metrics_{};
  int syndromes_per_ec_ = 2;
  int toffoli_rounds_ = 15;
};

/// Duration of one error-correction step.
///
/// Level 0 needs none; level 1 is two syndrome extractions of
/// `ec_cycles_per_syndrome` clock cycles each; level 2 is the tabulated value.
inline double ec_time(const CodeTable& codes, CodeId code, int level, const TechnologyParams& tech) {
  switch (level) {
    case 0: return 0.0;
    case 1: {
      const auto& m = codes.at(code, 1);
      return codes.syndromes_per_ec() * m.ec_cycles_per_syndrome * tech.cycle_time;
    }
    case 2: return codes.at(code, 2).ec_time;
    default: throw DomainError("ec_time: unsupported recursion level " + std::to_string(level));
  }
}

enum class GateKind { OneQubit, Cnot, Toffoli, Measure };

/// Fault-tolerant logical gate latency, EC included.
///
/// A Toffoli is decomposed into `toffoli_rounds` (15) two-qubit gates, each
/// followed by EC. Measurement is a transversal readout with no trailing EC.
inline double logical_gate_time(const CodeTable& codes, CodeId code, int level, GateKind kind,
                                const TechnologyParams& tech) {
  if (level < 1 || level > 2) {
    throw DomainError("logical_gate_time: unsupported recursion level " + std::to_string(level));
  }
  const double transversal = codes.at(code, level).transversal_gate_time;
  const double ec = ec_time(codes, code, level, tech);
  switch (kind) {
    case GateKind::OneQubit:
    case GateKind::Cnot: return transversal + ec;
    case GateKind::Toffoli: return codes.toffoli_rounds() * (transversal + ec);
    case GateKind::Measure: return transversal;
  }
  throw DomainError("logical_gate_time: unsupported gate kind");
}

/// Concatenated failure probability at recursion level `level`, saturating at 1.
inline double failure_prob(int level, double p0, double p_th, double r) {
  if (level < 0) throw DomainError("failure_prob: level must be >= 0");
  if (!(p0 > 0.0) || !(p_th > 0.0) || !(r >= 1.0)) {
    throw DomainError("failure_prob: requires p0 > 0, p_th > 0, r >= 1");
  }
  if (level == 0) return std::min(p0, 1.0);
  // (p0/p_th)^(2^L) by repeated squaring.
  double ratio = p0 / p_th;
  for (int i = 0; i < level && ratio < 1e300; ++i) ratio *= ratio;
  const double pf = p_th / std::pow(r, level) * ratio;
  return std::isfinite(pf) ? std::min(pf, 1.0) : 1.0;
}

/// Inputs to the level-mix fidelity budget.
struct FidelityBudget {
  double p_th = 7.5e-5;
  double r = 12.0;
  double p0 = 0.0;
  double time_steps = 0.0;      // K
  double logical_qubits = 0.0;  // Q
  double l1_time_fraction = 0.0;

  double target() const { return 1.0 / (time_steps * logical_qubits); }

  static FidelityBudget from_profile(const Profile& p, CodeId code, const TechnologyParams& tech) {
    FidelityBudget b;
    b.p_th = p.number("fidelity.p_th." + std::string(code_key(code)));
    b.r = p.number("fidelity.r");
    b.p0 = p.number_or("fidelity.p0", tech.mean_failure());
    b.time_steps = p.number("fidelity.time_steps");
    b.logical_qubits = p.number("fidelity.logical_qubits");
    if (!(b.time_steps >= 1.0 && b.logical_qubits >= 1.0)) {
      throw ConfigError("fidelity.time_steps and fidelity.logical_qubits must be >= 1");
    }
    return b;
  }
};

enum class BudgetStatus { Ok, AboveThreshold, Level2Insufficient };

struct BudgetResult {
  double fraction = 0.0;  // max share of execution time at level 1
  double op_fraction = 0.0;  // the same limit expressed as a share of operations
  BudgetStatus status = BudgetStatus::Ok;
  std::string diagnostic;
};

/// Largest fraction of execution time that may be spent at level 1.
///
/// With S = K*Q operations split n1 + n2 = S, total time T = n1*t_l1 + n2*t_l2
/// and f = n1*t_l1 / T, the requirement n1*P_f(1) + n2*P_f(2) <= 1 bounds the
/// level-1 operation share by (1/S - P_f(2)) / (P_f(1) - P_f(2)).
inline BudgetResult l1_time_budget(const FidelityBudget& b, double t_l1, double t_l2) {
  if (!(t_l1 > 0.0) || !(t_l2 > 0.0)) throw DomainError("l1_time_budget: times must be > 0");
  BudgetResult res;
  if (b.p0 >= b.p_th) {
    res.status = BudgetStatus::AboveThreshold;
    res.diagnostic = "above threshold: p0 >= p_th, concatenation gives no gain";
    return res;
  }
  const double target = b.target();
  const double p1 = failure_prob(1, b.p0, b.p_th, b.r);
  const double p2 = failure_prob(2, b.p0, b.p_th, b.r);
  if (p2 > target) {
    res.status = BudgetStatus::Level2Insufficient;
    res.diagnostic = "level 2 alone exceeds the 1/(K*Q) failure target";
    return res;
  }
  double phi = 1.0;
  if (p1 > target) phi = (target - p2) / (p1 - p2);
  phi = std::clamp(phi, 0.0, 1.0);
  res.op_fraction = phi;
  res.fraction = phi * t_l1 / (phi * t_l1 + (1.0 - phi) * t_l2);
  return res;
}

/// Share of execution time spent at level 1 when a fraction `op_fraction` of
/// operations (or equal-sized additions) runs at level 1.
inline double l1_time_share(double op_fraction, double t_l1, double t_l2) {
  const double l1 = op_fraction * t_l1;
  const double total = l1 + (1.0 - op_fraction) * t_l2;
  return total > 0.0 ? l1 / total : 0.0;
}

}  // namespace cqla
