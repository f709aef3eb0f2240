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
 * @file comms.hpp
 * @brief Aggregate communication against computation time for modular
 * exponentiation and the QFT on a mesh of compute blocks.
 */

#pragma once

#include "cqla/circuit.hpp"
#include "cqla/config.hpp"
#include "cqla/ecc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace cqla {

struct MeshSpec {
  std::size_t rows = 6;
  std::size_t cols = 6;
  double channels_per_edge = 2.0;
  double teleport_time = 0.0;  // seconds per logical-qubit hop

  std::size_t blocks() const { return rows * cols; }

  void validate() const {
    if (rows == 0 || cols == 0) throw DomainError("mesh needs at least one row and column");
    if (!(channels_per_edge > 0.0)) throw DomainError("mesh channels_per_edge must be > 0");
    if (teleport_time < 0.0) throw DomainError("teleport time must be >= 0");
  }

  /// `comms.mesh.*`; teleport time defaults to one level-2 EC step of `code`.
  static MeshSpec from_profile(const Profile& p, const CodeTable& codes, CodeId code) {
    MeshSpec m;
    m.rows = static_cast<std::size_t>(p.number_or("comms.mesh.rows", 6));
    m.cols = static_cast<std::size_t>(p.number_or("comms.mesh.cols", 6));
    m.channels_per_edge = p.number_or("comms.mesh.channels_per_edge", 2);
    m.teleport_time = p.number_or("comms.teleport_time." + std::string(code_key(code)),
                                  codes.at(code, 2).ec_time);
    m.validate();
    return m;
  }
};

/// Level-2 gate latencies used for computation time.
struct GateTimes {
  double one_qubit = 0.0;
  double two_qubit = 0.0;
  double toffoli = 0.0;

  static GateTimes at_level(const CodeTable& codes, const TechnologyParams& tech, CodeId code, int level) {
    return {logical_gate_time(codes, code, level, GateKind::OneQubit, tech),
            logical_gate_time(codes, code, level, GateKind::Cnot, tech),
            logical_gate_time(codes, code, level, GateKind::Toffoli, tech)};
  }
};

struct CommReport {
  double total_comm_time = 0.0;
  double total_comp_time = 0.0;
  std::map<std::string, double> phases;

  double ratio() const { return total_comp_time > 0.0 ? total_comm_time / total_comp_time : 0.0; }
};

/// Modular exponentiation as a stream of n-bit adders. Each Toffoli brings its
/// three operands into a block and sends them back (6 teleports), spread over
/// the block's perimeter channels.
inline CommReport modexp_comm_vs_comp(std::size_t n, const MeshSpec& mesh, const GateTimes& times,
                                      std::size_t adders_per_modular_addition = 2) {
  if (n < 2) throw DomainError("modexp_comm_vs_comp: n must be >= 2");
  mesh.validate();
  const auto adder = gen_cla_adder(n);
  const auto calls = static_cast<double>(gen_modexp_schedule(n, adders_per_modular_addition).size());
  const auto toffolis = static_cast<double>(adder.count(GateType::Toffoli));
  const auto two = static_cast<double>(adder.count_arity(2));
  const auto one = static_cast<double>(adder.count_arity(1));

  CommReport r;
  r.phases["toffoli_compute"] = calls * toffolis * times.toffoli;
  r.phases["other_compute"] = calls * (two * times.two_qubit + one * times.one_qubit);
  r.phases["transfer_work"] = calls * toffolis * 6.0 * mesh.teleport_time;  // channel-seconds
  r.phases["operand_teleport"] = r.phases["transfer_work"] / mesh.channels_per_edge;
  r.total_comp_time = r.phases["toffoli_compute"] + r.phases["other_compute"];
  r.total_comm_time = r.phases["operand_teleport"];
  return r;
}

/// QFT on n qubits spread evenly over the mesh. Communication is the
/// all-to-all personalized exchange bounded by bisection bandwidth, plus the
/// mesh diameter in hops; computation is the gate work divided over blocks.
inline CommReport qft_comm_vs_comp(std::size_t n, const MeshSpec& mesh, const GateTimes& times) {
  if (n < 2) throw DomainError("qft_comm_vs_comp: n must be >= 2");
  mesh.validate();
  const double nn = static_cast<double>(n);
  const double blocks = static_cast<double>(mesh.blocks());
  const double bisection = 2.0 * static_cast<double>(std::min(mesh.rows, mesh.cols)) * mesh.channels_per_edge;
  const double crossing = nn * nn / 4.0 * (1.0 - 1.0 / blocks);
  const double hops = static_cast<double>(mesh.rows - 1 + mesh.cols - 1);

  CommReport r;
  r.phases["exchange"] = crossing * mesh.teleport_time / bisection;
  r.phases["latency"] = hops * mesh.teleport_time;
  r.phases["two_qubit_compute"] = nn * (nn - 1.0) / 2.0 * times.two_qubit / blocks;
  r.phases["one_qubit_compute"] = nn * times.one_qubit / blocks;
  r.total_comm_time = r.phases["exchange"] + r.phases["latency"];
  r.total_comp_time = r.phases["two_qubit_compute"] + r.phases["one_qubit_compute"];
  return r;
}

/// Worst-case qubits moved into or out of one compute block: all of its data.
inline std::size_t worst_case_block_traffic(CodeId /*code*/, std::size_t block_data = 9) {
  return block_data;
}

}  // namespace cqla
