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
 * @file layout.hpp
 * @brief Area of a memory/compute-specialized layout against the
 * uniform-fabric baseline, and superblock bandwidth sizing.
 *
 * Baseline: every logical data qubit sits in a tile with two ancilla tiles
 * (data:ancilla 1:2) of the Steane level-2 footprint, scaled by an
 * interconnect multiplier. Specialized layout: memory tiles share one
 * ancilla per eight data qubits; each compute block is 9 data + 18 ancilla =
 * 27 tiles. Per-region multipliers absorb channel overhead.
 */

#pragma once

#include "cqla/config.hpp"
#include "cqla/ecc.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cqla {

struct RegionLayout {
  double memory_data_qubits = 0.0;
  double memory_ratio_data = 8.0;  // data : ancilla
  double memory_ratio_ancilla = 1.0;
  std::size_t compute_blocks = 0;
  std::size_t block_data = 9;
  std::size_t block_ancilla = 18;
  std::size_t channels_per_block_edge = 2;
  Encoding memory{CodeId::Steane713, 2};
  Encoding compute{CodeId::Steane713, 2};

  std::size_t block_tiles() const { return block_data + block_ancilla; }
  double memory_tiles() const {
    return memory_data_qubits * (1.0 + memory_ratio_ancilla / memory_ratio_data);
  }

  void validate() const {
    if (!(memory_data_qubits >= 0.0)) throw ConfigError("memory qubit count must be >= 0");
    if (!(memory_ratio_data > 0.0) || memory_ratio_ancilla < 0.0) {
      throw ConfigError("memory data:ancilla ratio must have a positive data term");
    }
    if (block_data == 0) throw ConfigError("compute block must hold data qubits");
  }
};

/// Region multipliers and the baseline scaling; fitted, not derived.
struct AreaOverheads {
  double qla_interconnect = 1.0;
  double memory = 1.0;
  double compute = 1.0;
  bool calibrated = false;

  static AreaOverheads from_profile(const Profile& p, CodeId code) {
    AreaOverheads o;
    const std::string ck(code_key(code));
    o.qla_interconnect = p.number("layout.qla_interconnect_multiplier");
    o.memory = p.number("layout.memory_overhead_multiplier");
    o.compute = p.number("layout.compute_overhead_multiplier." + ck);
    o.calibrated = p.calibrated("layout.qla_interconnect_multiplier") ||
                   p.calibrated("layout.memory_overhead_multiplier") ||
                   p.calibrated("layout.compute_overhead_multiplier." + ck);
    if (!(o.qla_interconnect > 0.0 && o.memory > 0.0 && o.compute > 0.0)) {
      throw ConfigError("layout overhead multipliers must be > 0");
    }
    return o;
  }
};

struct AreaReport {
  double qla_area = 0.0;   // mm^2
  double cqla_area = 0.0;  // mm^2
  double area_factor = 0.0;
  double memory_area = 0.0;
  double compute_area = 0.0;
  bool calibrated = false;
};

inline AreaReport area(const RegionLayout& layout, const CodeTable& codes, const AreaOverheads& o) {
  layout.validate();
  const double baseline_tile = codes.at(CodeId::Steane713, 2).tile_area;
  const double memory_tile = codes.at(layout.memory.code, layout.memory.level).tile_area;
  const double compute_tile = codes.at(layout.compute.code, layout.compute.level).tile_area;
  AreaReport r;
  r.qla_area = layout.memory_data_qubits * 3.0 * baseline_tile * o.qla_interconnect;
  r.memory_area = layout.memory_tiles() * memory_tile * o.memory;
  r.compute_area = static_cast<double>(layout.compute_blocks * layout.block_tiles()) * compute_tile * o.compute;
  r.cqla_area = r.memory_area + r.compute_area;
  if (!(r.cqla_area > 0.0)) throw DomainError("layout has zero area");
  r.area_factor = r.qla_area / r.cqla_area;
  r.calibrated = o.calibrated;
  return r;
}

/// Logical qubits needed by n-bit modular exponentiation: tabulated per size,
/// otherwise `layout.logical_qubits_per_bit * n`.
inline double logical_qubits_for(const Profile& p, std::size_t n) {
  const auto key = "layout.logical_qubits." + std::to_string(n);
  if (p.has(key)) return p.number(key);
  return p.number("layout.logical_qubits_per_bit") * static_cast<double>(n);
}

/// Specialized layout for an n-bit run with `blocks` compute blocks in `code`.
inline RegionLayout layout_for(const Profile& p, std::size_t n, std::size_t blocks, CodeId code) {
  RegionLayout l;
  l.memory_data_qubits = logical_qubits_for(p, n);
  l.memory_ratio_data = p.number_or("layout.memory_ratio.data", 8.0);
  l.memory_ratio_ancilla = p.number_or("layout.memory_ratio.ancilla", 1.0);
  l.block_data = static_cast<std::size_t>(p.number_or("layout.block_data", 9));
  l.block_ancilla = static_cast<std::size_t>(p.number_or("layout.block_ancilla", 18));
  l.channels_per_block_edge = static_cast<std::size_t>(p.number_or("layout.channels_per_block_edge", 2));
  l.compute_blocks = blocks;
  l.memory = {code, 2};
  l.compute = {code, 2};
  return l;
}

// ---------------------------------------------------------------------------
// Bandwidth

struct BandwidthCurves {
  std::vector<std::size_t> sizes;
  std::vector<double> available;
  std::vector<double> required;
  std::vector<double> worst_case_required;
  std::optional<std::size_t> crossover;
};

/// Perimeter supply 4*sqrt(B)*c against volume demand B*d. The worst case
/// moves every data qubit of a block, each at a third of a Toffoli's demand.
inline BandwidthCurves bandwidth_curves(double demand_per_block, double channels_per_edge,
                                        const std::vector<std::size_t>& sizes,
                                        std::size_t block_data = 9) {
  if (!(demand_per_block > 0.0)) throw DomainError("bandwidth_curves: demand must be > 0");
  if (!(channels_per_edge > 0.0)) throw DomainError("bandwidth_curves: channels must be > 0");
  BandwidthCurves out;
  const double per_qubit = demand_per_block / 3.0;
  for (auto b : sizes) {
    const double bb = static_cast<double>(b);
    const double avail = 4.0 * std::sqrt(bb) * channels_per_edge;
    const double req = bb * demand_per_block;
    out.sizes.push_back(b);
    out.available.push_back(avail);
    out.required.push_back(req);
    out.worst_case_required.push_back(bb * static_cast<double>(block_data) * per_qubit);
    if (!out.crossover && req >= avail * (1.0 - 1e-12)) out.crossover = b;
  }
  return out;
}

/// Channels needed to hide a Toffoli's operand teleports behind one level-2
/// EC step: three operands, each moving every physical data ion.
inline int toffoli_bandwidth(const CodeTable& codes, CodeId code, double teleport_ion_time) {
  if (!(teleport_ion_time > 0.0)) throw DomainError("teleport ion time must be > 0");
  const auto& m = codes.at(code, 2);
  const double work = 3.0 * m.data_qubit_count * teleport_ion_time;
  return std::max(1, static_cast<int>(std::ceil(work / m.ec_time - 1e-9)));
}

}  // namespace cqla
