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
 * @file default_profile.hpp
 * @brief Built-in copy of config/cqla_default.cfg. A test keeps the two identical.
 */

#pragma once

#include "cqla/config.hpp"

#include <string_view>

namespace cqla {

inline constexpr std::string_view kDefaultProfileText = R"cfg(# CQLA default profile.
#
# Units: s ms us ns | mm2 um2 | um mm | /um. Values marked @calibrated are
# fitted to reproduce published architecture results, not derived from the
# technology and code parameters. Reports flag every number that depends on them.

# --- technology (projected ion-trap column) ---------------------------------
tech.single_gate_time = 1 us
tech.double_gate_time = 10 us
tech.measure_time = 10 us
tech.move_time = 10 us
tech.split_time = 0.1 us
tech.cool_time = 0.1 us
tech.single_gate_fail = 1e-8
tech.double_gate_fail = 1e-7
tech.measure_fail = 1e-8
tech.move_fail = 5e-8 /um
tech.trap_pitch = 50 um
tech.cycle_time = 10 us

# present-day column, for reference only
tech_now.single_gate_time = 1 us
tech_now.double_gate_time = 10 us
tech_now.measure_time = 200 us
tech_now.move_time = 20 us
tech_now.split_time = 200 us
tech_now.cool_time = 200 us
tech_now.single_gate_fail = 1e-4
tech_now.double_gate_fail = 0.03
tech_now.measure_fail = 0.01
tech_now.move_fail = 0.005 /um

# --- error-correcting codes ---------------------------------------------------
ecc.syndromes_per_ec = 2
ecc.toffoli_cnot_rounds = 15

ecc.steane.l1.ec_cycles_per_syndrome = 154
ecc.steane.l1.ec_time = 3.1 ms
ecc.steane.l1.transversal_gate_time = 6.2 ms
ecc.steane.l1.tile_area = 0.2 mm2
ecc.steane.l1.data_qubits = 7
ecc.steane.l1.ancilla_qubits = 21
ecc.steane.l2.ec_time = 0.3 s
ecc.steane.l2.transversal_gate_time = 0.5 s
ecc.steane.l2.tile_area = 3.4 mm2
ecc.steane.l2.data_qubits = 49
ecc.steane.l2.ancilla_qubits = 441

ecc.bacon_shor.l1.ec_cycles_per_syndrome = 60 @calibrated
ecc.bacon_shor.l1.ec_time = 1.2 ms
ecc.bacon_shor.l1.transversal_gate_time = 2.4 ms
ecc.bacon_shor.l1.tile_area = 0.1 mm2
ecc.bacon_shor.l1.data_qubits = 9
ecc.bacon_shor.l1.ancilla_qubits = 12
ecc.bacon_shor.l2.ec_time = 0.1 s
ecc.bacon_shor.l2.transversal_gate_time = 0.2 s
ecc.bacon_shor.l2.tile_area = 2.4 mm2
ecc.bacon_shor.l2.data_qubits = 81
ecc.bacon_shor.l2.ancilla_qubits = 298

# --- fidelity budget ----------------------------------------------------------
fidelity.p_th.steane = 7.5e-5
fidelity.p_th.bacon_shor = 7.5e-5
fidelity.r = 12
fidelity.logical_qubits = 5808
fidelity.time_steps = 5.43e5 @calibrated

# --- code-transfer network (source.destination) -------------------------------
memhier.transfer.steane_l1.steane_l2 = 0.6 s
memhier.transfer.steane_l1.bacon_shor_l1 = 0.02 s
memhier.transfer.steane_l1.bacon_shor_l2 = 0.2 s
memhier.transfer.steane_l2.steane_l1 = 1.3 s
memhier.transfer.steane_l2.bacon_shor_l1 = 1.3 s
memhier.transfer.steane_l2.bacon_shor_l2 = 1.5 s
memhier.transfer.bacon_shor_l1.steane_l1 = 0.01 s
memhier.transfer.bacon_shor_l1.steane_l2 = 0.5 s
memhier.transfer.bacon_shor_l1.bacon_shor_l2 = 0.1 s
memhier.transfer.bacon_shor_l2.steane_l1 = 0.4 s
memhier.transfer.bacon_shor_l2.steane_l2 = 0.9 s
memhier.transfer.bacon_shor_l2.bacon_shor_l1 = 0.4 s

# --- memory hierarchy -----------------------------------------------------------
memhier.cache_factor = 2
memhier.mix.l1 = 1
memhier.mix.l2 = 2

# level-1 adder: compute-region slowdown and operand transfers per gate slot
memhier.l1_speedup.steane.compute_overhead = 1.619 @calibrated
memhier.l1_speedup.steane.transfers_per_slot = 0.1627 @calibrated
memhier.l1_speedup.steane.transfers_per_slot.256 = 0.1627 @calibrated
memhier.l1_speedup.steane.transfers_per_slot.512 = 0.1628 @calibrated
memhier.l1_speedup.steane.transfers_per_slot.1024 = 0.1526 @calibrated
memhier.l1_speedup.bacon_shor.compute_overhead = 1.230 @calibrated
memhier.l1_speedup.bacon_shor.transfers_per_slot = 0.5359 @calibrated
memhier.l1_speedup.bacon_shor.transfers_per_slot.256 = 0.5359 @calibrated
memhier.l1_speedup.bacon_shor.transfers_per_slot.512 = 0.5359 @calibrated
memhier.l1_speedup.bacon_shor.transfers_per_slot.1024 = 0.5022 @calibrated

# level-2 region speedup over the baseline fabric, per adder size
memhier.l2_speedup.steane.256 = 0.98 @calibrated
memhier.l2_speedup.steane.512 = 0.97 @calibrated
memhier.l2_speedup.steane.1024 = 0.88 @calibrated
memhier.l2_speedup.bacon_shor.256 = 1.53 @calibrated
memhier.l2_speedup.bacon_shor.512 = 2.28 @calibrated
memhier.l2_speedup.bacon_shor.1024 = 2.00 @calibrated

# share of additions routed to the level-1 pipeline
memhier.pipeline.l1_work_fraction.steane = 0.8215 @calibrated
memhier.pipeline.l1_work_fraction.steane.par5 = 0.7007 @calibrated
memhier.pipeline.l1_work_fraction.bacon_shor = 0.7531 @calibrated
memhier.pipeline.l1_work_fraction.bacon_shor.par5 = 0.5992 @calibrated

# --- layout -----------------------------------------------------------------------
layout.memory_ratio.data = 8
layout.memory_ratio.ancilla = 1
layout.block_data = 9
layout.block_ancilla = 18
layout.channels_per_block_edge = 2

layout.qla_interconnect_multiplier = 17.68 @calibrated
layout.memory_overhead_multiplier = 1.0 @calibrated
layout.compute_overhead_multiplier.steane = 10.0 @calibrated
layout.compute_overhead_multiplier.bacon_shor = 9.694 @calibrated

# logical qubits for n-bit modular exponentiation
layout.logical_qubits.32 = 159 @calibrated
layout.logical_qubits.64 = 338 @calibrated
layout.logical_qubits.128 = 698 @calibrated
layout.logical_qubits.256 = 1406 @calibrated
layout.logical_qubits.512 = 2885 @calibrated
layout.logical_qubits.1024 = 5808 @calibrated
layout.logical_qubits_per_bit = 5.67 @calibrated

# compute blocks used when a run does not name a count
layout.default_blocks.32 = 9
layout.default_blocks.64 = 16
layout.default_blocks.128 = 25
layout.default_blocks.256 = 49
layout.default_blocks.512 = 81
layout.default_blocks.1024 = 100

# speedup of the level-2 compute region over the baseline fabric (size.blocks)
layout.speedup.steane.32.4 = 0.54 @calibrated
layout.speedup.steane.32.9 = 0.97 @calibrated
layout.speedup.steane.64.9 = 0.70 @calibrated
layout.speedup.steane.64.16 = 0.98 @calibrated
layout.speedup.steane.128.16 = 0.72 @calibrated
layout.speedup.steane.128.25 = 0.96 @calibrated
layout.speedup.steane.256.36 = 0.92 @calibrated
layout.speedup.steane.256.49 = 0.98 @calibrated
layout.speedup.steane.512.64 = 0.92 @calibrated
layout.speedup.steane.512.81 = 0.98 @calibrated
layout.speedup.steane.1024.100 = 0.80 @calibrated
layout.speedup.steane.1024.121 = 0.97 @calibrated
layout.speedup.bacon_shor.32.4 = 1.47 @calibrated
layout.speedup.bacon_shor.32.9 = 2.9 @calibrated
layout.speedup.bacon_shor.64.9 = 1.92 @calibrated
layout.speedup.bacon_shor.64.16 = 3.0 @calibrated
layout.speedup.bacon_shor.128.16 = 1.97 @calibrated
layout.speedup.bacon_shor.128.25 = 2.84 @calibrated
layout.speedup.bacon_shor.256.36 = 2.51 @calibrated
layout.speedup.bacon_shor.256.49 = 2.98 @calibrated
layout.speedup.bacon_shor.512.64 = 2.50 @calibrated
layout.speedup.bacon_shor.512.81 = 2.91 @calibrated
layout.speedup.bacon_shor.1024.100 = 2.19 @calibrated
layout.speedup.bacon_shor.1024.121 = 2.65 @calibrated

# superblock sizing: channels per edge and channels demanded per block
layout.bandwidth.channels_per_edge = 3 @calibrated
layout.bandwidth.demand_per_block = 2 @calibrated
layout.teleport_ion_time = 1 ms @calibrated

# --- communication ------------------------------------------------------------------
comms.mesh.rows = 6
comms.mesh.cols = 6
comms.mesh.channels_per_edge = 2

# --- workloads ------------------------------------------------------------------------
circuit.modexp.adders_per_modular_addition = 2

# --- default experiment ---------------------------------------------------------------
experiment.input_size = 1024
experiment.code = steane
experiment.compute_blocks = 100
experiment.par_xfer = 10
experiment.fetch_policy = optimized
)cfg";

inline Profile default_profile() { return Profile::parse(kDefaultProfileText); }

}  // namespace cqla
