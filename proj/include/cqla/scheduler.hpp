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
 * @file scheduler.hpp
 * @brief Greedy list scheduling of logical circuits.
 *
 * Time is counted in logical gate slots (one two-qubit gate plus its EC
 * step). A Toffoli occupies 15 slots. Two resource models share one engine:
 *
 *  - issue limit: at most `limit` ready gates start in any slot;
 *  - compute blocks: each block hosts concurrently running gates whose
 *    operands fit in its data-qubit capacity.
 *
 * Ready gates are taken longest remaining path first (slot-weighted
 * bottom level), ties broken by lowest gate index.
 */

#pragma once

#include "cqla/circuit.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <vector>

namespace cqla {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Slots per gate type.
struct SlotModel {
  std::uint32_t toffoli = 15;
  std::uint32_t other = 1;

  std::uint32_t operator()(const Gate& g) const {
    return g.type == GateType::Toffoli ? toffoli : other;
  }
  static SlotModel unit() { return SlotModel{1, 1}; }
};

struct Schedule {
  /// cycles[t] = gates started in slot t.
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::uint64_t> start;
  std::vector<std::uint64_t> finish;
  std::size_t resource_limit = kUnlimited;
  std::uint64_t makespan = 0;
  /// Compute-block id per gate; empty for issue-limited schedules.
  std::vector<std::uint32_t> block_assignment;
  /// Slots in which each block ran at least one gate.
  std::vector<std::uint64_t> block_busy;
};

struct BlockModel {
  std::size_t blocks = 1;
  std::size_t capacity = 9;  // data qubits per block
};

namespace detail {

inline Schedule list_schedule(const Circuit& c, const DependencyGraph& dag, std::size_t limit,
                              const BlockModel* blocks, const SlotModel& slots) {
  if (limit == 0) throw DomainError("schedule: limit must be >= 1");
  const std::size_t n = c.size();
  Schedule s;
  s.resource_limit = limit;
  s.start.assign(n, 0);
  s.finish.assign(n, 0);
  if (blocks) {
    if (blocks->blocks == 0) throw DomainError("utilization: blocks must be >= 1");
    if (blocks->capacity < 3) throw DomainError("utilization: block capacity must hold a Toffoli");
    s.block_assignment.assign(n, 0);
    s.block_busy.assign(blocks->blocks, 0);
  }
  if (n == 0) return s;

  // Bottom level: slots from a gate's start to the end of its longest successor chain.
  std::vector<std::uint64_t> level(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    std::uint64_t tail = 0;
    for (auto succ : dag.succs(i)) tail = std::max(tail, level[succ]);
    level[i] = tail + slots(c[i]);
  }
  auto before = [&level](std::size_t a, std::size_t b) {  // true if b goes first
    if (level[a] != level[b]) return level[a] < level[b];
    return a > b;
  };
  std::vector<std::size_t> missing(n);
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(before)> ready(before);
  for (std::size_t i = 0; i < n; ++i) {
    missing[i] = dag.preds(i).size();
    if (missing[i] == 0) ready.push(i);
  }
  // (finish slot, gate)
  std::priority_queue<std::pair<std::uint64_t, std::size_t>,
                      std::vector<std::pair<std::uint64_t, std::size_t>>, std::greater<>>
      running;
  std::vector<std::size_t> free_cap;
  std::vector<std::size_t> active;  // gates running per block
  std::vector<std::uint64_t> busy_since;
  if (blocks) {
    free_cap.assign(blocks->blocks, blocks->capacity);
    active.assign(blocks->blocks, 0);
    busy_since.assign(blocks->blocks, 0);
  }

  std::uint64_t t = 0;
  std::size_t done = 0;
  std::vector<std::size_t> deferred;
  while (done < n) {
    // Retire everything finishing by t.
    while (!running.empty() && running.top().first <= t) {
      const auto [f, g] = running.top();
      running.pop();
      ++done;
      if (blocks) {
        const auto b = s.block_assignment[g];
        free_cap[b] += static_cast<std::size_t>(c[g].size());
        if (--active[b] == 0) s.block_busy[b] += f - busy_since[b];
      }
      for (auto succ : dag.succs(g)) {
        if (--missing[succ] == 0) ready.push(succ);
      }
    }
    if (done == n) break;

    std::size_t issued = 0;
    deferred.clear();
    while (!ready.empty() && issued < limit) {
      const auto g = ready.top();
      ready.pop();
      if (blocks) {
        const auto need = static_cast<std::size_t>(c[g].size());
        std::size_t b = 0;
        while (b < free_cap.size() && free_cap[b] < need) ++b;
        if (b == free_cap.size()) {
          deferred.push_back(g);
          continue;
        }
        free_cap[b] -= need;
        if (active[b]++ == 0) busy_since[b] = t;
        s.block_assignment[g] = static_cast<std::uint32_t>(b);
      }
      const std::uint64_t f = t + slots(c[g]);
      s.start[g] = t;
      s.finish[g] = f;
      if (s.cycles.size() <= t) s.cycles.resize(t + 1);
      s.cycles[t].push_back(g);
      running.emplace(f, g);
      ++issued;
    }
    for (auto g : deferred) ready.push(g);

    // Next slot: t+1 if the issue limit held gates back, else the next completion.
    if (!ready.empty() && issued == limit) {
      ++t;
    } else if (!running.empty()) {
      t = running.top().first;
    } else {
      throw DomainError("schedule: no runnable gate (dependency cycle?)");
    }
  }
  for (std::size_t i = 0; i < n; ++i) s.makespan = std::max(s.makespan, s.finish[i]);
  if (s.cycles.size() < s.makespan) s.cycles.resize(s.makespan);
  return s;
}

}  // namespace detail

/// Issue-limited greedy list schedule; `limit` may be kUnlimited.
inline Schedule schedule(const Circuit& c, std::size_t limit, const SlotModel& slots = {}) {
  const DependencyGraph dag(c);
  return detail::list_schedule(c, dag, limit, nullptr, slots);
}

inline Schedule schedule(const Circuit& c, const DependencyGraph& dag, std::size_t limit,
                         const SlotModel& slots = {}) {
  return detail::list_schedule(c, dag, limit, nullptr, slots);
}

/// Block-constrained schedule; gates go to the lowest-numbered block with room.
inline Schedule schedule_on_blocks(const Circuit& c, const DependencyGraph& dag, BlockModel blocks,
                                   const SlotModel& slots = {}) {
  return detail::list_schedule(c, dag, kUnlimited, &blocks, slots);
}

/// Makespan for each issue limit from 1 up to saturation.
struct ParallelismProfile {
  std::map<std::size_t, std::uint64_t> makespan;  // limit -> makespan
  std::uint64_t unlimited_makespan = 0;
  std::size_t saturation = 1;
};

inline ParallelismProfile parallelism_profile(const Circuit& c, const SlotModel& slots = {},
                                              std::size_t min_limits = 0) {
  const DependencyGraph dag(c);
  ParallelismProfile p;
  p.unlimited_makespan = detail::list_schedule(c, dag, kUnlimited, nullptr, slots).makespan;
  bool saturated = false;
  for (std::size_t limit = 1;; ++limit) {
    const auto m = detail::list_schedule(c, dag, limit, nullptr, slots).makespan;
    p.makespan[limit] = m;
    if (!saturated && m == p.unlimited_makespan) {
      p.saturation = limit;
      saturated = true;
    }
    if (saturated && limit >= min_limits) break;
    if (limit > c.size()) break;  // every limit beyond the gate count is unlimited
  }
  return p;
}

struct UtilizationEntry {
  std::size_t blocks = 0;
  double utilization = 0.0;
  std::uint64_t makespan = 0;
  std::uint64_t busy_block_slots = 0;
};

/// Busy block-slots / (blocks * makespan); a block is busy in a slot iff it runs a gate.
inline UtilizationEntry utilization(const Circuit& c, std::size_t blocks, std::size_t block_capacity,
                                    const SlotModel& slots = {}) {
  const DependencyGraph dag(c);
  const auto s = schedule_on_blocks(c, dag, BlockModel{blocks, block_capacity}, slots);
  UtilizationEntry e;
  e.blocks = blocks;
  e.makespan = s.makespan;
  for (auto b : s.block_busy) e.busy_block_slots += b;
  e.utilization = s.makespan == 0 ? 0.0
                                  : static_cast<double>(e.busy_block_slots) /
                                        (static_cast<double>(blocks) * static_cast<double>(s.makespan));
  return e;
}

}  // namespace cqla
