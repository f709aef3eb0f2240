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
 * @file memhier.hpp
 * @brief Memory hierarchy: code-transfer latencies, an LRU cache simulator,
 * and level-mix timing.
 *
 * Memory sits at level 2, the cache and its compute region at level 1. Every
 * logical qubit starts in memory. A gate whose operands are all resident is a
 * hit; otherwise each missing operand is fetched over one transfer channel,
 * evicting the least recently used qubit, which is written back over another
 * channel. Transfers hold a channel for their whole latency.
 */

#pragma once

#include "cqla/circuit.hpp"
#include "cqla/config.hpp"
#include "cqla/ecc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cqla {

// ---------------------------------------------------------------------------
// Transfer network

class TransferTable {
 public:
  TransferTable() = default;

  /// Reads `memhier.transfer.<code>_l<level>.<code>_l<level>` for all 16 pairs.
  static TransferTable from_profile(const Profile& p) {
    TransferTable t;
    for (auto src : encodings()) {
      for (auto dst : encodings()) {
        const auto key = "memhier.transfer." + key_of(src) + "." + key_of(dst);
        const double v = src == dst ? p.number_or(key, 0.0) : p.number(key);
        t.set(src, dst, v);
      }
    }
    t.validate();
    return t;
  }

  double latency(Encoding src, Encoding dst) const { return table_[index(src)][index(dst)]; }

  void set(Encoding src, Encoding dst, double seconds) { table_[index(src)][index(dst)] = seconds; }

  void validate() const {
    for (auto src : encodings()) {
      for (auto dst : encodings()) {
        const double v = latency(src, dst);
        if (src == dst && v != 0.0) {
          throw ConfigError("transfer latency " + key_of(src) + " -> itself must be 0");
        }
        if (src != dst && !(v > 0.0)) {
          throw ConfigError("transfer latency " + key_of(src) + " -> " + key_of(dst) + " must be > 0");
        }
      }
    }
  }

  static std::array<Encoding, 4> encodings() {
    return {Encoding{CodeId::Steane713, 1}, Encoding{CodeId::Steane713, 2},
            Encoding{CodeId::BaconShor913, 1}, Encoding{CodeId::BaconShor913, 2}};
  }

  static std::string key_of(Encoding e) {
    return std::string(code_key(e.code)) + "_l" + std::to_string(e.level);
  }

 private:
  static std::size_t index(Encoding e) {
    if (e.level < 1 || e.level > 2) {
      throw DomainError("no transfer network for level " + std::to_string(e.level));
    }
    return (e.code == CodeId::Steane713 ? 0u : 2u) + static_cast<std::size_t>(e.level - 1);
  }

  std::array<std::array<double, 4>, 4> table_{};
};

inline double transfer_latency(const TransferTable& t, Encoding src, Encoding dst) {
  return t.latency(src, dst);
}

// ---------------------------------------------------------------------------
// Cache state

/// LRU set of resident logical qubits.
class CacheState {
 public:
  explicit CacheState(std::size_t capacity) : capacity_(capacity) {
    if (capacity < 3) throw ConfigError("cache capacity must hold a Toffoli's operands (>= 3)");
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return stamp_.size(); }
  bool full() const { return size() >= capacity_; }
  bool resident(QubitId q) const { return stamp_.count(q) != 0; }

  /// Marks `q` most recently used. `q` must be resident.
  void touch(QubitId q) {
    auto it = stamp_.find(q);
    if (it == stamp_.end()) throw DomainError("touch of non-resident qubit");
    lru_.erase({it->second, q});
    it->second = ++clock_;
    lru_.insert({it->second, q});
  }

  /// Inserts `q` as most recently used; returns the evicted qubit, if any.
  std::optional<QubitId> insert(QubitId q) {
    if (resident(q)) {
      touch(q);
      return std::nullopt;
    }
    std::optional<QubitId> victim;
    if (full()) {
      const auto oldest = *lru_.begin();
      lru_.erase(lru_.begin());
      stamp_.erase(oldest.second);
      victim = oldest.second;
    }
    stamp_[q] = ++clock_;
    lru_.insert({clock_, q});
    return victim;
  }

  std::optional<QubitId> lru_victim() const {
    if (lru_.empty()) return std::nullopt;
    return lru_.begin()->second;
  }

  int resident_operands(const Gate& g) const {
    int n = 0;
    for (int i = 0; i < g.size(); ++i) n += resident(g.q[static_cast<std::size_t>(i)]) ? 1 : 0;
    return n;
  }

 private:
  std::size_t capacity_;
  std::uint64_t clock_ = 0;
  std::map<QubitId, std::uint64_t> stamp_;
  std::set<std::pair<std::uint64_t, QubitId>> lru_;
};

enum class FetchPolicy { Naive, Optimized };

inline std::string_view policy_name(FetchPolicy p) {
  return p == FetchPolicy::Naive ? "naive" : "optimized";
}

inline FetchPolicy parse_policy(std::string_view s) {
  if (s == "naive") return FetchPolicy::Naive;
  if (s == "optimized") return FetchPolicy::Optimized;
  throw ConfigError("unknown fetch policy '" + std::string(s) + "'");
}

/// Picks the next gate among `ready`: fully resident gates first, then most
/// resident operands, then fewest transfers, then lowest index.
inline std::size_t optimized_fetch(const Circuit& c, std::span<const std::size_t> ready,
                                   const CacheState& cache) {
  if (ready.empty()) throw DomainError("optimized_fetch: no ready gate");
  std::size_t best = ready.front();
  auto key = [&](std::size_t g) {
    const int res = cache.resident_operands(c[g]);
    const int missing = c[g].size() - res;
    return std::array<long long, 4>{missing == 0 ? 1 : 0, res, -missing,
                                    -static_cast<long long>(g)};
  };
  auto best_key = key(best);
  for (auto g : ready.subspan(1)) {
    auto k = key(g);
    if (k > best_key) {
      best = g;
      best_key = k;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Cache simulation

struct TransferEvent {
  enum class Kind { Fetch, WriteBack };
  double start = 0.0;
  double end = 0.0;
  std::uint32_t channel = 0;
  Kind kind = Kind::Fetch;
  QubitId qubit = 0;
  std::size_t gate = 0;  // gate that caused the transfer
};

/// Level-1 gate latencies and the memory <-> cache transfer latencies.
struct HierarchyTiming {
  double one_qubit = 0.0;
  double cnot = 0.0;
  double toffoli = 0.0;
  double measure = 0.0;
  double fetch = 0.0;       // L2 -> L1
  double write_back = 0.0;  // L1 -> L2

  double gate_time(const Gate& g) const {
    switch (g.type) {
      case GateType::Toffoli: return toffoli;
      case GateType::CNOT:
      case GateType::CPhase: return cnot;
      case GateType::Measure: return measure;
      default: return one_qubit;
    }
  }

  static HierarchyTiming for_code(const CodeTable& codes, const TechnologyParams& tech,
                                  const TransferTable& xfer, CodeId code) {
    HierarchyTiming t;
    t.one_qubit = logical_gate_time(codes, code, 1, GateKind::OneQubit, tech);
    t.cnot = logical_gate_time(codes, code, 1, GateKind::Cnot, tech);
    t.toffoli = logical_gate_time(codes, code, 1, GateKind::Toffoli, tech);
    t.measure = logical_gate_time(codes, code, 1, GateKind::Measure, tech);
    t.fetch = xfer.latency({code, 2}, {code, 1});
    t.write_back = xfer.latency({code, 1}, {code, 2});
    return t;
  }
};

struct CacheConfig {
  std::size_t cache_capacity = 0;    // logical qubits
  std::size_t compute_capacity = 0;  // logical qubits in the compute region
  FetchPolicy policy = FetchPolicy::Naive;
  std::size_t par_xfer = 1;
};

struct HierarchyRun {
  FetchPolicy fetch_policy = FetchPolicy::Naive;
  std::size_t par_xfer = 1;
  std::size_t gates = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
  double hit_rate = 0.0;
  std::size_t fetches = 0;
  std::size_t write_backs = 0;
  std::size_t transfers = 0;
  double stall_time = 0.0;     // summed operand wait beyond dependency readiness
  double exec_time = 0.0;
  double compute_bound = 0.0;  // critical path at level-1 gate latencies
  std::vector<std::size_t> order;
  std::vector<TransferEvent> trace;
};

inline HierarchyRun simulate_cache(const Circuit& c, const CacheConfig& cfg, const HierarchyTiming& timing) {
  if (cfg.cache_capacity < 3) throw ConfigError("cache capacity must be >= 3 qubits");
  if (cfg.compute_capacity < 3) throw ConfigError("compute capacity must be >= 3 qubits");
  if (cfg.par_xfer == 0) throw ConfigError("par_xfer must be >= 1");

  const DependencyGraph dag(c);
  const std::size_t n = c.size();
  HierarchyRun run;
  run.fetch_policy = cfg.policy;
  run.par_xfer = cfg.par_xfer;
  run.gates = n;
  run.order.reserve(n);
  run.compute_bound = static_cast<double>(0);
  {
    std::vector<double> fin(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (auto p : dag.preds(i)) s = std::max(s, fin[p]);
      fin[i] = s + timing.gate_time(c[i]);
      run.compute_bound = std::max(run.compute_bound, fin[i]);
    }
  }

  CacheState cache(cfg.cache_capacity);
  std::vector<double> channel_free(cfg.par_xfer, 0.0);
  std::vector<double> finish(n, 0.0);
  std::vector<double> qubit_free(c.qubit_count(), 0.0);  // last gate on the qubit done
  std::vector<double> in_memory_at(c.qubit_count(), 0.0);

  auto transfer = [&](TransferEvent::Kind kind, QubitId q, std::size_t gate, double earliest,
                      double latency) {
    std::size_t ch = 0;
    for (std::size_t i = 1; i < channel_free.size(); ++i) {
      if (channel_free[i] < channel_free[ch]) ch = i;
    }
    TransferEvent e;
    e.kind = kind;
    e.qubit = q;
    e.gate = gate;
    e.channel = static_cast<std::uint32_t>(ch);
    e.start = std::max(channel_free[ch], earliest);
    e.end = e.start + latency;
    channel_free[ch] = e.end;
    run.trace.push_back(e);
    return e;
  };

  std::vector<std::size_t> missing_preds(n);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    missing_preds[i] = dag.preds(i).size();
    if (missing_preds[i] == 0) ready.push_back(i);
  }

  // (finish, operand count) of gates occupying the compute region
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>> busy;
  std::size_t occupied = 0;
  double last_issue = 0.0;

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t g = 0;
    if (cfg.policy == FetchPolicy::Naive) {
      g = step;  // program order
    } else {
      g = optimized_fetch(c, ready, cache);
    }
    ready.erase(std::find(ready.begin(), ready.end(), g));
    run.order.push_back(g);
    const Gate& gate = c[g];

    double deps = 0.0;
    for (auto p : dag.preds(g)) deps = std::max(deps, finish[p]);

    const int res = cache.resident_operands(gate);
    if (res == gate.size()) ++run.hits;
    else ++run.misses;

    double operands_at = 0.0;
    for (int i = 0; i < gate.size(); ++i) {
      const auto q = gate.q[static_cast<std::size_t>(i)];
      if (cache.resident(q)) cache.touch(q);
    }
    for (int i = 0; i < gate.size(); ++i) {
      const auto q = gate.q[static_cast<std::size_t>(i)];
      if (cache.resident(q)) continue;
      double slot_free = 0.0;
      if (auto victim = cache.insert(q)) {
        const auto v = *victim;
        slot_free = qubit_free[v];
        const auto wb = transfer(TransferEvent::Kind::WriteBack, v, g, qubit_free[v], timing.write_back);
        in_memory_at[v] = wb.end;
        ++run.write_backs;
      }
      const auto f = transfer(TransferEvent::Kind::Fetch, q, g, std::max(slot_free, in_memory_at[q]),
                              timing.fetch);
      operands_at = std::max(operands_at, f.end);
      ++run.fetches;
    }

    const double ready_at = std::max(deps, last_issue);
    double start = std::max(ready_at, operands_at);
    run.stall_time += std::max(0.0, operands_at - ready_at);

    const auto need = static_cast<std::size_t>(gate.size());
    if (need > cfg.compute_capacity) throw ConfigError("compute region smaller than a gate's operands");
    while (!busy.empty() && busy.top().first <= start) {
      occupied -= static_cast<std::size_t>(busy.top().second);
      busy.pop();
    }
    while (occupied + need > cfg.compute_capacity) {
      start = std::max(start, busy.top().first);
      occupied -= static_cast<std::size_t>(busy.top().second);
      busy.pop();
    }
    finish[g] = start + timing.gate_time(gate);
    busy.emplace(finish[g], gate.size());
    occupied += need;
    last_issue = start;
    for (int i = 0; i < gate.size(); ++i) qubit_free[gate.q[static_cast<std::size_t>(i)]] = finish[g];
    run.exec_time = std::max(run.exec_time, finish[g]);

    for (auto s : dag.succs(g)) {
      if (--missing_preds[s] == 0) ready.push_back(s);
    }
  }
  run.transfers = run.fetches + run.write_backs;
  run.hit_rate = n == 0 ? 1.0 : static_cast<double>(run.hits) / static_cast<double>(n);
  return run;
}

struct TraceCheck {
  bool ok = true;
  std::size_t max_concurrency = 0;
  std::string message;
};

/// Checks that no channel carries overlapping transfers and that at most
/// `par_xfer` transfers are in flight at any instant.
inline TraceCheck validate_trace(std::span<const TransferEvent> trace, std::size_t par_xfer) {
  TraceCheck out;
  std::vector<std::pair<double, int>> edges;  // (time, +1/-1); ends sort before starts
  std::map<std::uint32_t, std::vector<std::pair<double, double>>> per_channel;
  for (const auto& e : trace) {
    if (e.channel >= par_xfer) {
      out.ok = false;
      out.message = "transfer on channel " + std::to_string(e.channel) + " beyond par_xfer";
    }
    if (!(e.end >= e.start)) {
      out.ok = false;
      out.message = "transfer ends before it starts";
    }
    edges.emplace_back(e.start, +1);
    edges.emplace_back(e.end, -1);
    per_channel[e.channel].emplace_back(e.start, e.end);
  }
  std::sort(edges.begin(), edges.end());
  long long live = 0;
  for (const auto& [t, d] : edges) {
    live += d;
    out.max_concurrency = std::max(out.max_concurrency, static_cast<std::size_t>(std::max(0LL, live)));
  }
  if (out.max_concurrency > par_xfer) {
    out.ok = false;
    out.message = "concurrent transfers exceed par_xfer";
  }
  for (auto& [ch, iv] : per_channel) {
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first < iv[i - 1].second) {
        out.ok = false;
        out.message = "overlapping transfers on channel " + std::to_string(ch);
      }
    }
  }
  return out;
}

inline void write_trace_csv(std::ostream& os, std::span<const TransferEvent> trace) {
  os << "start_s,end_s,channel,kind,qubit,gate\n";
  os.precision(17);
  for (const auto& e : trace) {
    os << e.start << ',' << e.end << ',' << e.channel << ','
       << (e.kind == TransferEvent::Kind::Fetch ? "fetch" : "write_back") << ',' << e.qubit << ','
       << e.gate << '\n';
  }
}

// ---------------------------------------------------------------------------
// Level-1 adder speedup

/// Time of one adder at level 2 against the same adder at level 1 with its
/// operands staged through the transfer network.
///
/// T_L2 = slots * g2, T_L1 = slots * g1 * overhead, and the L1 adder also pays
/// transfers_per_slot * slots round trips spread over par_xfer channels.
struct L1SpeedupModel {
  double slots = 0.0;  // adder critical path in two-qubit gate slots
  double gate_l1 = 0.0;
  double gate_l2 = 0.0;
  double compute_overhead = 1.0;  // level-1 compute-region slowdown
  double transfers_per_slot = 0.0;
  double round_trip = 0.0;  // L2 -> L1 plus L1 -> L2

  double compute_l1() const { return slots * gate_l1 * compute_overhead; }
  double compute_l2() const { return slots * gate_l2; }
  double transfer_time(double par_xfer) const {
    return slots * transfers_per_slot * round_trip / par_xfer;
  }
  double total_l1(double par_xfer) const { return compute_l1() + transfer_time(par_xfer); }
  double speedup_limit() const { return compute_l2() / compute_l1(); }
};

inline double l1_adder_speedup(const L1SpeedupModel& m, double par_xfer) {
  if (!(par_xfer >= 1.0)) throw DomainError("l1_adder_speedup: par_xfer must be >= 1");
  return m.compute_l2() / m.total_l1(par_xfer);
}

/// Builds the model for an n-bit adder; calibration keys live under
/// `memhier.l1_speedup.<code>.`.
inline L1SpeedupModel l1_speedup_model(const Profile& p, const CodeTable& codes, const TechnologyParams& tech,
                                       const TransferTable& xfer, CodeId code, std::size_t n,
                                       double slots) {
  const std::string base = "memhier.l1_speedup." + std::string(code_key(code)) + ".";
  L1SpeedupModel m;
  m.slots = slots;
  m.gate_l1 = logical_gate_time(codes, code, 1, GateKind::Cnot, tech);
  m.gate_l2 = logical_gate_time(codes, code, 2, GateKind::Cnot, tech);
  m.compute_overhead = p.number_or(base + "compute_overhead", 1.0);
  const auto sized = base + "transfers_per_slot." + std::to_string(n);
  m.transfers_per_slot = p.has(sized) ? p.number(sized) : p.number(base + "transfers_per_slot");
  m.round_trip = xfer.latency({code, 2}, {code, 1}) + xfer.latency({code, 1}, {code, 2});
  if (!(m.compute_overhead > 0.0) || m.transfers_per_slot < 0.0) {
    throw ConfigError("invalid level-1 speedup calibration under '" + base + "'");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Mixed-level execution

/// Additions alternate between a level-1 pipeline and a level-2 pipeline that
/// run concurrently; `l1_work_fraction` of the additions go to level 1.
/// Relative to an all-L2 baseline (speedup 1), the adder speedup is
/// 1 / max(f / s1, (1 - f) / s2).
inline double pipelined_adder_speedup(double l1_work_fraction, double l1_speedup, double l2_speedup) {
  if (!(l1_work_fraction >= 0.0 && l1_work_fraction <= 1.0)) {
    throw DomainError("l1 work fraction must lie in [0,1]");
  }
  if (!(l1_speedup > 0.0) || !(l2_speedup > 0.0)) throw DomainError("speedups must be > 0");
  return 1.0 / std::max(l1_work_fraction / l1_speedup, (1.0 - l1_work_fraction) / l2_speedup);
}

/// Level-1 additions per level-2 additions.
struct MixRule {
  std::size_t l1 = 1;
  std::size_t l2 = 2;
  double l1_op_fraction() const { return static_cast<double>(l1) / static_cast<double>(l1 + l2); }
};

struct MixedLevelResult {
  std::uint64_t l1_adds = 0;
  std::uint64_t l2_adds = 0;
  double total_time = 0.0;
  double l1_time_fraction = 0.0;
  double budget = 0.0;
};

/// Throws FidelityError when `fraction` of execution time at level 1 exceeds `budget`.
inline void check_l1_time_fraction(double fraction, double budget) {
  if (fraction > budget) {
    throw FidelityError("level-1 time fraction " + std::to_string(fraction) +
                            " exceeds the fidelity budget " + std::to_string(budget),
                        fraction);
  }
}

/// Serial accounting of `adds` additions under `rule` with per-adder compute
/// times at each level; rejects mixes whose level-1 time share exceeds `budget`.
inline MixedLevelResult mixed_level_time(std::uint64_t adds, MixRule rule, double t_l1, double t_l2,
                                         double budget) {
  if (rule.l1 + rule.l2 == 0) throw DomainError("mix rule has no additions");
  if (!(t_l1 > 0.0) || !(t_l2 > 0.0)) throw DomainError("adder times must be > 0");
  MixedLevelResult r;
  const std::uint64_t period = rule.l1 + rule.l2;
  r.l1_adds = adds / period * rule.l1 + std::min<std::uint64_t>(adds % period, rule.l1);
  r.l2_adds = adds - r.l1_adds;
  const double l1_time = static_cast<double>(r.l1_adds) * t_l1;
  r.total_time = l1_time + static_cast<double>(r.l2_adds) * t_l2;
  r.l1_time_fraction = r.total_time > 0.0 ? l1_time / r.total_time : 0.0;
  r.budget = budget;
  check_l1_time_fraction(r.l1_time_fraction, budget);
  return r;
}

}  // namespace cqla
