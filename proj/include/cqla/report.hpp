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
 * @file report.hpp
 * @brief Experiment orchestration, provenance tracking, table emission.
 *
 * A run takes an n-bit adder through scheduling, area, the level-1/level-2
 * hierarchy and the fidelity gate. Every reported number records the profile
 * keys it depends on; a number is calibrated iff any of those keys is.
 */

#pragma once

#include "cqla/circuit.hpp"
#include "cqla/comms.hpp"
#include "cqla/config.hpp"
#include "cqla/ecc.hpp"
#include "cqla/layout.hpp"
#include "cqla/memhier.hpp"
#include "cqla/scheduler.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cqla {

inline constexpr int kReportSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Provenance

struct Provenance {
  bool calibrated = false;
  std::vector<std::string> sources;  // profile keys the value depends on
};

class ProvenanceBuilder {
 public:
  explicit ProvenanceBuilder(const Profile& p) : profile_(p) {}

  Provenance from(std::initializer_list<std::string> keys) const {
    return from(std::vector<std::string>(keys));
  }

  Provenance from(const std::vector<std::string>& keys) const {
    Provenance out;
    std::set<std::string> uniq(keys.begin(), keys.end());
    for (const auto& k : uniq) {
      if (k.empty() || !profile_.has(k)) continue;
      out.sources.push_back(k);
      out.calibrated = out.calibrated || profile_.calibrated(k);
    }
    return out;
  }

  static Provenance merge(std::initializer_list<Provenance> parts) {
    Provenance out;
    std::set<std::string> uniq;
    for (const auto& p : parts) {
      out.calibrated = out.calibrated || p.calibrated;
      uniq.insert(p.sources.begin(), p.sources.end());
    }
    out.sources.assign(uniq.begin(), uniq.end());
    return out;
  }

 private:
  const Profile& profile_;
};

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
  std::size_t input_size = 1024;
  CodeId code = CodeId::Steane713;
  std::size_t compute_blocks = 0;  // 0: per-size default (single-level runs: unlimited)
  std::size_t cache_capacity = 0;  // 0: cache_factor x compute-region qubits
  std::size_t par_xfer = 10;
  FetchPolicy fetch_policy = FetchPolicy::Optimized;
  MixRule mix{};
  int levels = 2;  // 1: level-2 only, no cache or level-1 region
  std::optional<double> forced_l1_time_fraction;

  void validate() const {
    if (input_size < 2) throw ConfigError("experiment.input_size must be >= 2");
    if (par_xfer < 1) throw ConfigError("experiment.par_xfer must be >= 1");
    if (levels != 1 && levels != 2) throw ConfigError("experiment.levels must be 1 or 2");
    if (levels == 2 && mix.l1 + mix.l2 == 0) throw ConfigError("memhier.mix needs at least one addition");
    if (cache_capacity != 0 && cache_capacity < 3) throw ConfigError("cache capacity must be >= 3");
    if (forced_l1_time_fraction && !(*forced_l1_time_fraction >= 0.0 && *forced_l1_time_fraction <= 1.0)) {
      throw ConfigError("forced level-1 time fraction must lie in [0,1]");
    }
  }

  static ExperimentConfig from_profile(const Profile& p) {
    ExperimentConfig c;
    auto count = [&](const std::string& key, std::size_t fallback) {
      const double v = p.number_or(key, static_cast<double>(fallback));
      if (v < 0.0 || v != std::floor(v)) throw ConfigError(key + " must be a non-negative integer");
      return static_cast<std::size_t>(v);
    };
    c.input_size = count("experiment.input_size", c.input_size);
    c.code = parse_code(p.text_or("experiment.code", "steane"));
    c.compute_blocks = count("experiment.compute_blocks", 0);
    c.cache_capacity = count("experiment.cache_capacity", 0);
    c.par_xfer = count("experiment.par_xfer", c.par_xfer);
    c.fetch_policy = parse_policy(p.text_or("experiment.fetch_policy", "optimized"));
    c.mix.l1 = count("memhier.mix.l1", 1);
    c.mix.l2 = count("memhier.mix.l2", 2);
    c.levels = static_cast<int>(count("experiment.levels", 2));
    if (p.has("experiment.forced_l1_time_fraction")) {
      c.forced_l1_time_fraction = p.number("experiment.forced_l1_time_fraction");
    }
    c.validate();
    return c;
  }
};

/// Compute blocks for an n-bit run when none are given.
inline std::size_t default_blocks(const Profile& p, std::size_t n) {
  const auto key = "layout.default_blocks." + std::to_string(n);
  if (p.has(key)) return static_cast<std::size_t>(p.number(key));
  // nearest square grid holding about n/10 blocks
  const auto side = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(n / 10.0))));
  return side * side;
}

// ---------------------------------------------------------------------------
// Shared model pieces

struct ModelContext {
  Profile profile;
  CodeTable codes;
  TechnologyParams tech;
  TransferTable xfer;

  explicit ModelContext(Profile p)
      : profile(std::move(p)),
        codes(CodeTable::from_profile(profile)),
        tech(TechnologyParams::from_profile(profile)),
        xfer(TransferTable::from_profile(profile)) {}
};

struct Valued {
  double value = 0.0;
  Provenance provenance;
};

/// Level-2 compute-region speedup over the baseline fabric for an n-bit adder
/// on `blocks` blocks. Tabulated values win; otherwise the ratio of the
/// unlimited makespan on Steane level 2 to the block-limited makespan in `code`.
inline Valued baseline_speedup(const ModelContext& ctx, CodeId code, std::size_t n, std::size_t blocks,
                               const Circuit* adder = nullptr) {
  ProvenanceBuilder pb(ctx.profile);
  const auto key = "layout.speedup." + std::string(code_key(code)) + "." + std::to_string(n) + "." +
                   std::to_string(blocks);
  if (ctx.profile.has(key)) return {ctx.profile.number(key), pb.from({key})};

  std::optional<Circuit> owned;
  if (!adder) {
    owned = gen_cla_adder(n);
    adder = &*owned;
  }
  const DependencyGraph dag(*adder);
  const double g_base = logical_gate_time(ctx.codes, CodeId::Steane713, 2, GateKind::Cnot, ctx.tech);
  const double g_code = logical_gate_time(ctx.codes, code, 2, GateKind::Cnot, ctx.tech);
  const auto unlimited = schedule(*adder, dag, kUnlimited).makespan;
  const auto limited = blocks == 0
                           ? unlimited
                           : schedule_on_blocks(*adder, dag, BlockModel{blocks, 9}).makespan;
  return {static_cast<double>(unlimited) * g_base / (static_cast<double>(limited) * g_code),
          pb.from({"ecc.toffoli_cnot_rounds"})};
}

inline Valued area_factor_for(const ModelContext& ctx, CodeId code, std::size_t n, std::size_t blocks,
                              AreaReport* out = nullptr) {
  ProvenanceBuilder pb(ctx.profile);
  const auto layout = layout_for(ctx.profile, n, blocks, code);
  const auto overheads = AreaOverheads::from_profile(ctx.profile, code);
  const auto r = area(layout, ctx.codes, overheads);
  if (out) *out = r;
  const std::string ck(code_key(code));
  return {r.area_factor,
          pb.from({"layout.qla_interconnect_multiplier", "layout.memory_overhead_multiplier",
                   "layout.compute_overhead_multiplier." + ck, "layout.logical_qubits." + std::to_string(n),
                   ctx.profile.has("layout.logical_qubits." + std::to_string(n)) ? ""
                                                                                  : "layout.logical_qubits_per_bit"})};
}

inline std::string l1_fraction_key(const Profile& p, CodeId code, std::size_t par_xfer) {
  const auto base = "memhier.pipeline.l1_work_fraction." + std::string(code_key(code));
  const auto sized = base + ".par" + std::to_string(par_xfer);
  return p.has(sized) ? sized : base;
}

inline Valued l2_speedup_for(const ModelContext& ctx, CodeId code, std::size_t n, std::size_t blocks,
                             const Circuit* adder = nullptr) {
  ProvenanceBuilder pb(ctx.profile);
  const auto key = "memhier.l2_speedup." + std::string(code_key(code)) + "." + std::to_string(n);
  if (ctx.profile.has(key)) return {ctx.profile.number(key), pb.from({key})};
  return baseline_speedup(ctx, code, n, blocks, adder);
}

inline std::vector<std::string> l1_model_keys(const Profile& p, CodeId code, std::size_t n) {
  const std::string base = "memhier.l1_speedup." + std::string(code_key(code)) + ".";
  const auto sized = base + "transfers_per_slot." + std::to_string(n);
  return {base + "compute_overhead", p.has(sized) ? sized : base + "transfers_per_slot"};
}

// ---------------------------------------------------------------------------
// Experiment

struct FidelityReport {
  double budget = 0.0;                  // max level-1 time share
  double mix_l1_time_fraction = 0.0;    // under the configured mix rule
  double pipeline_l1_time_fraction = 0.0;  // implied by the calibrated pipeline split
  std::string status = "ok";
  std::string diagnostic;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t compute_blocks = 0;
  std::size_t cache_capacity = 0;

  AreaReport area;
  std::map<std::string, double> values;
  std::map<std::string, Provenance> provenance;
  std::optional<HierarchyRun> cache_run;
  FidelityReport fidelity;
  std::vector<std::string> notes;

  double value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw DomainError("report has no value '" + name + "'");
    return it->second;
  }
  bool calibrated(const std::string& name) const {
    auto it = provenance.find(name);
    return it != provenance.end() && it->second.calibrated;
  }
  void put(const std::string& name, double v, Provenance p) {
    values[name] = v;
    provenance[name] = std::move(p);
  }
};

inline double gain_product(double area_factor, double adder_speedup) {
  if (!(area_factor > 0.0) || !(adder_speedup > 0.0)) {
    throw DomainError("gain_product: inputs must be > 0");
  }
  return area_factor * adder_speedup;
}

/// `workload`, when given, replaces the generated adder in the cache simulation.
inline ExperimentReport run_experiment(const ModelContext& ctx, const ExperimentConfig& cfg,
                                       const Circuit* workload = nullptr) {
  cfg.validate();
  const Profile& p = ctx.profile;
  ProvenanceBuilder pb(p);
  ExperimentReport rep;
  rep.config = cfg;
  const auto n = cfg.input_size;
  const auto code = cfg.code;

  const auto adder = gen_cla_adder(n);
  const DependencyGraph dag(adder);
  const auto slots = static_cast<double>(schedule(adder, dag, kUnlimited).makespan);
  rep.put("adder_slots", slots, {});

  rep.compute_blocks = cfg.compute_blocks;
  if (rep.compute_blocks == 0 && cfg.levels == 2) rep.compute_blocks = default_blocks(p, n);

  const auto af = area_factor_for(ctx, code, n, rep.compute_blocks, &rep.area);
  rep.put("area_factor", af.value, af.provenance);
  rep.put("qla_area_mm2", rep.area.qla_area, af.provenance);
  rep.put("cqla_area_mm2", rep.area.cqla_area, af.provenance);

  const auto base = baseline_speedup(ctx, code, n, rep.compute_blocks, &adder);
  rep.put("speedup", base.value, base.provenance);
  rep.put("table4_gain_product", gain_product(af.value, base.value),
          ProvenanceBuilder::merge({af.provenance, base.provenance}));

  const std::uint64_t adds =
      gen_modexp_schedule(n, static_cast<std::size_t>(p.number_or("circuit.modexp.adders_per_modular_addition", 2)))
          .size();
  rep.put("modexp_adders", static_cast<double>(adds), pb.from({"circuit.modexp.adders_per_modular_addition"}));

  if (cfg.levels == 1) {
    const double t_l2 = slots * logical_gate_time(ctx.codes, code, 2, GateKind::Cnot, ctx.tech);
    rep.put("adder_speedup", base.value, base.provenance);
    rep.put("gain_product", gain_product(af.value, base.value),
            ProvenanceBuilder::merge({af.provenance, base.provenance}));
    rep.put("adder_time_l2", t_l2, {});
    rep.put("avg_adder_time", t_l2, {});
    rep.put("modexp_time", static_cast<double>(adds) * t_l2, {});
    rep.fidelity.status = "single_level";
    return rep;
  }

  // Level-1 pipeline.
  const auto model = l1_speedup_model(p, ctx.codes, ctx.tech, ctx.xfer, code, n, slots);
  const auto l1_prov = ProvenanceBuilder::merge({pb.from(l1_model_keys(p, code, n)), pb.from({"ecc.toffoli_cnot_rounds"})});
  const double s1 = l1_adder_speedup(model, static_cast<double>(cfg.par_xfer));
  rep.put("l1_speedup", s1, l1_prov);
  const auto s2 = l2_speedup_for(ctx, code, n, rep.compute_blocks, &adder);
  rep.put("l2_speedup", s2.value, s2.provenance);
  const auto phi_key = l1_fraction_key(p, code, cfg.par_xfer);
  const double phi = p.number(phi_key);
  const auto phi_prov = pb.from({phi_key});
  rep.put("l1_work_fraction", phi, phi_prov);
  const double a = pipelined_adder_speedup(phi, s1, s2.value);
  const auto a_prov = ProvenanceBuilder::merge({l1_prov, s2.provenance, phi_prov});
  rep.put("adder_speedup", a, a_prov);
  rep.put("gain_product", gain_product(af.value, a), ProvenanceBuilder::merge({af.provenance, a_prov}));
  rep.put("adder_time_l1", model.compute_l1(), l1_prov);
  rep.put("adder_time_l2", model.compute_l2(), {});
  rep.put("l1_transfer_time", model.transfer_time(static_cast<double>(cfg.par_xfer)), l1_prov);

  // Cache behaviour of one adder in the level-1 region.
  const std::size_t block_data = static_cast<std::size_t>(p.number_or("layout.block_data", 9));
  const std::size_t compute_qubits = std::max<std::size_t>(3, rep.compute_blocks * block_data);
  rep.cache_capacity = cfg.cache_capacity != 0
                           ? cfg.cache_capacity
                           : static_cast<std::size_t>(std::llround(p.number_or("memhier.cache_factor", 2.0) *
                                                                   static_cast<double>(compute_qubits)));
  const auto timing = HierarchyTiming::for_code(ctx.codes, ctx.tech, ctx.xfer, code);
  rep.cache_run = simulate_cache(workload ? *workload : adder, {rep.cache_capacity, compute_qubits, cfg.fetch_policy, cfg.par_xfer}, timing);
  rep.put("hit_rate", rep.cache_run->hit_rate, {});
  rep.put("transfers", static_cast<double>(rep.cache_run->transfers), {});
  rep.put("stall_time", rep.cache_run->stall_time, {});
  rep.put("exec_time", rep.cache_run->exec_time, {});

  // Fidelity gate.
  const auto fb = FidelityBudget::from_profile(p, code, ctx.tech);
  const auto budget = l1_time_budget(fb, ec_time(ctx.codes, code, 1, ctx.tech), ec_time(ctx.codes, code, 2, ctx.tech));
  const std::string ck(code_key(code));
  const auto budget_prov = pb.from({"fidelity.time_steps", "fidelity.logical_qubits", "fidelity.p_th." + ck,
                                    "fidelity.r", "fidelity.p0", "ecc." + ck + ".l1.ec_cycles_per_syndrome"});
  rep.fidelity.budget = budget.fraction;
  rep.fidelity.diagnostic = budget.diagnostic;
  rep.put("l1_time_budget", budget.fraction, budget_prov);
  if (budget.status != BudgetStatus::Ok) rep.fidelity.status = "no_level1_budget";

  if (cfg.forced_l1_time_fraction) check_l1_time_fraction(*cfg.forced_l1_time_fraction, budget.fraction);
  const auto mixed = mixed_level_time(adds, cfg.mix, model.compute_l1(), model.compute_l2(), budget.fraction);
  rep.fidelity.mix_l1_time_fraction = mixed.l1_time_fraction;
  rep.put("mix_l1_time_fraction", mixed.l1_time_fraction, l1_prov);
  rep.put("modexp_time", mixed.total_time, l1_prov);
  rep.put("avg_adder_time", adds ? mixed.total_time / static_cast<double>(adds) : 0.0, l1_prov);

  rep.fidelity.pipeline_l1_time_fraction = l1_time_share(phi, model.compute_l1(), model.compute_l2());
  rep.put("pipeline_l1_time_fraction", rep.fidelity.pipeline_l1_time_fraction,
          ProvenanceBuilder::merge({phi_prov, l1_prov}));
  if (rep.fidelity.pipeline_l1_time_fraction > budget.fraction) {
    rep.notes.push_back("adder_speedup uses a calibrated level-1 work split whose level-1 time share (" +
                        std::to_string(rep.fidelity.pipeline_l1_time_fraction) + ") exceeds the fidelity budget (" +
                        std::to_string(budget.fraction) + "); the mix rule schedule is the one that was checked");
    if (rep.fidelity.status == "ok") rep.fidelity.status = "ok_mix_rule_calibrated_speedup_over_budget";
  }
  return rep;
}

inline ExperimentReport run_experiment(const Profile& p) {
  const ModelContext ctx(p);
  return run_experiment(ctx, ExperimentConfig::from_profile(p));
}

/// Provenance problems: values whose flag disagrees with the profile, and
/// values with no provenance entry at all.
inline std::vector<std::string> validate_provenance(const ExperimentReport& r, const Profile& p) {
  std::vector<std::string> problems;
  for (const auto& [name, v] : r.values) {
    auto it = r.provenance.find(name);
    if (it == r.provenance.end()) {
      problems.push_back(name + ": missing provenance");
      continue;
    }
    bool expect = false;
    for (const auto& k : it->second.sources) expect = expect || p.calibrated(k);
    if (expect && !it->second.calibrated) problems.push_back(name + ": calibrated input not flagged");
    if (!expect && it->second.calibrated) problems.push_back(name + ": flagged calibrated without a calibrated source");
  }
  return problems;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json report_to_json(const ExperimentReport& r, const std::string& timestamp = "") {
  using nlohmann::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["metadata"] = {{"timestamp", timestamp}, {"generator", "cqla"}};
  j["config"] = {{"input_size", r.config.input_size},
                 {"code", std::string(code_key(r.config.code))},
                 {"compute_blocks", r.compute_blocks},
                 {"cache_capacity", r.cache_capacity},
                 {"par_xfer", r.config.par_xfer},
                 {"fetch_policy", std::string(policy_name(r.config.fetch_policy))},
                 {"levels", r.config.levels},
                 {"mix", {{"l1", r.config.mix.l1}, {"l2", r.config.mix.l2}}}};
  json results = json::object();
  for (const auto& [name, v] : r.values) {
    const auto& prov = r.provenance.at(name);
    results[name] = {{"value", v}, {"calibrated", prov.calibrated}, {"sources", prov.sources}};
  }
  j["results"] = results;
  j["fidelity"] = {{"budget", r.fidelity.budget},
                   {"mix_l1_time_fraction", r.fidelity.mix_l1_time_fraction},
                   {"pipeline_l1_time_fraction", r.fidelity.pipeline_l1_time_fraction},
                   {"status", r.fidelity.status},
                   {"diagnostic", r.fidelity.diagnostic}};
  j["area"] = {{"qla_area_mm2", r.area.qla_area},
               {"cqla_area_mm2", r.area.cqla_area},
               {"memory_area_mm2", r.area.memory_area},
               {"compute_area_mm2", r.area.compute_area}};
  if (r.cache_run) {
    const auto& c = *r.cache_run;
    j["cache"] = {{"hits", c.hits},           {"misses", c.misses},         {"hit_rate", c.hit_rate},
                  {"fetches", c.fetches},     {"write_backs", c.write_backs}, {"transfers", c.transfers},
                  {"stall_time", c.stall_time}, {"exec_time", c.exec_time},   {"compute_bound", c.compute_bound}};
  }
  j["notes"] = r.notes;
  return j;
}

/// Report JSON without the metadata block, for reproducibility comparisons.
inline std::string stable_report_text(const nlohmann::json& j) {
  auto copy = j;
  copy.erase("metadata");
  return copy.dump(2);
}

// ---------------------------------------------------------------------------
// CSV

namespace csv {

inline std::string number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw DomainError("number not representable");
  return std::string(buf.data(), ptr);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write(std::ostream& os, const Table& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find_first_of(",\"\n") != std::string::npos) {
        throw DomainError("csv cell needs quoting: " + cells[i]);
      }
      os << (i ? "," : "") << cells[i];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw DomainError("csv row width differs from header");
    line(r);
  }
}

inline Table parse(std::string_view text) {
  Table t;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw DomainError("csv row width differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

inline double to_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("bad csv number '" + s + "'");
  return v;
}

}  // namespace csv

struct Table4Row {
  std::size_t input_size = 0;
  std::size_t blocks = 0;
  double area_factor_steane = 0.0;
  double area_factor_bsr = 0.0;
  double speedup_steane = 0.0;
  double speedup_bsr = 0.0;
  double gp_steane = 0.0;
  double gp_bsr = 0.0;
  bool calibrated = false;
  friend bool operator==(const Table4Row&, const Table4Row&) = default;
};

struct Table5Row {
  std::size_t par_xfer = 0;
  std::size_t adder_size = 0;
  double l1_speedup = 0.0;
  double l2_speedup = 0.0;
  double adder_speedup = 0.0;
  double area_factor = 0.0;
  double gain_product = 0.0;
  bool calibrated = false;
  friend bool operator==(const Table5Row&, const Table5Row&) = default;
};

inline const std::vector<std::string>& table4_columns() {
  static const std::vector<std::string> cols = {"input_size",    "blocks",      "area_factor_steane",
                                                "area_factor_bsr", "speedup_steane", "speedup_bsr",
                                                "gp_steane",     "gp_bsr"};
  return cols;
}

inline const std::vector<std::string>& table5_columns() {
  static const std::vector<std::string> cols = {"par_xfer",      "adder_size", "l1_speedup", "l2_speedup",
                                                "adder_speedup", "area_factor", "gain_product"};
  return cols;
}

inline csv::Table to_csv(const std::vector<Table4Row>& rows) {
  csv::Table t{table4_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.input_size), std::to_string(r.blocks), csv::number(r.area_factor_steane),
                      csv::number(r.area_factor_bsr), csv::number(r.speedup_steane), csv::number(r.speedup_bsr),
                      csv::number(r.gp_steane), csv::number(r.gp_bsr)});
  }
  return t;
}

inline csv::Table to_csv(const std::vector<Table5Row>& rows) {
  csv::Table t{table5_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.par_xfer), std::to_string(r.adder_size), csv::number(r.l1_speedup),
                      csv::number(r.l2_speedup), csv::number(r.adder_speedup), csv::number(r.area_factor),
                      csv::number(r.gain_product)});
  }
  return t;
}

inline std::vector<Table4Row> parse_table4(std::string_view text) {
  const auto t = csv::parse(text);
  if (t.header != table4_columns()) throw DomainError("not a Table 4 shaped csv");
  std::vector<Table4Row> out;
  for (const auto& r : t.rows) {
    Table4Row x;
    x.input_size = static_cast<std::size_t>(csv::to_double(r[0]));
    x.blocks = static_cast<std::size_t>(csv::to_double(r[1]));
    x.area_factor_steane = csv::to_double(r[2]);
    x.area_factor_bsr = csv::to_double(r[3]);
    x.speedup_steane = csv::to_double(r[4]);
    x.speedup_bsr = csv::to_double(r[5]);
    x.gp_steane = csv::to_double(r[6]);
    x.gp_bsr = csv::to_double(r[7]);
    out.push_back(x);
  }
  return out;
}

inline std::vector<Table5Row> parse_table5(std::string_view text) {
  const auto t = csv::parse(text);
  if (t.header != table5_columns()) throw DomainError("not a Table 5 shaped csv");
  std::vector<Table5Row> out;
  for (const auto& r : t.rows) {
    Table5Row x;
    x.par_xfer = static_cast<std::size_t>(csv::to_double(r[0]));
    x.adder_size = static_cast<std::size_t>(csv::to_double(r[1]));
    x.l1_speedup = csv::to_double(r[2]);
    x.l2_speedup = csv::to_double(r[3]);
    x.adder_speedup = csv::to_double(r[4]);
    x.area_factor = csv::to_double(r[5]);
    x.gain_product = csv::to_double(r[6]);
    out.push_back(x);
  }
  return out;
}

inline Table5Row table5_row(const ExperimentReport& r) {
  if (r.config.levels != 2) throw DomainError("table5_row needs a two-level run");
  Table5Row x;
  x.par_xfer = r.config.par_xfer;
  x.adder_size = r.config.input_size;
  x.l1_speedup = r.value("l1_speedup");
  x.l2_speedup = r.value("l2_speedup");
  x.adder_speedup = r.value("adder_speedup");
  x.area_factor = r.value("area_factor");
  x.gain_product = r.value("gain_product");
  x.calibrated = r.calibrated("gain_product");
  return x;
}

inline Table4Row table4_row(const ModelContext& ctx, std::size_t n, std::size_t blocks) {
  const auto adder = gen_cla_adder(n);
  Table4Row x;
  x.input_size = n;
  x.blocks = blocks;
  const auto a7 = area_factor_for(ctx, CodeId::Steane713, n, blocks);
  const auto a9 = area_factor_for(ctx, CodeId::BaconShor913, n, blocks);
  const auto s7 = baseline_speedup(ctx, CodeId::Steane713, n, blocks, &adder);
  const auto s9 = baseline_speedup(ctx, CodeId::BaconShor913, n, blocks, &adder);
  x.area_factor_steane = a7.value;
  x.area_factor_bsr = a9.value;
  x.speedup_steane = s7.value;
  x.speedup_bsr = s9.value;
  x.gp_steane = gain_product(a7.value, s7.value);
  x.gp_bsr = gain_product(a9.value, s9.value);
  x.calibrated = a7.provenance.calibrated || a9.provenance.calibrated || s7.provenance.calibrated ||
                 s9.provenance.calibrated;
  return x;
}

// ---------------------------------------------------------------------------
// Files

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

inline std::string csv_text(const csv::Table& t) {
  std::ostringstream os;
  csv::write(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepTables {
  std::vector<Table4Row> table4;
  std::map<CodeId, std::vector<Table5Row>> table5;
  csv::Table fig2;   // limit, makespan
  csv::Table fig5a;  // blocks, utilization, makespan
  csv::Table fig5b;  // blocks, available, required, worst_case_required
  csv::Table fig6;   // adder_size, compute_qubits, cache_capacity, policy, hit_rate
  csv::Table fig7;   // workload, n, comm_time, comp_time
};

struct SweepOptions {
  std::vector<std::pair<std::size_t, std::size_t>> table4_rows = {
      {32, 4},   {32, 9},   {64, 9},   {64, 16},  {128, 16}, {128, 25},
      {256, 36}, {256, 49}, {512, 64}, {512, 81}, {1024, 100}, {1024, 121}};
  std::vector<std::size_t> table5_sizes = {256, 512, 1024};
  std::vector<std::size_t> table5_par = {10, 5};
  std::size_t fig2_adder = 64;
  std::size_t fig2_min_limits = 20;
  std::size_t fig5a_adder = 128;
  std::size_t fig5a_max_blocks = 49;
  std::size_t fig5b_max_blocks = 100;
  std::vector<std::size_t> fig6_sizes = {64, 128, 256, 512};
  std::vector<double> fig6_cache_factors = {1.0, 1.5, 2.0};
  std::vector<std::size_t> fig7_sizes = {64, 128, 256, 512, 1024};
};

inline SweepTables run_sweep(const ModelContext& ctx, const SweepOptions& opt = {}) {
  const Profile& p = ctx.profile;
  SweepTables out;
  for (auto [n, b] : opt.table4_rows) out.table4.push_back(table4_row(ctx, n, b));

  for (CodeId code : kAllCodes) {
    auto& rows = out.table5[code];
    for (auto par : opt.table5_par) {
      for (auto n : opt.table5_sizes) {
        ExperimentConfig cfg;
        cfg.input_size = n;
        cfg.code = code;
        cfg.par_xfer = par;
        cfg.mix.l1 = static_cast<std::size_t>(p.number_or("memhier.mix.l1", 1));
        cfg.mix.l2 = static_cast<std::size_t>(p.number_or("memhier.mix.l2", 2));
        rows.push_back(table5_row(run_experiment(ctx, cfg)));
      }
    }
  }

  {
    const auto adder = gen_cla_adder(opt.fig2_adder);
    const auto prof = parallelism_profile(adder, {}, opt.fig2_min_limits);
    out.fig2.header = {"limit", "makespan"};
    for (auto [limit, m] : prof.makespan) out.fig2.rows.push_back({std::to_string(limit), std::to_string(m)});
  }
  {
    const auto adder = gen_cla_adder(opt.fig5a_adder);
    out.fig5a.header = {"blocks", "utilization", "makespan"};
    for (std::size_t b = 1; b <= opt.fig5a_max_blocks; ++b) {
      const auto u = utilization(adder, b, 9);
      out.fig5a.rows.push_back({std::to_string(b), csv::number(u.utilization), std::to_string(u.makespan)});
    }
  }
  {
    std::vector<std::size_t> sizes;
    for (std::size_t b = 1; b <= opt.fig5b_max_blocks; ++b) sizes.push_back(b);
    const auto c = bandwidth_curves(p.number("layout.bandwidth.demand_per_block"),
                                    p.number("layout.bandwidth.channels_per_edge"), sizes);
    out.fig5b.header = {"blocks", "available", "required", "worst_case_required"};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      out.fig5b.rows.push_back({std::to_string(sizes[i]), csv::number(c.available[i]), csv::number(c.required[i]),
                                csv::number(c.worst_case_required[i])});
    }
  }
  {
    out.fig6.header = {"adder_size", "compute_qubits", "cache_capacity", "policy", "hit_rate"};
    const auto timing = HierarchyTiming::for_code(ctx.codes, ctx.tech, ctx.xfer, CodeId::Steane713);
    for (auto n : opt.fig6_sizes) {
      const auto adder = gen_cla_adder(n);
      const auto compute = default_blocks(p, n) * 9;
      for (double f : opt.fig6_cache_factors) {
        const auto cap = static_cast<std::size_t>(std::llround(f * static_cast<double>(compute)));
        for (auto pol : {FetchPolicy::Naive, FetchPolicy::Optimized}) {
          const auto run = simulate_cache(adder, {cap, compute, pol, 10}, timing);
          out.fig6.rows.push_back({std::to_string(n), std::to_string(compute), std::to_string(cap),
                                   std::string(policy_name(pol)), csv::number(run.hit_rate)});
        }
      }
    }
  }
  {
    out.fig7.header = {"workload", "code", "n", "comm_time", "comp_time"};
    const auto k = static_cast<std::size_t>(p.number_or("circuit.modexp.adders_per_modular_addition", 2));
    for (CodeId code : kAllCodes) {
      const auto mesh = MeshSpec::from_profile(p, ctx.codes, code);
      const auto times = GateTimes::at_level(ctx.codes, ctx.tech, code, 2);
      for (auto n : opt.fig7_sizes) {
        const auto m = modexp_comm_vs_comp(n, mesh, times, k);
        out.fig7.rows.push_back({"modexp", std::string(code_key(code)), std::to_string(n),
                                 csv::number(m.total_comm_time), csv::number(m.total_comp_time)});
        const auto q = qft_comm_vs_comp(n, mesh, times);
        out.fig7.rows.push_back({"qft", std::string(code_key(code)), std::to_string(n),
                                 csv::number(q.total_comm_time), csv::number(q.total_comp_time)});
      }
    }
  }
  return out;
}

/// Writes every sweep table under `dir`; returns the file names written.
inline std::vector<std::string> emit_tables(const SweepTables& t, const std::filesystem::path& dir) {
  std::vector<std::string> names;
  auto put = [&](const std::string& name, const csv::Table& table) {
    write_file_atomic(dir / name, csv_text(table));
    names.push_back(name);
  };
  put("table4.csv", to_csv(t.table4));
  for (const auto& [code, rows] : t.table5) put("table5_" + std::string(code_key(code)) + ".csv", to_csv(rows));
  put("fig2_parallelism.csv", t.fig2);
  put("fig5a_utilization.csv", t.fig5a);
  put("fig5b_bandwidth.csv", t.fig5b);
  put("fig6_hit_rate.csv", t.fig6);
  put("fig7_comm_vs_comp.csv", t.fig7);
  return names;
}

inline nlohmann::json sweep_to_json(const SweepTables& t) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  auto table = [](const csv::Table& x) {
    json rows = json::array();
    for (const auto& r : x.rows) {
      json row = json::object();
      for (std::size_t i = 0; i < x.header.size(); ++i) row[x.header[i]] = r[i];
      rows.push_back(row);
    }
    return rows;
  };
  j["table4"] = table(to_csv(t.table4));
  for (const auto& [code, rows] : t.table5) j["table5"][std::string(code_key(code))] = table(to_csv(rows));
  j["fig2"] = table(t.fig2);
  j["fig5a"] = table(t.fig5a);
  j["fig5b"] = table(t.fig5b);
  j["fig6"] = table(t.fig6);
  j["fig7"] = table(t.fig7);
  return j;
}

}  // namespace cqla
