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

// cqla: command-line front end for the architecture cost model.

#include "cqla/cqla.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  std::string format = "csv";
};

cqla::Profile load_profile(const Common& c) {
  auto p = cqla::default_profile();
  if (!c.config.empty()) p.merge(cqla::Profile::load(c.config));
  for (const auto& kv : c.overrides) p.merge(cqla::Profile::parse(kv, "--set"));
  return p;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes `text` to <out>/<name> when --out is set, otherwise to stdout.
void emit(const Common& c, const std::string& name, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  cqla::write_file_atomic(fs::path(c.out) / name, text);
  std::cerr << "wrote " << (fs::path(c.out) / name).string() << '\n';
}

std::string ext(const Common& c) { return c.format == "json" ? ".json" : ".csv"; }

std::string table_json(const cqla::csv::Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

std::string render(const Common& c, const cqla::csv::Table& t) {
  return c.format == "json" ? table_json(t) : cqla::csv_text(t);
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Profile file merged over the built-in defaults")->check(CLI::ExistingFile);
  app->add_option("--set", c.overrides, "Profile override, key=value (repeatable)");
  app->add_option("--out", c.out, "Output directory (default: stdout)");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::optional<std::size_t> size, blocks, par_xfer, cache, levels;
  std::optional<std::string> code, policy, circuit;
  std::optional<double> l1_fraction;
};

int run_simulate(const Common& c, const SimulateArgs& a) {
  auto p = load_profile(c);
  if (a.size) p.set_number("experiment.input_size", static_cast<double>(*a.size));
  if (a.blocks) p.set_number("experiment.compute_blocks", static_cast<double>(*a.blocks));
  if (a.par_xfer) p.set_number("experiment.par_xfer", static_cast<double>(*a.par_xfer));
  if (a.cache) p.set_number("experiment.cache_capacity", static_cast<double>(*a.cache));
  if (a.levels) p.set_number("experiment.levels", static_cast<double>(*a.levels));
  if (a.code) p.set_text("experiment.code", *a.code);
  if (a.policy) p.set_text("experiment.fetch_policy", *a.policy);
  if (a.l1_fraction) p.set_number("experiment.forced_l1_time_fraction", *a.l1_fraction);

  const cqla::ModelContext ctx(p);
  const auto cfg = cqla::ExperimentConfig::from_profile(ctx.profile);
  std::optional<cqla::Circuit> workload;
  if (a.circuit) workload = cqla::load_circuit(*a.circuit);
  const auto rep = cqla::run_experiment(ctx, cfg, workload ? &*workload : nullptr);
  if (auto bad = cqla::validate_provenance(rep, ctx.profile); !bad.empty()) {
    throw cqla::ConfigError("provenance check failed: " + bad.front());
  }

  if (c.format == "json") {
    emit(c, "report.json", cqla::report_to_json(rep, utc_timestamp()).dump(2) + "\n");
  } else {
    cqla::csv::Table t{{"name", "value", "calibrated"}, {}};
    for (const auto& [name, v] : rep.values) {
      t.rows.push_back({name, cqla::csv::number(v), rep.calibrated(name) ? "1" : "0"});
    }
    t.rows.push_back({"fidelity_status", rep.fidelity.status, "0"});
    emit(c, "report.csv", cqla::csv_text(t));
  }
  if (!c.out.empty() && rep.cache_run) {
    std::ostringstream os;
    cqla::write_trace_csv(os, rep.cache_run->trace);
    emit(c, "cache_trace.csv", os.str());
  }
  for (const auto& n : rep.notes) std::cerr << "note: " << n << '\n';
  return 0;
}

int run_gen_circuit(const Common& c, const std::string& kind, std::size_t n) {
  cqla::Circuit circ;
  if (kind == "adder") {
    circ = cqla::gen_cla_adder(n);
  } else {
    circ = cqla::gen_qft(n);
  }
  emit(c, kind + "_" + std::to_string(n) + ".qc", cqla::to_text(circ));
  return 0;
}

int run_schedule(const Common& c, std::optional<std::string> circuit, std::size_t adder_bits, std::size_t limits,
                 const std::vector<std::size_t>& blocks, bool unit_slots) {
  const auto circ = circuit ? cqla::load_circuit(*circuit) : cqla::gen_cla_adder(adder_bits);
  const auto slots = unit_slots ? cqla::SlotModel::unit() : cqla::SlotModel{};
  const auto prof = cqla::parallelism_profile(circ, slots, limits);
  cqla::csv::Table t{{"limit", "makespan"}, {}};
  for (auto [l, m] : prof.makespan) t.rows.push_back({std::to_string(l), std::to_string(m)});
  emit(c, "parallelism" + ext(c), render(c, t));
  std::cerr << "unlimited makespan " << prof.unlimited_makespan << ", saturates at limit " << prof.saturation << '\n';
  if (!blocks.empty()) {
    cqla::csv::Table u{{"blocks", "utilization", "makespan"}, {}};
    for (auto b : blocks) {
      const auto e = cqla::utilization(circ, b, 9, slots);
      u.rows.push_back({std::to_string(b), cqla::csv::number(e.utilization), std::to_string(e.makespan)});
    }
    emit(c, "utilization" + ext(c), render(c, u));
  }
  return 0;
}

int run_area(const Common& c, std::optional<std::size_t> size, std::optional<std::size_t> blocks,
             std::optional<std::string> code) {
  const cqla::ModelContext ctx(load_profile(c));
  const auto n = size.value_or(static_cast<std::size_t>(ctx.profile.number_or("experiment.input_size", 1024)));
  const auto b = blocks.value_or(cqla::default_blocks(ctx.profile, n));
  cqla::csv::Table t{{"code", "input_size", "blocks", "qla_area_mm2", "cqla_area_mm2", "area_factor", "calibrated"}, {}};
  for (auto id : cqla::kAllCodes) {
    if (code && cqla::parse_code(*code) != id) continue;
    cqla::AreaReport r;
    const auto v = cqla::area_factor_for(ctx, id, n, b, &r);
    t.rows.push_back({std::string(cqla::code_key(id)), std::to_string(n), std::to_string(b),
                      cqla::csv::number(r.qla_area), cqla::csv::number(r.cqla_area), cqla::csv::number(v.value),
                      v.provenance.calibrated ? "1" : "0"});
  }
  emit(c, "area" + ext(c), render(c, t));
  return 0;
}

int run_bandwidth(const Common& c, std::size_t max_blocks) {
  const cqla::ModelContext ctx(load_profile(c));
  const auto& p = ctx.profile;
  std::vector<std::size_t> sizes;
  for (std::size_t b = 1; b <= max_blocks; ++b) sizes.push_back(b);
  const auto curves = cqla::bandwidth_curves(p.number("layout.bandwidth.demand_per_block"),
                                             p.number("layout.bandwidth.channels_per_edge"), sizes);
  cqla::csv::Table t{{"blocks", "available", "required", "worst_case_required"}, {}};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    t.rows.push_back({std::to_string(sizes[i]), cqla::csv::number(curves.available[i]),
                      cqla::csv::number(curves.required[i]), cqla::csv::number(curves.worst_case_required[i])});
  }
  const double ion = p.number("layout.teleport_ion_time");
  if (c.format == "json") {
    json j;
    j["curves"] = json::parse(table_json(t));
    j["crossover"] = curves.crossover ? json(*curves.crossover) : json(nullptr);
    for (auto id : cqla::kAllCodes) {
      j["toffoli_bandwidth"][std::string(cqla::code_key(id))] = cqla::toffoli_bandwidth(ctx.codes, id, ion);
    }
    emit(c, "bandwidth.json", j.dump(2) + "\n");
  } else {
    emit(c, "bandwidth.csv", cqla::csv_text(t));
    std::cerr << "crossover "
              << (curves.crossover ? std::to_string(*curves.crossover) : std::string("none")) << " blocks\n";
    for (auto id : cqla::kAllCodes) {
      std::cerr << "toffoli bandwidth " << cqla::code_key(id) << ": "
                << cqla::toffoli_bandwidth(ctx.codes, id, ion) << " channels\n";
    }
  }
  return 0;
}

int run_sweep_cmd(const Common& c) {
  const cqla::ModelContext ctx(load_profile(c));
  const auto tables = cqla::run_sweep(ctx);
  if (c.format == "json") {
    auto j = cqla::sweep_to_json(tables);
    j["metadata"] = {{"timestamp", utc_timestamp()}, {"generator", "cqla"}};
    emit(c, "sweep.json", j.dump(2) + "\n");
    return 0;
  }
  if (c.out.empty()) {
    std::cout << cqla::csv_text(cqla::to_csv(tables.table4));
    return 0;
  }
  for (const auto& name : cqla::emit_tables(tables, c.out)) {
    std::cerr << "wrote " << (fs::path(c.out) / name).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost model for a memory/compute specialized quantum architecture"};
  app.require_subcommand(1);
  Common common;

  auto* sim = app.add_subcommand("simulate", "Run one experiment and report speedups, area and hit rate");
  add_common(sim, common);
  SimulateArgs sa;
  sim->add_option("--size", sa.size, "Adder width in bits");
  sim->add_option("--code", sa.code, "steane or bacon_shor");
  sim->add_option("--blocks", sa.blocks, "Compute blocks");
  sim->add_option("--par-xfer", sa.par_xfer, "Parallel memory/cache transfers");
  sim->add_option("--cache", sa.cache, "Cache capacity in logical qubits");
  sim->add_option("--policy", sa.policy, "naive or optimized")->check(CLI::IsMember({"naive", "optimized"}));
  sim->add_option("--levels", sa.levels, "1 for a single-level run");
  sim->add_option("--l1-time-fraction", sa.l1_fraction, "Force a level-1 time share (checked against the budget)");
  sim->add_option("--circuit", sa.circuit, "Circuit file for the cache simulation")->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("gen-circuit", "Generate a logical circuit");
  add_common(gen, common);
  std::string kind = "adder";
  std::size_t bits = 64;
  gen->add_option("--kind", kind, "adder or qft")->check(CLI::IsMember({"adder", "qft"}));
  gen->add_option("-n,--bits", bits, "Width")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));

  auto* sch = app.add_subcommand("schedule", "Makespan against issue limit and block utilization");
  add_common(sch, common);
  std::optional<std::string> sch_circuit;
  std::size_t sch_bits = 64;
  std::size_t limits = 20;
  std::vector<std::size_t> sch_blocks;
  bool unit = false;
  sch->add_option("--circuit", sch_circuit, "Circuit file")->check(CLI::ExistingFile);
  sch->add_option("--adder", sch_bits, "Generate an adder of this width instead");
  sch->add_option("--limits", limits, "Report limits 1..N at least");
  sch->add_option("--blocks", sch_blocks, "Block counts for utilization");
  sch->add_flag("--unit-slots", unit, "Count a Toffoli as one slot");

  auto* ar = app.add_subcommand("area", "Area against the uniform baseline");
  add_common(ar, common);
  std::optional<std::size_t> ar_size, ar_blocks;
  std::optional<std::string> ar_code;
  ar->add_option("--size", ar_size, "Input size in bits");
  ar->add_option("--blocks", ar_blocks, "Compute blocks");
  ar->add_option("--code", ar_code, "Restrict to one code");

  auto* bw = app.add_subcommand("bandwidth", "Superblock bandwidth curves");
  add_common(bw, common);
  std::size_t max_blocks = 100;
  bw->add_option("--max-blocks", max_blocks, "Largest superblock");

  auto* sw = app.add_subcommand("sweep", "Regenerate every table and plot dataset");
  add_common(sw, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cqla::exit_code(cqla::ErrorKind::Config);
  }

  try {
    if (*sim) return run_simulate(common, sa);
    if (*gen) return run_gen_circuit(common, kind, bits);
    if (*sch) return run_schedule(common, sch_circuit, sch_bits, limits, sch_blocks, unit);
    if (*ar) return run_area(common, ar_size, ar_blocks, ar_code);
    if (*bw) return run_bandwidth(common, max_blocks);
    if (*sw) return run_sweep_cmd(common);
  } catch (const cqla::FidelityError& e) {
    std::cerr << "fidelity error: " << e.what() << " (level-1 time share " << e.offending_fraction() << ")\n";
    return cqla::exit_code(e.kind());
  } catch (const cqla::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cqla::exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cqla::exit_code(cqla::ErrorKind::Io);
  }
  return 1;
}
