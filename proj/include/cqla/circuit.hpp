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
 * @file circuit.hpp
 * @brief Logical-circuit IR, workload generators, and a classical oracle.
 *
 * Circuits are flat gate lists over logical-qubit ids in program order. The
 * text form is one gate per line, `KIND q<i> [q<j> [q<k>]]`, with optional
 * `# qubits N` and `# label text` directives.
 */

#pragma once

#include "cqla/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cqla {

using QubitId = std::uint32_t;

enum class GateType : std::uint8_t { X, Z, H, T, CNOT, CPhase, Toffoli, Measure };

/// Operand count required by each gate type.
constexpr int arity(GateType t) {
  switch (t) {
    case GateType::CNOT:
    case GateType::CPhase: return 2;
    case GateType::Toffoli: return 3;
    default: return 1;
  }
}

constexpr std::string_view gate_name(GateType t) {
  switch (t) {
    case GateType::X: return "X";
    case GateType::Z: return "Z";
    case GateType::H: return "H";
    case GateType::T: return "T";
    case GateType::CNOT: return "CNOT";
    case GateType::CPhase: return "CPHASE";
    case GateType::Toffoli: return "TOFFOLI";
    case GateType::Measure: return "MEASURE";
  }
  return "?";
}

inline GateType parse_gate_type(std::string_view s) {
  constexpr std::array<GateType, 8> all = {GateType::X,      GateType::Z,      GateType::H,
                                           GateType::T,      GateType::CNOT,   GateType::CPhase,
                                           GateType::Toffoli, GateType::Measure};
  for (auto t : all) {
    if (gate_name(t) == s) return t;
  }
  if (s == "CX") return GateType::CNOT;
  if (s == "CCX") return GateType::Toffoli;
  throw DomainError("unknown gate kind '" + std::string(s) + "'");
}

/// True for X, CNOT, and Toffoli, the gates with a classical truth table.
constexpr bool is_classical(GateType t) {
  return t == GateType::X || t == GateType::CNOT || t == GateType::Toffoli;
}

struct Gate {
  GateType type = GateType::X;
  std::array<QubitId, 3> q{};  // controls first, target last

  int size() const { return arity(type); }
  QubitId target() const { return q[static_cast<std::size_t>(size() - 1)]; }
  bool touches(QubitId id) const {
    for (int i = 0; i < size(); ++i) {
      if (q[static_cast<std::size_t>(i)] == id) return true;
    }
    return false;
  }

  static Gate make(GateType t, std::initializer_list<QubitId> ops) {
    if (static_cast<int>(ops.size()) != arity(t)) {
      throw DomainError(std::string(gate_name(t)) + " takes " + std::to_string(arity(t)) +
                        " operands");
    }
    Gate g;
    g.type = t;
    std::copy(ops.begin(), ops.end(), g.q.begin());
    for (int i = 0; i < g.size(); ++i) {
      for (int j = i + 1; j < g.size(); ++j) {
        if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)]) {
          throw DomainError(std::string(gate_name(t)) + " operands must be distinct");
        }
      }
    }
    return g;
  }
};

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t qubits, std::string label) : qubits_(qubits), label_(std::move(label)) {}

  std::size_t qubit_count() const { return qubits_; }
  const std::string& label() const { return label_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  void add(GateType t, std::initializer_list<QubitId> ops) { push(Gate::make(t, ops)); }

  void push(const Gate& g) {
    for (int i = 0; i < g.size(); ++i) {
      if (g.q[static_cast<std::size_t>(i)] >= qubits_) {
        throw DomainError("operand q" + std::to_string(g.q[static_cast<std::size_t>(i)]) +
                          " out of range for " + std::to_string(qubits_) + " qubits");
      }
    }
    gates_.push_back(g);
  }

  std::size_t count(GateType t) const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [t](const Gate& g) { return g.type == t; }));
  }

  std::size_t count_arity(int k) const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [k](const Gate& g) { return g.size() == k; }));
  }

 private:
  std::size_t qubits_ = 0;
  std::string label_;
  std::vector<Gate> gates_;
};

// ---------------------------------------------------------------------------
// Text format

inline void write_circuit(std::ostream& os, const Circuit& c) {
  os << "# label " << c.label() << "\n";
  os << "# qubits " << c.qubit_count() << "\n";
  for (const auto& g : c.gates()) {
    os << gate_name(g.type);
    for (int i = 0; i < g.size(); ++i) os << " q" << g.q[static_cast<std::size_t>(i)];
    os << "\n";
  }
}

inline std::string to_text(const Circuit& c) {
  std::ostringstream os;
  write_circuit(os, c);
  return os.str();
}

inline Circuit read_circuit(std::istream& is) {
  std::string label;
  std::size_t declared = 0;
  bool has_declared = false;
  std::vector<Gate> gates;
  std::size_t max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word[0] == '#') {
      std::string directive;
      if (word == "#") ls >> directive;
      else directive = word.substr(1);
      if (directive == "qubits") {
        if (!(ls >> declared)) throw DomainError("line " + std::to_string(line_no) + ": bad qubit count");
        has_declared = true;
      } else if (directive == "label") {
        std::getline(ls >> std::ws, label);
      }
      continue;
    }
    const GateType t = parse_gate_type(word);
    Gate g;
    g.type = t;
    for (int i = 0; i < arity(t); ++i) {
      std::string tok;
      if (!(ls >> tok) || tok.size() < 2 || tok[0] != 'q') {
        throw DomainError("line " + std::to_string(line_no) + ": expected operand q<i>");
      }
      std::uint64_t id = 0;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        if (tok[k] < '0' || tok[k] > '9') throw DomainError("line " + std::to_string(line_no) + ": bad operand");
        id = id * 10 + static_cast<std::uint64_t>(tok[k] - '0');
        if (id > 0xffffffffu) throw DomainError("line " + std::to_string(line_no) + ": operand too large");
      }
      g.q[static_cast<std::size_t>(i)] = static_cast<QubitId>(id);
      max_id = std::max<std::size_t>(max_id, id + 1);
    }
    std::string extra;
    if (ls >> extra) throw DomainError("line " + std::to_string(line_no) + ": too many operands");
    for (int i = 0; i < g.size(); ++i) {
      for (int j = i + 1; j < g.size(); ++j) {
        if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)]) {
          throw DomainError("line " + std::to_string(line_no) + ": operands must be distinct");
        }
      }
    }
    gates.push_back(g);
  }
  const std::size_t qubits = has_declared ? declared : max_id;
  Circuit c(qubits, label);
  for (const auto& g : gates) c.push(g);
  return c;
}

inline Circuit parse_circuit(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_circuit(is);
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open circuit file '" + path + "'");
  return read_circuit(in);
}

// ---------------------------------------------------------------------------
// Dependency graph

/// Program-order dependencies: each gate links to the most recent earlier
/// gate on each of its operands. The transitive closure of these edges is the
/// full "earlier gate sharing an operand" relation; no further reduction.
class DependencyGraph {
 public:
  explicit DependencyGraph(const Circuit& c) : preds_(c.size()), succs_(c.size()) {
    std::vector<std::int64_t> last(c.qubit_count(), -1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& g = c[i];
      for (int k = 0; k < g.size(); ++k) {
        const auto q = g.q[static_cast<std::size_t>(k)];
        const auto p = last[q];
        if (p >= 0) {
          auto pu = static_cast<std::size_t>(p);
          if (std::find(preds_[i].begin(), preds_[i].end(), pu) == preds_[i].end()) {
            preds_[i].push_back(pu);
            succs_[pu].push_back(i);
            ++edges_;
          }
        }
        last[q] = static_cast<std::int64_t>(i);
      }
    }
  }

  std::size_t size() const { return preds_.size(); }
  std::size_t edge_count() const { return edges_; }
  const std::vector<std::size_t>& preds(std::size_t i) const { return preds_[i]; }
  const std::vector<std::size_t>& succs(std::size_t i) const { return succs_[i]; }

  /// Kahn's algorithm; empty result if a cycle exists.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indeg(size());
    for (std::size_t i = 0; i < size(); ++i) indeg[i] = preds_[i].size();
    std::vector<std::size_t> ready, order;
    for (std::size_t i = 0; i < size(); ++i) {
      if (indeg[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
      const auto n = ready.back();
      ready.pop_back();
      order.push_back(n);
      for (auto s : succs_[n]) {
        if (--indeg[s] == 0) ready.push_back(s);
      }
    }
    if (order.size() != size()) order.clear();
    return order;
  }

  /// Longest path in gates, weighting each gate by `weight(gate index)`.
  template <typename Weight>
  std::uint64_t critical_path(Weight&& weight) const {
    std::vector<std::uint64_t> finish(size(), 0);
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < size(); ++i) {  // program order is topological
      std::uint64_t start = 0;
      for (auto p : preds_[i]) start = std::max(start, finish[p]);
      finish[i] = start + weight(i);
      best = std::max(best, finish[i]);
    }
    return best;
  }

 private:
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::size_t edges_ = 0;
};

// ---------------------------------------------------------------------------
// Carry-lookahead adder

/// Register layout of the in-place carry-lookahead adder on n bits.
///
/// a[0..n), b[0..n) hold the addends; b is overwritten with a+b mod 2^n.
/// z[1..n-1] receive the carries during the computation and the propagate
/// tree holds block propagate bits P_t[x] for t >= 1, x >= 1. All ancillae
/// start and end at |0>. Width is 3n - 1 + sum_t (floor((n-1)/2^t) - 1).
struct AdderLayout {
  std::size_t n = 0;
  std::size_t m = 0;  // carry-network width, n - 1
  std::size_t qubits = 0;

  QubitId a(std::size_t i) const { return static_cast<QubitId>(i); }
  QubitId b(std::size_t i) const { return static_cast<QubitId>(n + i); }
  QubitId z(std::size_t k) const { return static_cast<QubitId>(2 * n + k - 1); }  // k in [1, m]

  /// Block propagate P_t[x]; P_0[x] is b_x.
  QubitId p(std::size_t t, std::size_t x) const {
    if (t == 0) return b(x);
    return static_cast<QubitId>(p_offset_[t] + (x - 1));
  }

  std::size_t p_rounds() const { return p_offset_.empty() ? 0 : p_offset_.size() - 1; }

  explicit AdderLayout(std::size_t bits) : n(bits), m(bits == 0 ? 0 : bits - 1) {
    std::size_t next = 2 * n + m;
    p_offset_.push_back(0);
    const std::size_t tmax = log_floor(m) > 0 ? log_floor(m) - 1 : 0;
    for (std::size_t t = 1; t <= tmax; ++t) {
      p_offset_.push_back(next);
      const std::size_t count = (m >> t) - 1;
      next += count;
    }
    if (p_offset_.size() == 1) p_offset_.clear();
    qubits = next;
  }

  static std::size_t log_floor(std::size_t v) {
    return v == 0 ? 0 : static_cast<std::size_t>(std::bit_width(v)) - 1;
  }

 private:
  std::vector<std::size_t> p_offset_;
};

namespace detail {

/// Rounds of the carry network that follow the generate/propagate set-up.
/// `forward` = P, G, C, P^-1. Otherwise the exact reverse.
inline void carry_rounds(Circuit& c, const AdderLayout& L, bool forward) {
  const std::size_t m = L.m;
  if (m < 2) return;
  const std::size_t logm = AdderLayout::log_floor(m);
  auto Z = [&](std::size_t k) { return L.z(k); };

  auto p_round = [&](std::size_t t) {
    for (std::size_t x = 1; x < (m >> t); ++x) {
      c.add(GateType::Toffoli, {L.p(t - 1, 2 * x), L.p(t - 1, 2 * x + 1), L.p(t, x)});
    }
  };
  auto g_round = [&](std::size_t t) {
    const std::size_t half = std::size_t{1} << (t - 1), full = std::size_t{1} << t;
    for (std::size_t x = 0; x < (m >> t); ++x) {
      c.add(GateType::Toffoli, {Z(full * x + half), L.p(t - 1, 2 * x + 1), Z(full * x + full)});
    }
  };
  auto c_round = [&](std::size_t t) {
    const std::size_t half = std::size_t{1} << (t - 1), full = std::size_t{1} << t;
    if (m < half) return;
    for (std::size_t x = 1; x <= (m - half) / full; ++x) {
      c.add(GateType::Toffoli, {Z(full * x), L.p(t - 1, 2 * x), Z(full * x + half)});
    }
  };
  // Largest t with 2^t <= 2m/3.
  std::size_t c_top = 0;
  while (3 * (std::size_t{1} << (c_top + 1)) <= 2 * m) ++c_top;
  const std::size_t p_top = logm >= 1 ? logm - 1 : 0;

  if (forward) {
    for (std::size_t t = 1; t <= p_top; ++t) p_round(t);
    for (std::size_t t = 1; t <= logm; ++t) g_round(t);
    for (std::size_t t = c_top; t >= 1; --t) c_round(t);
    for (std::size_t t = p_top; t >= 1; --t) p_round(t);
  } else {
    for (std::size_t t = 1; t <= p_top; ++t) p_round(t);
    for (std::size_t t = 1; t <= c_top; ++t) c_round(t);
    for (std::size_t t = logm; t >= 1; --t) g_round(t);
    for (std::size_t t = p_top; t >= 1; --t) p_round(t);
  }
}

}  // namespace detail

/// In-place logarithmic-depth carry-lookahead adder: (a, b) -> (a, a+b mod 2^n).
///
/// Carries c_1..c_{n-1} are computed out of place into z, folded into b, then
/// erased by running the carry network backwards on (a, ~s): the carries of
/// a + ~s equal those of a + b, so the same network clears them.
inline Circuit gen_cla_adder(std::size_t n) {
  if (n == 0) throw DomainError("gen_cla_adder: n must be >= 1");
  const AdderLayout L(n);
  Circuit c(L.qubits, "cla_adder_" + std::to_string(n));
  const std::size_t m = L.m;

  for (std::size_t i = 0; i < m; ++i) c.add(GateType::Toffoli, {L.a(i), L.b(i), L.z(i + 1)});
  for (std::size_t i = 0; i < n; ++i) c.add(GateType::CNOT, {L.a(i), L.b(i)});
  detail::carry_rounds(c, L, true);
  for (std::size_t k = 1; k <= m; ++k) c.add(GateType::CNOT, {L.z(k), L.b(k)});

  // Erase carries.
  for (std::size_t i = 0; i < m; ++i) c.add(GateType::X, {L.b(i)});
  for (std::size_t i = 0; i < m; ++i) c.add(GateType::CNOT, {L.a(i), L.b(i)});
  detail::carry_rounds(c, L, false);
  for (std::size_t i = 0; i < m; ++i) c.add(GateType::CNOT, {L.a(i), L.b(i)});
  for (std::size_t i = 0; i < m; ++i) c.add(GateType::Toffoli, {L.a(i), L.b(i), L.z(i + 1)});
  for (std::size_t i = 0; i < m; ++i) c.add(GateType::X, {L.b(i)});
  return c;
}

/// Textbook QFT: H on each qubit followed by controlled phases to later qubits.
inline Circuit gen_qft(std::size_t n) {
  if (n == 0) throw DomainError("gen_qft: n must be >= 1");
  Circuit c(n, "qft_" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    c.add(GateType::H, {static_cast<QubitId>(i)});
    for (std::size_t j = i + 1; j < n; ++j) {
      c.add(GateType::CPhase, {static_cast<QubitId>(j), static_cast<QubitId>(i)});
    }
  }
  return c;
}

/// One n-bit adder invocation inside modular exponentiation.
struct AdderCall {
  std::size_t exponent_bit = 0;
  std::size_t multiplier_bit = 0;
  std::size_t step = 0;  // position within one modular addition
  std::size_t bits = 0;
};

/// Modular exponentiation as a stream of n-bit adder calls.
///
/// 2n controlled modular multiplications (one per exponent bit), each made of
/// n controlled modular additions, each of `adders_per_modular_addition`
/// plain additions (add, then conditional subtract of the modulus). The
/// count is 2 * k * n^2. Calls are generated on demand.
class ModexpSchedule {
 public:
  ModexpSchedule(std::size_t n, std::size_t adders_per_modular_addition)
      : n_(n), k_(adders_per_modular_addition) {
    if (n < 2) throw DomainError("gen_modexp_schedule: n must be >= 2");
    if (k_ == 0) throw DomainError("gen_modexp_schedule: adders per modular addition must be >= 1");
  }

  std::size_t bits() const { return n_; }
  std::size_t adders_per_modular_addition() const { return k_; }
  std::size_t size() const { return 2 * n_ * n_ * k_; }

  AdderCall operator[](std::size_t i) const {
    AdderCall call;
    call.bits = n_;
    call.step = i % k_;
    call.multiplier_bit = (i / k_) % n_;
    call.exponent_bit = i / (k_ * n_);
    return call;
  }

 private:
  std::size_t n_;
  std::size_t k_;
};

inline ModexpSchedule gen_modexp_schedule(std::size_t n, std::size_t adders_per_modular_addition = 2) {
  return ModexpSchedule(n, adders_per_modular_addition);
}

// ---------------------------------------------------------------------------
// Classical reversible simulation

using BitString = std::vector<std::uint8_t>;

/// Applies X/CNOT/Toffoli truth tables in program order.
inline BitString simulate_classical(const Circuit& c, BitString bits) {
  if (bits.size() != c.qubit_count()) {
    throw DomainError("simulate_classical: input has " + std::to_string(bits.size()) +
                      " bits, circuit has " + std::to_string(c.qubit_count()) + " qubits");
  }
  for (const auto& g : c.gates()) {
    switch (g.type) {
      case GateType::X: bits[g.q[0]] ^= 1; break;
      case GateType::CNOT: bits[g.q[1]] ^= bits[g.q[0]]; break;
      case GateType::Toffoli: bits[g.q[2]] ^= static_cast<std::uint8_t>(bits[g.q[0]] & bits[g.q[1]]); break;
      default:
        throw UnsupportedGateError("simulate_classical: " + std::string(gate_name(g.type)) +
                                   " has no classical truth table");
    }
  }
  return bits;
}

/// Bit-string from text such as "0110" (index 0 first).
inline BitString bits_from_string(std::string_view s) {
  BitString out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw DomainError("bit-string may contain only 0 and 1");
    out.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return out;
}

inline std::string bits_to_string(const BitString& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

}  // namespace cqla
