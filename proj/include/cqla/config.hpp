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
 * @file config.hpp
 * @brief Flat dotted-key profile files with unit suffixes.
 *
 * One entry per line:
 *
 *     ecc.steane.l2.ec_time = 0.3 s
 *     tech.move_fail = 5e-8 /um
 *     layout.qla_interconnect_multiplier = 17.68 @calibrated
 *     experiment.code = steane
 *
 * Numbers are normalised on load: times to seconds (s, ms, us, ns), areas
 * to mm^2 (mm2, um2), lengths to micrometres (um, mm). Unit-less numbers and
 * the rate suffix `/um` are stored as written. A trailing `@calibrated`
 * token marks a value as fitted rather than derived; reports carry that flag
 * through. `#` starts a comment. Bare identifiers are string values.
 */

#pragma once

#include "cqla/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cqla {

enum class Dimension { None, Time, Area, Length, PerLength, Text };

struct ProfileValue {
  double number = 0.0;
  std::string text;  // raw value for Text entries
  Dimension dim = Dimension::None;
  bool calibrated = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

inline std::optional<double> parse_double(std::string_view s) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

struct UnitScale {
  std::string_view suffix;
  Dimension dim;
  double scale;
};

inline constexpr UnitScale kUnits[] = {
    {"s", Dimension::Time, 1.0},         {"ms", Dimension::Time, 1e-3},
    {"us", Dimension::Time, 1e-6},       {"ns", Dimension::Time, 1e-9},
    {"mm2", Dimension::Area, 1.0},       {"um2", Dimension::Area, 1e-6},
    {"um", Dimension::Length, 1.0},      {"mm", Dimension::Length, 1e3},
    {"/um", Dimension::PerLength, 1.0},
};

}  // namespace detail

/// Ordered key -> value store for technology, code, and calibration data.
class Profile {
 public:
  Profile() = default;

  static Profile parse(std::string_view text, std::string_view origin = "<string>") {
    Profile p;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      auto where = [&] {
        return std::string(origin) + ":" + std::to_string(line_no);
      };
      if (eq == std::string_view::npos) {
        throw ConfigError(where() + ": expected `key = value`");
      }
      const auto key = detail::trim(line.substr(0, eq));
      if (!detail::valid_key(key)) {
        throw ConfigError(where() + ": invalid key '" + std::string(key) + "'");
      }
      p.set(std::string(key), parse_value(detail::trim(line.substr(eq + 1)), where()));
    }
    return p;
  }

  static Profile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const ProfileValue& at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing profile key '" + key + "'");
    return it->second;
  }

  double number(const std::string& key) const {
    const auto& v = at(key);
    if (v.dim == Dimension::Text) {
      throw ConfigError("profile key '" + key + "' is not numeric");
    }
    return v.number;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::string text(const std::string& key) const {
    const auto& v = at(key);
    if (v.dim != Dimension::Text) {
      throw ConfigError("profile key '" + key + "' is not a string");
    }
    return v.text;
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  bool calibrated(const std::string& key) const { return has(key) && at(key).calibrated; }

  void set(std::string key, ProfileValue value) { values_[std::move(key)] = std::move(value); }

  void set_number(std::string key, double number, bool calibrated = false) {
    set(std::move(key), ProfileValue{number, {}, Dimension::None, calibrated});
  }

  void set_text(std::string key, std::string value) {
    set(std::move(key), ProfileValue{0.0, std::move(value), Dimension::Text, false});
  }

  /// Later entries win.
  void merge(const Profile& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
  }

  /// Keys beginning with `prefix`, in lexicographic order.
  std::vector<std::string> keys_with_prefix(std::string_view prefix) const {
    std::vector<std::string> out;
    for (auto it = values_.lower_bound(std::string(prefix)); it != values_.end(); ++it) {
      if (it->first.compare(0, prefix.size(), prefix) != 0) break;
      out.push_back(it->first);
    }
    return out;
  }

  const std::map<std::string, ProfileValue>& entries() const { return values_; }

 private:
  static ProfileValue parse_value(std::string_view raw, const std::string& where) {
    ProfileValue v;
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!tokens.empty() && tokens.back() == "@calibrated") {
      v.calibrated = true;
      tokens.pop_back();
    }
    if (tokens.empty() || tokens.size() > 2) {
      throw ConfigError(where + ": expected `number [unit]` or an identifier");
    }
    auto num = detail::parse_double(tokens[0]);
    if (!num) {
      if (tokens.size() != 1) throw ConfigError(where + ": malformed number '" + std::string(tokens[0]) + "'");
      v.dim = Dimension::Text;
      v.text = std::string(tokens[0]);
      return v;
    }
    if (!std::isfinite(*num)) throw ConfigError(where + ": non-finite value");
    v.number = *num;
    if (tokens.size() == 2) {
      bool found = false;
      for (const auto& u : detail::kUnits) {
        if (u.suffix == tokens[1]) {
          v.number *= u.scale;
          v.dim = u.dim;
          found = true;
          break;
        }
      }
      if (!found) throw ConfigError(where + ": unknown unit '" + std::string(tokens[1]) + "'");
    }
    return v;
  }

  std::map<std::string, ProfileValue> values_;
};

}  // namespace cqla
