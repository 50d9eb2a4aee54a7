#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "allspeed/driver.hpp"
#include "allspeed/problems.hpp"

/**
 * @file config.hpp
 * @brief Run configuration files.
 *
 *     # comment
 *     [run]
 *     problem = gresho
 *     scheme = lp-multid
 *     nx = 50
 *     ny = 50
 *     eps = 1e-2
 *     t_end = 1
 *     [output]
 *     out = results/gresho
 *     diag_every = 0.05
 *
 * Keys before the first section header may come from any section.
 */
namespace allspeed {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct RunConfig {
  ProblemSpec problem;
  SchemeConfig scheme;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
};

namespace detail {

struct ConfigKey {
  std::string_view name, section;
};

inline constexpr ConfigKey kConfigKeys[] = {
    {"problem", "run"},    {"scheme", "run"},       {"nx", "run"},         {"ny", "run"},
    {"eps", "run"},        {"cfl", "run"},          {"gamma", "run"},      {"a_safety", "run"},
    {"t_end", "run"},      {"out", "output"},       {"dump_every", "output"},
    {"diag_every", "output"}, {"seed", "oracle"}};

inline constexpr std::string_view kRequiredKeys[] = {"problem", "scheme", "nx", "ny", "t_end"};

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text, int line, std::string_view key) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(line, "malformed value '" + text + "' for key '" + std::string(key) + "'");
  return value;
}

}  // namespace detail

/// A raw key = value entry with its source line (0 for command-line overrides).
struct ConfigEntry {
  std::string value;
  int line = 0;
};

using ConfigEntries = std::map<std::string, ConfigEntry>;

/// Splits text into entries, checking syntax, sections and key names.
inline ConfigEntries parse_config_entries(std::string_view text) {
  ConfigEntries out;
  std::string section;
  int lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "run" && section != "output" && section != "oracle")
        throw ConfigError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(lineno, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    const auto* k = std::find_if(std::begin(detail::kConfigKeys), std::end(detail::kConfigKeys),
                                 [&](const detail::ConfigKey& c) { return c.name == key; });
    if (k == std::end(detail::kConfigKeys)) throw ConfigError(lineno, "unknown key '" + key + "'");
    if (!section.empty() && k->section != section)
      throw ConfigError(lineno, "key '" + key + "' belongs in [" + std::string(k->section) + "]");
    if (value.empty()) throw ConfigError(lineno, "missing value for key '" + key + "'");
    if (out.contains(key)) throw ConfigError(lineno, "duplicate key '" + key + "'");
    out[key] = {value, lineno};
  }
  return out;
}

/// Resolves entries into a validated RunConfig with defaults.
inline RunConfig resolve_config(const ConfigEntries& entries) {
  RunConfig cfg;
  for (const auto& [key, e] : entries) {
    const std::string& v = e.value;
    auto real = [&] { return detail::parse_number<double>(v, e.line, key); };
    auto positive_int = [&] {
      const int n = detail::parse_number<int>(v, e.line, key);
      if (n < 3) throw ConfigError(e.line, "'" + key + "' must be at least 3");
      return n;
    };
    auto positive_real = [&] {
      const double x = real();
      if (!(x > 0.0)) throw ConfigError(e.line, "'" + key + "' must be positive");
      return x;
    };
    try {
      if (key == "problem") {
        if (std::find(problem_names().begin(), problem_names().end(), v) == problem_names().end())
          throw std::invalid_argument("unknown problem '" + v + "'");
        cfg.problem.name = v;
      } else if (key == "scheme") {
        cfg.scheme.scheme = parse_scheme(v);
      } else if (key == "nx") {
        cfg.problem.nx = positive_int();
      } else if (key == "ny") {
        cfg.problem.ny = positive_int();
      } else if (key == "eps") {
        cfg.problem.eps = positive_real();
      } else if (key == "cfl") {
        cfg.scheme.cfl = positive_real();
      } else if (key == "gamma") {
        cfg.scheme.gamma = real();
      } else if (key == "a_safety") {
        cfg.scheme.a_safety = real();
      } else if (key == "t_end") {
        cfg.scheme.t_end = real();
      } else if (key == "out") {
        cfg.out_dir = v;
      } else if (key == "dump_every") {
        cfg.scheme.dump_every = real();
      } else if (key == "diag_every") {
        cfg.scheme.diag_every = real();
      } else if (key == "seed") {
        cfg.seed = detail::parse_number<std::uint64_t>(v, e.line, key);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& err) {
      throw ConfigError(e.line, err.what());
    }
  }
  std::string missing;
  for (auto key : detail::kRequiredKeys)
    if (!entries.contains(std::string(key))) missing += (missing.empty() ? "" : ", ") + std::string(key);
  if (!missing.empty()) throw ConfigError(0, "missing required keys: " + missing);
  cfg.problem.gamma = cfg.scheme.gamma;
  cfg.scheme.eps_report = cfg.problem.eps;
  try {
    cfg.scheme.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(0, err.what());
  }
  return cfg;
}

inline RunConfig parse_config(std::string_view text) {
  return resolve_config(parse_config_entries(text));
}

}  // namespace allspeed
