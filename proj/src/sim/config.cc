/* Copyright 2026 The Spotflow Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "spotflow/sim/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "spotflow/core/errors.h"

namespace spotflow::sim {
namespace {

std::string Trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> Split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double ParseNumber(const std::string& text) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + text + "'");
  }
  return v;
}

int64_t ParseInt(const std::string& text) {
  double v = ParseNumber(text);
  if (v != std::floor(v)) throw ConfigError("expected an integer: " + text);
  return static_cast<int64_t>(v);
}

bool ParseBool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw ConfigError("expected true or false, got '" + text + "'");
}

AffineCost ParseAffine(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ConfigError("expected c0,c1 (ms), got '" + text + "'");
  }
  return {Duration(ParseInt(Trim(text.substr(0, comma)))),
          Duration(ParseInt(Trim(text.substr(comma + 1))))};
}

}  // namespace

Duration ParseDuration(const std::string& text) {
  size_t split = text.find_first_not_of("0123456789.+-eE");
  // An exponent marker must not swallow the unit.
  std::string num = text.substr(0, split);
  std::string unit = split == std::string::npos ? "" : text.substr(split);
  double v = ParseNumber(num);
  double scale = 1;
  if (unit.empty() || unit == "ms") {
    scale = 1;
  } else if (unit == "s") {
    scale = 1000;
  } else if (unit == "min") {
    scale = 60'000;
  } else {
    throw ConfigError("bad duration unit in '" + text + "'");
  }
  return Duration(static_cast<int64_t>(std::llround(v * scale)));
}

BatchingSpec ParseBatching(const std::string& text) {
  if (text == "streaming") return {BatchingKind::kStreaming, 1};
  if (text == "dynamic") return {BatchingKind::kDynamic, 1};
  if (text == "nob") return {BatchingKind::kNob, 1};
  if (text.starts_with("static:")) {
    int64_t b = ParseInt(text.substr(7));
    if (b < 1) throw ConfigError("static batch size must be >= 1");
    return {BatchingKind::kStatic, static_cast<int>(b)};
  }
  throw ConfigError("unknown batching '" + text +
                    "' (streaming, static:N, dynamic or nob)");
}

std::string BatchingName(const BatchingSpec& spec) {
  switch (spec.kind) {
    case BatchingKind::kStreaming:
      return "streaming";
    case BatchingKind::kStatic:
      return "static:" + std::to_string(spec.static_batch);
    case BatchingKind::kDynamic:
      return "dynamic";
    case BatchingKind::kNob:
      return "nob";
  }
  return "?";
}

void ScenarioConfig::Validate() const {
  if (camera_count == 0) throw ConfigError("camera_count must be >= 1");
  if (!(fps > 0)) throw ConfigError("fps must be positive");
  if (!(entity_speed > 0)) throw ConfigError("entity_speed must be positive");
  if (!(tl_peak_speed >= 0)) throw ConfigError("tl_peak_speed must be >= 0");
  if (m_max < 1) throw ConfigError("m_max must be >= 1");
  if (va_instances < 1 || cr_instances < 1) {
    throw ConfigError("need at least one VA and one CR instance");
  }
  if (nodes < 1) throw ConfigError("nodes must be >= 1");
  if (probe_k < 1) throw ConfigError("probe_k must be >= 1");
  if (frame_bytes == 0) throw ConfigError("frame_bytes must be > 0");
  if (duration <= Duration(0)) throw ConfigError("duration must be positive");
  if (gamma <= cr_cost.base + cr_cost.per_item) {
    throw ConfigError("gamma must exceed the CR cost of a single event");
  }
  if (va_cost.per_item <= Duration(0) || cr_cost.per_item <= Duration(0)) {
    throw ConfigError("per-item costs must be positive");
  }
  if (tp_rate < 0 || tp_rate > 1 || fp_rate < 0 || fp_rate > 1) {
    throw ConfigError("detector rates must lie in [0, 1]");
  }
  if (fov_m < 0) throw ConfigError("fov_m must be >= 0");
  for (const auto& [device, skew] : skew_map) {
    if (device == "head" || device.starts_with("cam")) {
      throw ConfigError("device " + device +
                        " hosts a pipeline source or sink and cannot be "
                        "skewed");
    }
    bool known = false;
    for (int i = 0; i < nodes; ++i) {
      if (device == "node" + std::to_string(i)) known = true;
    }
    if (!known) throw ConfigError("skew names unknown device " + device);
  }
  for (const Slowdown& s : slowdowns) {
    if (s.kind != "va" && s.kind != "cr" && s.kind != "all") {
      throw ConfigError("slowdown kind must be va, cr or all");
    }
    if (!(s.factor > 0)) throw ConfigError("slowdown factor must be > 0");
  }
}

std::string ScenarioConfig::ResolvePath(const std::string& file) const {
  std::filesystem::path p(file);
  if (p.is_absolute()) return file;
  return (std::filesystem::path(base_dir) / p).string();
}

ScenarioConfig ParseScenarioConfig(std::istream& in) {
  ScenarioConfig c;
  using Setter = std::function<void(const std::string&)>;
  auto u32 = [](uint32_t& dst) {
    return Setter([&dst](const std::string& v) {
      int64_t x = ParseInt(v);
      if (x < 0) throw ConfigError("expected a non-negative integer");
      dst = static_cast<uint32_t>(x);
    });
  };
  auto i32 = [](int& dst) {
    return Setter([&dst](const std::string& v) {
      dst = static_cast<int>(ParseInt(v));
    });
  };
  auto num = [](double& dst) {
    return Setter([&dst](const std::string& v) { dst = ParseNumber(v); });
  };
  auto dur = [](Duration& dst) {
    return Setter([&dst](const std::string& v) { dst = ParseDuration(v); });
  };
  auto flag = [](bool& dst) {
    return Setter([&dst](const std::string& v) { dst = ParseBool(v); });
  };
  const std::map<std::string, Setter> setters = {
      {"graph_file", [&](const std::string& v) { c.graph_file = v; }},
      {"graph_seed",
       [&](const std::string& v) { c.graph_seed = ParseInt(v); }},
      {"placement_file", [&](const std::string& v) { c.placement_file = v; }},
      {"camera_count", u32(c.camera_count)},
      {"fps", num(c.fps)},
      {"entity_speed", num(c.entity_speed)},
      {"tl_kind",
       [&](const std::string& v) { c.tl_kind = tracking::ParseTlKind(v); }},
      {"tl_peak_speed", num(c.tl_peak_speed)},
      {"gamma", dur(c.gamma)},
      {"batching", [&](const std::string& v) { c.batching = ParseBatching(v); }},
      {"m_max", i32(c.m_max)},
      {"drops_enabled", flag(c.drops_enabled)},
      {"epsilon_max", dur(c.epsilon_max)},
      {"probe_k", i32(c.probe_k)},
      {"va_instances", i32(c.va_instances)},
      {"cr_instances", i32(c.cr_instances)},
      {"frame_bytes", u32(c.frame_bytes)},
      {"seed", [&](const std::string& v) { c.seed = ParseInt(v); }},
      {"duration", dur(c.duration)},
      {"start_vertex", u32(c.start_vertex)},
      {"fov_m", num(c.fov_m)},
      {"fixed_len", num(c.fixed_len)},
      {"va_cost", [&](const std::string& v) { c.va_cost = ParseAffine(v); }},
      {"cr_cost", [&](const std::string& v) { c.cr_cost = ParseAffine(v); }},
      {"link_latency_ms", num(c.link_defaults.latency_ms)},
      {"link_bandwidth",
       [&](const std::string& v) {
         c.link_defaults.bandwidth_bps = ParseBandwidth(v);
       }},
      {"avoid_drop_positive", flag(c.avoid_drop_positive)},
      {"tp_rate", num(c.tp_rate)},
      {"fp_rate", num(c.fp_rate)},
      {"history_capacity",
       [&](const std::string& v) { c.history_capacity = ParseInt(v); }},
      {"nodes", i32(c.nodes)},
      {"xi_estimate", flag(c.xi_estimate)},
      {"detection_bytes", u32(c.detection_bytes)},
      {"drain", dur(c.drain)},
      {"link_change",
       [&](const std::string& v) {
         auto f = Split(v);
         if (f.size() != 4) {
           throw ConfigError("link_change = <t> <link> <bandwidth> <latency>");
         }
         LinkChange ch;
         ch.at = Timestamp(ParseDuration(f[0]));
         ch.link = f[1];
         ch.params.bandwidth_bps = ParseBandwidth(f[2]);
         ch.params.latency_ms = ParseNumber(f[3]);
         c.link_schedule.push_back(ch);
       }},
      {"skew",
       [&](const std::string& v) {
         auto f = Split(v);
         if (f.size() != 2) throw ConfigError("skew = <device> <ms>");
         c.skew_map[f[0]] = ParseDuration(f[1]);
       }},
      {"slowdown",
       [&](const std::string& v) {
         auto f = Split(v);
         if (f.size() != 3) {
           throw ConfigError("slowdown = <t> <va|cr|all> <factor>");
         }
         c.slowdowns.push_back(
             {Timestamp(ParseDuration(f[0])), f[1], ParseNumber(f[2])});
       }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + " (" + key +
                        "): " + e.what());
    }
  }
  c.Validate();
  return c;
}

ScenarioConfig LoadScenarioConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  ScenarioConfig c = ParseScenarioConfig(in);
  c.base_dir = std::filesystem::path(path).parent_path().string();
  if (c.base_dir.empty()) c.base_dir = ".";
  return c;
}

}  // namespace spotflow::sim
