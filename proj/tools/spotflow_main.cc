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

// Command-line driver: scenario runs, NOB calibration tables and synthetic
// road graphs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spotflow/bounds/oracle.h"
#include "spotflow/core/errors.h"
#include "spotflow/sim/scenario.h"
#include "spotflow/tracking/graph_gen.h"

namespace {

constexpr int kConfigError = 2;

using spotflow::ConfigError;
using spotflow::Duration;

int RunCommand(const std::string& config_path, const std::string& out_dir,
               std::optional<uint64_t> seed, const std::string& mode,
               double pacing) {
  spotflow::sim::ScenarioConfig config =
      spotflow::sim::LoadScenarioConfig(config_path);
  if (seed) config.seed = *seed;
  spotflow::sim::RunOptions options;
  if (mode == "realtime") options.pacing = pacing;
  auto result = spotflow::sim::RunScenario(config, options);
  spotflow::sim::WriteScenarioOutputs(result, config, out_dir);
  const auto& s = result.summary;
  std::printf(
      "generated=%llu delivered=%llu delayed=%llu dropped=%llu "
      "in_flight=%llu peak_active=%u median=%.0fms p99=%.0fms\n",
      static_cast<unsigned long long>(s.generated),
      static_cast<unsigned long long>(s.delivered),
      static_cast<unsigned long long>(s.delayed),
      static_cast<unsigned long long>(s.dropped),
      static_cast<unsigned long long>(s.in_flight), s.peak_active_cameras,
      s.median_latency_ms, s.p99_latency_ms);
  return 0;
}

int CalibrateCommand(const std::string& xi_text, int64_t gamma_ms, int m_max,
                     const std::string& out_path) {
  auto comma = xi_text.find(',');
  if (comma == std::string::npos) throw ConfigError("--xi expects c0,c1");
  const long c0 = std::stol(xi_text.substr(0, comma));
  const long c1 = std::stol(xi_text.substr(comma + 1));
  if (c0 < 0 || c1 <= 0) throw ConfigError("--xi needs c0 >= 0 and c1 > 0");
  auto xi = spotflow::ExecTimeModel::Affine(Duration(c0), Duration(c1), m_max);
  auto table = spotflow::bounds::Calibrate(xi, Duration(gamma_ms),
                                           spotflow::bounds::CalibrationRates());
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  out << "rate,batch,feasible\n";
  for (const auto& e : table) {
    out << e.rate << ',' << e.batch << ',' << (e.feasible ? 1 : 0) << '\n';
  }
  std::printf("wrote %zu entries to %s\n", table.size(), out_path.c_str());
  return 0;
}

int GenGraphCommand(uint64_t seed, size_t vertices, size_t edges, double mean,
                    const std::string& out_path) {
  spotflow::tracking::RoadGenOptions opt;
  opt.seed = seed;
  opt.vertices = vertices;
  opt.directed_edges = edges;
  opt.mean_length = mean;
  auto roads = spotflow::tracking::GenerateRoads(opt);
  spotflow::tracking::SaveDirectedEdges(roads, out_path);
  std::printf("vertices=%zu roads=%zu mean_length=%.2fm\n",
              roads.net.vertex_count(), roads.net.road_count(),
              roads.net.MeanRoadLength());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadline-aware camera-tracking dataflow simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario");
  std::string config_path, out_dir, mode = "des";
  std::optional<uint64_t> seed;
  double pacing = 1.0;
  run->add_option("--config", config_path, "Scenario config")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--mode", mode, "des or realtime")
      ->check(CLI::IsMember({"des", "realtime"}));
  run->add_option("--speed", pacing,
                  "Real-time mode: virtual seconds per wall second")
      ->check(CLI::PositiveNumber);

  auto* cal = app.add_subcommand("calibrate", "Write a NOB lookup table");
  std::string xi_text, cal_out;
  int64_t gamma_ms = 15000;
  int m_max = 25;
  cal->add_option("--xi", xi_text, "Affine cost c0,c1 in ms")->required();
  cal->add_option("--gamma", gamma_ms, "Budget headroom in ms")->required();
  cal->add_option("--out", cal_out, "Output CSV")->required();
  cal->add_option("--mmax", m_max, "Maximum batch size")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen-graph", "Write a synthetic road graph");
  uint64_t graph_seed = 7;
  size_t vertices = 1000, edges = 2817;
  double mean_len = 84.5;
  std::string graph_out;
  gen->add_option("--seed", graph_seed, "Generator seed");
  gen->add_option("--vertices", vertices, "Vertex count");
  gen->add_option("--edges", edges, "Directed edge records");
  gen->add_option("--mean-length", mean_len, "Mean road length in m");
  gen->add_option("--out", graph_out, "Output edge list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return RunCommand(config_path, out_dir, seed, mode, pacing);
    if (*cal) return CalibrateCommand(xi_text, gamma_ms, m_max, cal_out);
    if (*gen) {
      return GenGraphCommand(graph_seed, vertices, edges, mean_len, graph_out);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }
  return 0;
}
