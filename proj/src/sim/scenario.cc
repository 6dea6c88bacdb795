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

#include "spotflow/sim/scenario.h"

#include <any>
#include <cmath>
#include <filesystem>
#include <memory>

#include "json.hpp"
#include "spotflow/analytics/modules.h"
#include "spotflow/bounds/oracle.h"
#include "spotflow/core/errors.h"
#include "spotflow/core/rng.h"
#include "spotflow/sim/dataflow.h"
#include "spotflow/sim/walk.h"
#include "spotflow/tracking/graph_gen.h"
#include "spotflow/tracking/tracker.h"

namespace spotflow::sim {
namespace {

using analytics::CameraId;
using analytics::DetectionRecord;
using analytics::FrameRecord;

engine::BatchingMode MakeMode(const BatchingSpec& spec,
                              const ExecTimeModel& xi, Duration gamma) {
  switch (spec.kind) {
    case BatchingKind::kStreaming:
      return engine::StreamingMode{};
    case BatchingKind::kStatic:
      return engine::StaticMode{spec.static_batch};
    case BatchingKind::kDynamic:
      return engine::DynamicMode{};
    case BatchingKind::kNob: {
      std::vector<engine::NobTable::Entry> entries;
      for (const auto& e :
           bounds::Calibrate(xi, gamma, bounds::CalibrationRates())) {
        entries.push_back({e.rate, e.batch});
      }
      return engine::NobMode{engine::NobTable(std::move(entries))};
    }
  }
  return engine::DynamicMode{};
}

class Run : public DataflowObserver {
 public:
  Run(const ScenarioConfig& config, const RunOptions& options)
      : cfg_(config), options_(options) {}

  ScenarioResult Execute();

  void OnDrop(const Event& e, const std::string& task, int dp,
              Timestamp t) override;
  void OnSink(const Event& e, const analytics::SinkVerdict& v,
              Timestamp t) override;
  void OnBatch(TaskId task, int size, Timestamp t) override;

 private:
  void Build();
  void OnFrame(CameraId c, Timestamp t);
  void OnDetections(const std::vector<tracking::Detection>& batch);
  void SendCommands(const std::vector<tracking::CameraCommand>& commands);
  void SetActive(CameraId c, bool active);
  double SlowdownFactor(const std::string& kind, Timestamp t) const;
  metrics::TimelineRow& Row(Timestamp t);
  void Close(metrics::EventRecord& rec, const Event& e);

  const ScenarioConfig& cfg_;
  RunOptions options_;
  Scheduler scheduler_;
  tracking::RoadNetwork net_;
  tracking::CameraPlacement placement_;
  std::unique_ptr<WalkTrace> walk_;
  std::unique_ptr<tracking::Tracker> tracker_;
  std::unique_ptr<Dataflow> flow_;
  analytics::QueryFusion qf_;
  DeviceId head_ = 0;
  std::vector<DeviceId> cam_device_;
  std::vector<TaskId> fc_task_;
  std::vector<bool> fc_active_;
  uint32_t active_count_ = 0;
  uint32_t peak_active_ = 0;
  Duration frame_period_{1000};
  std::vector<double> latency_sum_;
  std::vector<uint64_t> latency_n_;
  ScenarioResult result_;
};

metrics::TimelineRow& Run::Row(Timestamp t) {
  auto idx = static_cast<size_t>(std::max<int64_t>(0, Millis(t) / 1000));
  if (idx >= result_.timeline.size()) {
    size_t old = result_.timeline.size();
    result_.timeline.resize(idx + 1);
    latency_sum_.resize(idx + 1, 0);
    latency_n_.resize(idx + 1, 0);
    for (size_t i = old; i <= idx; ++i) result_.timeline[i].t = i;
  }
  return result_.timeline[idx];
}

double Run::SlowdownFactor(const std::string& kind, Timestamp t) const {
  double f = 1;
  for (const Slowdown& s : cfg_.slowdowns) {
    if (s.at <= t && (s.kind == kind || s.kind == "all")) f = s.factor;
  }
  return f;
}

void Run::Build() {
  if (cfg_.graph_file == "generated") {
    tracking::RoadGenOptions gen;
    gen.seed = cfg_.graph_seed;
    net_ = tracking::GenerateRoads(gen).net;
  } else {
    net_ = tracking::LoadRoadNetwork(cfg_.ResolvePath(cfg_.graph_file));
  }
  if (!net_.Has(cfg_.start_vertex)) {
    throw ConfigError("start_vertex not in the road network");
  }
  placement_ = cfg_.placement_file.empty()
                   ? tracking::PlaceAroundVertex(net_, cfg_.start_vertex,
                                                 cfg_.camera_count)
                   : tracking::LoadPlacement(
                         cfg_.ResolvePath(cfg_.placement_file), net_);
  const size_t cameras = placement_.camera_count();
  result_.vertices = net_.vertex_count();
  result_.roads = net_.road_count();
  result_.mean_road_length = net_.MeanRoadLength();
  result_.fixed_len = cfg_.fixed_len > 0 ? cfg_.fixed_len
                                         : result_.mean_road_length;

  walk_ = std::make_unique<WalkTrace>(
      GenerateWalk(net_, cfg_.start_vertex, cfg_.entity_speed, cfg_.seed,
                   cfg_.duration + cfg_.drain));
  tracking::TrackerConfig tc;
  tc.kind = cfg_.tl_kind;
  tc.peak_speed = cfg_.tl_peak_speed;
  tc.fixed_len = result_.fixed_len;
  tc.start = cfg_.start_vertex;
  tracker_ = std::make_unique<tracking::Tracker>(net_, placement_, tc);

  // Devices: cameras share a site with a compute node; the head is separate.
  std::vector<Device> devices;
  for (size_t c = 0; c < cameras; ++c) {
    devices.push_back({"cam" + std::to_string(c), Duration(0),
                       static_cast<int>(c % cfg_.nodes)});
    cam_device_.push_back(static_cast<DeviceId>(devices.size() - 1));
  }
  std::vector<DeviceId> node_device;
  for (int i = 0; i < cfg_.nodes; ++i) {
    std::string name = "node" + std::to_string(i);
    auto it = cfg_.skew_map.find(name);
    devices.push_back(
        {name, it == cfg_.skew_map.end() ? Duration(0) : it->second, i});
    node_device.push_back(static_cast<DeviceId>(devices.size() - 1));
  }
  devices.push_back({"head", Duration(0), cfg_.nodes});
  head_ = static_cast<DeviceId>(devices.size() - 1);

  LinkModel links(cfg_.link_defaults);
  for (const LinkChange& ch : cfg_.link_schedule) links.AddChange(ch);
  flow_ = std::make_unique<Dataflow>(scheduler_, std::move(links),
                                     std::move(devices), cfg_.nodes, this);

  analytics::SinkConfig sink_cfg{cfg_.gamma, cfg_.epsilon_max,
                                 cfg_.drops_enabled};
  const TaskId uv = flow_->AddSink({"uv", head_, sink_cfg});

  const int batch_cap =
      cfg_.batching.kind == BatchingKind::kStatic
          ? std::max(cfg_.m_max, cfg_.batching.static_batch)
          : cfg_.m_max;
  auto task_config = [&](const AffineCost& cost) {
    engine::TaskConfig tc;
    tc.xi = ExecTimeModel::Affine(cost.base, cost.per_item, batch_cap);
    tc.mode = MakeMode(cfg_.batching, tc.xi, cfg_.gamma);
    tc.drops_enabled = cfg_.drops_enabled;
    tc.probe_period = cfg_.probe_k;
    tc.history_capacity = cfg_.history_capacity;
    tc.online_xi = cfg_.xi_estimate;
    return tc;
  };
  auto cost_fn = [this](const std::string& kind, ExecTimeModel xi) {
    return [this, kind, xi](int m, Timestamp t) {
      double f = SlowdownFactor(kind, t);
      auto ms = static_cast<double>(xi.Eval(m).count());
      return Duration(static_cast<int64_t>(std::llround(ms * f)));
    };
  };

  analytics::DetectorProfile va_profile;
  va_profile.seed = MixKeys(cfg_.seed, 1);
  analytics::DetectorProfile cr_profile;
  cr_profile.true_positive_rate = cfg_.tp_rate;
  cr_profile.false_positive_rate = cfg_.fp_rate;
  cr_profile.seed = MixKeys(cfg_.seed, 2);

  std::vector<TaskId> crs;
  for (int j = 0; j < cfg_.cr_instances; ++j) {
    TaskNodeSpec spec;
    spec.name = "cr" + std::to_string(j);
    spec.device = node_device[(cfg_.va_instances + j) % cfg_.nodes];
    spec.config = task_config(cfg_.cr_cost);
    spec.config.downstream = {uv};
    spec.cost = cost_fn("cr", spec.config.xi);
    const TaskId self{static_cast<uint32_t>(flow_->node_count())};
    spec.logic = [self, cr_profile](std::vector<Event>& batch) {
      analytics::CrLogic(batch, self, cr_profile);
    };
    spec.output_bytes = cfg_.detection_bytes;
    const DeviceId dev = spec.device;
    spec.tap = [this, dev](const std::vector<Event>& group) {
      std::vector<tracking::Detection> dets;
      for (const Event& e : group) {
        if (const auto* d = std::any_cast<DetectionRecord>(&e.payload)) {
          dets.push_back({d->camera, d->frame_ts, d->matched});
        }
      }
      flow_->Send(dev, head_, uint64_t{cfg_.detection_bytes} * dets.size(),
                  [this, dets] { OnDetections(dets); });
    };
    crs.push_back(flow_->AddTask(std::move(spec)));
  }

  std::vector<TaskId> vas;
  for (int j = 0; j < cfg_.va_instances; ++j) {
    TaskNodeSpec spec;
    spec.name = "va" + std::to_string(j);
    spec.device = node_device[j % cfg_.nodes];
    spec.config = task_config(cfg_.va_cost);
    spec.config.downstream = crs;
    spec.cost = cost_fn("va", spec.config.xi);
    const TaskId self{static_cast<uint32_t>(flow_->node_count())};
    const bool protect = cfg_.avoid_drop_positive;
    spec.logic = [self, va_profile, protect](std::vector<Event>& batch) {
      analytics::VaLogic(batch, self, va_profile);
      if (!protect) return;
      for (Event& e : batch) {
        const auto* c = std::any_cast<analytics::CandidateRecord>(&e.payload);
        if (c != nullptr && c->candidate) e.header.avoid_drop = true;
      }
    };
    spec.output_bytes = cfg_.frame_bytes;
    vas.push_back(flow_->AddTask(std::move(spec)));
  }

  for (size_t c = 0; c < cameras; ++c) {
    TaskNodeSpec spec;
    spec.name = "fc" + std::to_string(c);
    spec.device = cam_device_[c];
    spec.config.xi = ExecTimeModel::Affine(Duration(0), Duration(1), 1);
    spec.config.mode = engine::StreamingMode{};
    spec.config.downstream = vas;
    spec.config.drops_enabled = cfg_.drops_enabled;
    spec.config.probe_period = cfg_.probe_k;
    spec.config.history_capacity = cfg_.history_capacity;
    spec.output_bytes = cfg_.frame_bytes;
    fc_task_.push_back(flow_->AddTask(std::move(spec)));
  }
  fc_active_.assign(cameras, true);
  active_count_ = static_cast<uint32_t>(cameras);
  peak_active_ = active_count_;
}

void Run::SetActive(CameraId c, bool active) {
  if (fc_active_[c] == active) return;
  fc_active_[c] = active;
  if (active) {
    ++active_count_;
    peak_active_ = std::max(peak_active_, active_count_);
  } else {
    --active_count_;
  }
}

void Run::SendCommands(const std::vector<tracking::CameraCommand>& commands) {
  for (const tracking::CameraCommand& cmd : commands) {
    const CameraId c = cmd.camera;
    const bool on = cmd.activate;
    flow_->Send(head_, cam_device_[c], Dataflow::kSignalBytes,
                [this, c, on] { SetActive(c, on); });
  }
}

void Run::OnDetections(const std::vector<tracking::Detection>& batch) {
  std::vector<DetectionRecord> records;
  for (const auto& d : batch) records.push_back({d.camera, d.frame_ts, d.matched});
  qf_.OnDetections(records);
  auto commands = tracker_->ProcessDetections(batch, scheduler_.now());
  result_.tl_log.push_back({scheduler_.now(), tracker_->reacquired(),
                            static_cast<uint32_t>(tracker_->state().active_count),
                            tracker_->Radius()});
  SendCommands(commands);
}

void Run::OnFrame(CameraId c, Timestamp t) {
  const Timestamp next = t + frame_period_;
  if (next < Timestamp(cfg_.duration)) {
    scheduler_.At(next, [this, c, next] { OnFrame(c, next); });
  }
  FrameRecord frame;
  frame.camera = c;
  frame.frame_ts = t;
  frame.payload_size = cfg_.frame_bytes;
  auto seen = walk_->VisibleVertex(t, cfg_.fov_m);
  frame.contains_entity = seen && *seen == placement_.VertexOf(c);
  if (!analytics::FcLogic(frame, {fc_active_[c]})) {
    ++result_.frames_suppressed;
    return;
  }
  Event e;
  e.header.source_id = result_.events.size();
  e.header.source_arrival = t;
  e.key = std::to_string(c);
  e.payload = frame;
  metrics::EventRecord rec;
  rec.event_id = e.header.source_id;
  rec.camera_id = c;
  rec.t_source = t;
  if (frame.contains_entity) rec.flags = "positive";
  result_.events.push_back(std::move(rec));
  ++Row(t).events_in;
  flow_->Inject(fc_task_[c], std::move(e));
}

void Run::Close(metrics::EventRecord& rec, const Event& e) {
  rec.batch_sizes.clear();
  for (const Hop& h : e.trail) rec.batch_sizes.push_back(h.batch_size);
  auto add = [&rec](const char* f) {
    if (!rec.flags.empty()) rec.flags += '|';
    rec.flags += f;
  };
  if (e.header.avoid_drop) add("avoid_drop");
  if (e.header.probe) add("probe");
}

void Run::OnDrop(const Event& e, const std::string& task, int dp,
                 Timestamp t) {
  metrics::EventRecord& rec = result_.events.at(e.header.source_id);
  rec.status = "dropped@" + task + "@dp" + std::to_string(dp);
  Close(rec, e);
  ++Row(t).events_dropped;
  std::string kind = task.substr(0, 2);
  ++result_.drops_by_point[kind + "@dp" + std::to_string(dp)];
}

void Run::OnSink(const Event& e, const analytics::SinkVerdict& v,
                 Timestamp t) {
  metrics::EventRecord& rec = result_.events.at(e.header.source_id);
  Close(rec, e);
  if (v.status == analytics::SinkStatus::kDropped) {
    rec.status = "dropped@uv@dp3";
    ++Row(t).events_dropped;
    ++result_.drops_by_point["uv@dp3"];
    return;
  }
  rec.t_sink = t;
  rec.status =
      v.status == analytics::SinkStatus::kDelayed ? "delayed" : "delivered";
  Row(t);
  auto idx = static_cast<size_t>(Millis(t) / 1000);
  latency_sum_[idx] += static_cast<double>(v.latency.count());
  ++latency_n_[idx];
}

void Run::OnBatch(TaskId task, int size, Timestamp t) {
  if (options_.record_batches) {
    result_.batches.push_back({flow_->name(task), t, size});
  }
}

ScenarioResult Run::Execute() {
  Build();
  scheduler_.SetPacing(options_.pacing);
  frame_period_ = Duration(
      std::max<int64_t>(1, std::llround(1000.0 / cfg_.fps)));
  const Timestamp end = Timestamp(cfg_.duration + cfg_.drain);
  Row(end - Duration(1));

  // The initial spotlight is part of the deployment, not a runtime command.
  for (const tracking::CameraCommand& cmd : tracker_->Init(Timestamp())) {
    SetActive(cmd.camera, cmd.activate);
  }
  peak_active_ = active_count_;
  for (CameraId c = 0; c < fc_task_.size(); ++c) {
    Rng rng(MixKeys(cfg_.seed, 0x6672616dULL + c));
    Timestamp first(Duration(rng.Below(frame_period_.count())));
    scheduler_.At(first, [this, c, first] { OnFrame(c, first); });
  }
  for (int64_t s = 0; s * 1000 < Millis(end); ++s) {
    scheduler_.At(Timestamp(Duration(s * 1000)),
                  [this, s] { result_.timeline[s].active_cameras = active_count_; });
  }
  scheduler_.RunUntil(end);

  for (size_t i = 0; i < result_.timeline.size(); ++i) {
    if (latency_n_[i] > 0) {
      result_.timeline[i].mean_latency_ms = latency_sum_[i] / latency_n_[i];
    }
  }
  for (TaskId id{}; Index(id) < flow_->node_count();
       id = TaskId(Index(id) + 1)) {
    if (!flow_->is_sink(id)) result_.probes += flow_->task(id).stats().probes;
  }
  result_.signals = flow_->signals_sent();
  result_.signals_ignored = flow_->signals_ignored();
  result_.summary = metrics::Summarize(result_.events, peak_active_, scheduler_.now(), cfg_.gamma);
  return std::move(result_);
}

}  // namespace

std::string ScenarioResult::ExtraJson(const ScenarioConfig& config) const {
  nlohmann::ordered_json j;
  j["tl_kind"] = tracking::TlKindName(config.tl_kind);
  j["tl_peak_speed"] = config.tl_peak_speed;
  j["batching"] = BatchingName(config.batching);
  j["drops_enabled"] = config.drops_enabled;
  j["gamma_ms"] = config.gamma.count();
  j["cameras"] = config.camera_count;
  j["seed"] = config.seed;
  j["road_vertices"] = vertices;
  j["roads"] = roads;
  j["mean_road_length_m"] = mean_road_length;
  j["fixed_len_m"] = fixed_len;
  j["probes"] = probes;
  j["signals"] = signals;
  j["signals_ignored"] = signals_ignored;
  j["frames_suppressed"] = frames_suppressed;
  uint64_t reacquired = 0;
  for (const TlDecision& d : tl_log) reacquired += d.reacquired;
  j["tl_decisions"] = tl_log.size();
  j["tl_reacquisitions"] = reacquired;
  j["drops_by_point"] = drops_by_point;
  return j.dump();
}

ScenarioResult RunScenario(const ScenarioConfig& config,
                           const RunOptions& options) {
  config.Validate();
  Run run(config, options);
  return run.Execute();
}

void WriteScenarioOutputs(const ScenarioResult& result,
                          const ScenarioConfig& config,
                          const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  metrics::WriteEventsCsv((base / "events.csv").string(), result.events);
  metrics::WriteTimelineCsv((base / "timeline.csv").string(), result.timeline);
  metrics::WriteSummaryJson((base / "summary.json").string(), result.summary,
                            result.ExtraJson(config));
}

}  // namespace spotflow::sim
