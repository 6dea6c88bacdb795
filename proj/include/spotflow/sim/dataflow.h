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

#ifndef SPOTFLOW_SIM_DATAFLOW_H_
#define SPOTFLOW_SIM_DATAFLOW_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spotflow/analytics/modules.h"
#include "spotflow/engine/task.h"
#include "spotflow/sim/links.h"
#include "spotflow/sim/scheduler.h"

namespace spotflow::sim {

using DeviceId = uint32_t;

struct Device {
  std::string name;
  Duration skew{0};
  int site = 0;  // devices on one site talk over local links
};

// Hooks for metrics; all times are reference times.
class DataflowObserver {
 public:
  virtual ~DataflowObserver() = default;
  virtual void OnDrop(const Event&, const std::string& /*task*/,
                      int /*drop_point*/, Timestamp) {}
  virtual void OnSink(const Event&, const analytics::SinkVerdict&, Timestamp) {}
  virtual void OnBatch(TaskId, int /*size*/, Timestamp) {}
  virtual void OnBudget(TaskId, const budget::BudgetUpdate&, bool /*accept*/,
                        Timestamp) {}
};

struct TaskNodeSpec {
  std::string name;
  DeviceId device = 0;
  // `id` is assigned by AddTask; downstream ids must already exist.
  engine::TaskConfig config;
  engine::Task::Logic logic;
  // Actual duration of a batch of `m` starting at reference time `t`; the
  // model's estimate when empty.
  std::function<Duration(int m, Timestamp t)> cost;
  uint32_t output_bytes = 0;
  // Sees a copy of every emitted group, e.g. to fork it to another consumer.
  std::function<void(const std::vector<Event>&)> tap;
  // Budgets stay where they were set; signals are counted and ignored.
  bool frozen_budgets = false;
};

struct SinkNodeSpec {
  std::string name;
  DeviceId device = 0;
  analytics::SinkConfig config;
};

// Hosts tasks and a sink on simulated devices. Task effects are turned into
// scheduled completions, wake-ups, transfers and protocol signals. Channels
// between two devices deliver in order.
class Dataflow {
 public:
  static constexpr uint32_t kSignalBytes = 64;

  Dataflow(Scheduler& scheduler, LinkModel links, std::vector<Device> devices,
           int head_site, DataflowObserver* observer);

  TaskId AddSink(SinkNodeSpec spec);
  TaskId AddTask(TaskNodeSpec spec);

  // Hands `event` to a task at the current time.
  void Inject(TaskId task, Event event);

  // Transfers `bytes` from one device to another; runs `on_arrival` then.
  void Send(DeviceId from, DeviceId to, uint64_t bytes,
            Scheduler::Action on_arrival);

  engine::Task& task(TaskId id);
  const std::string& name(TaskId id) const { return nodes_[Index(id)].name; }
  DeviceId device(TaskId id) const { return nodes_[Index(id)].device; }
  const Device& device_info(DeviceId d) const { return devices_[d]; }
  size_t node_count() const { return nodes_.size(); }
  bool is_sink(TaskId id) const { return nodes_[Index(id)].sink.has_value(); }

  Timestamp Local(DeviceId d, Timestamp ref) const {
    return ref + devices_[d].skew;
  }
  Timestamp Ref(DeviceId d, Timestamp local) const {
    return local - devices_[d].skew;
  }

  Scheduler& scheduler() { return scheduler_; }
  const LinkModel& links() const { return links_; }
  uint64_t signals_sent() const { return signals_sent_; }
  uint64_t signals_ignored() const { return signals_ignored_; }

 private:
  struct Node {
    std::string name;
    DeviceId device = 0;
    std::unique_ptr<engine::Task> task;
    std::optional<analytics::SinkConfig> sink;
    uint32_t output_bytes = 0;
    std::function<void(const std::vector<Event>&)> tap;
    bool frozen = false;
  };

  void Apply(TaskId id, engine::TaskEffects fx);
  void Deliver(TaskId dest, std::vector<Event> group);
  void DeliverToSink(TaskId sink, std::vector<Event> group);
  void SendReject(TaskId from, const Event& event,
                  const budget::RejectSignal& signal);
  void SendAccept(TaskId from, const Event& event,
                  const budget::AcceptSignal& signal);
  LinkClass Classify(DeviceId a, DeviceId b) const;

  Scheduler& scheduler_;
  LinkModel links_;
  std::vector<Device> devices_;
  int head_site_;
  DataflowObserver* observer_;
  std::vector<Node> nodes_;
  std::map<std::pair<DeviceId, DeviceId>, Timestamp> channel_tail_;
  uint64_t signals_sent_ = 0;
  uint64_t signals_ignored_ = 0;
};

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_DATAFLOW_H_
