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

#include "spotflow/sim/dataflow.h"

#include <utility>

#include "spotflow/core/errors.h"

namespace spotflow::sim {

Dataflow::Dataflow(Scheduler& scheduler, LinkModel links,
                   std::vector<Device> devices, int head_site,
                   DataflowObserver* observer)
    : scheduler_(scheduler),
      links_(std::move(links)),
      devices_(std::move(devices)),
      head_site_(head_site),
      observer_(observer) {}

TaskId Dataflow::AddSink(SinkNodeSpec spec) {
  if (spec.device >= devices_.size()) throw ConfigError("unknown device");
  if (devices_[spec.device].skew != Duration(0)) {
    throw ConfigError("sink device " + devices_[spec.device].name +
                      " must not be skewed");
  }
  Node node;
  node.name = std::move(spec.name);
  node.device = spec.device;
  node.sink = spec.config;
  nodes_.push_back(std::move(node));
  return TaskId(static_cast<uint32_t>(nodes_.size() - 1));
}

TaskId Dataflow::AddTask(TaskNodeSpec spec) {
  if (spec.device >= devices_.size()) throw ConfigError("unknown device");
  for (TaskId d : spec.config.downstream) {
    if (Index(d) >= nodes_.size()) {
      throw ConfigError(spec.name + ": downstream task does not exist yet");
    }
  }
  const TaskId id{static_cast<uint32_t>(nodes_.size())};
  spec.config.id = id;
  engine::Task::CostFn cost;
  if (spec.cost) {
    const DeviceId dev = spec.device;
    cost = [this, dev, fn = std::move(spec.cost)](int m, Timestamp local) {
      return fn(m, Ref(dev, local));
    };
  }
  Node node;
  node.name = std::move(spec.name);
  node.device = spec.device;
  node.task = std::make_unique<engine::Task>(std::move(spec.config),
                                             std::move(spec.logic),
                                             std::move(cost));
  node.output_bytes = spec.output_bytes;
  node.tap = std::move(spec.tap);
  node.frozen = spec.frozen_budgets;
  nodes_.push_back(std::move(node));
  return id;
}

engine::Task& Dataflow::task(TaskId id) {
  Node& n = nodes_.at(Index(id));
  if (!n.task) throw StateError(n.name + " is a sink");
  return *n.task;
}

void Dataflow::Inject(TaskId id, Event event) {
  std::vector<Event> one;
  one.push_back(std::move(event));
  Deliver(id, std::move(one));
}

LinkClass Dataflow::Classify(DeviceId a, DeviceId b) const {
  const int sa = devices_[a].site, sb = devices_[b].site;
  if (sa == sb) return LinkClass::kLocal;
  if (sa == head_site_ || sb == head_site_) return LinkClass::kHead;
  return LinkClass::kInter;
}

void Dataflow::Send(DeviceId from, DeviceId to, uint64_t bytes,
                    Scheduler::Action on_arrival) {
  const Timestamp now = scheduler_.now();
  Timestamp arrival =
      now + links_.TransferTime(Classify(from, to), bytes, now);
  Timestamp& tail = channel_tail_[{from, to}];
  if (arrival < tail) arrival = tail;
  tail = arrival;
  scheduler_.At(arrival, std::move(on_arrival));
}

void Dataflow::Deliver(TaskId dest, std::vector<Event> group) {
  Node& n = nodes_[Index(dest)];
  if (n.sink) {
    DeliverToSink(dest, std::move(group));
    return;
  }
  Apply(dest, n.task->ReceiveAll(std::move(group),
                                 Local(n.device, scheduler_.now())));
}

void Dataflow::DeliverToSink(TaskId sink, std::vector<Event> group) {
  const Node& n = nodes_[Index(sink)];
  const Timestamp now = scheduler_.now();
  analytics::SinkOutcome out =
      analytics::UvSink(group, Local(n.device, now), *n.sink);
  for (size_t i = 0; i < group.size(); ++i) {
    const analytics::SinkVerdict& v = out.verdicts[i];
    if (observer_) observer_->OnSink(group[i], v, now);
    if (v.reject) SendReject(sink, group[i], *v.reject);
  }
  if (out.accept) SendAccept(sink, group[out.accept_index], *out.accept);
}

void Dataflow::SendReject(TaskId from, const Event& event,
                          const budget::RejectSignal& signal) {
  const DeviceId src = device(from);
  for (const Hop& hop : event.trail) {
    const TaskId target = hop.task;
    ++signals_sent_;
    Send(src, device(target), kSignalBytes, [this, target, signal] {
      Node& n = nodes_[Index(target)];
      if (n.frozen) {
        ++signals_ignored_;
        return;
      }
      auto update = n.task->OnReject(signal);
      if (!update) return;
      const Timestamp now = scheduler_.now();
      if (observer_) observer_->OnBudget(target, *update, false, now);
      Apply(target, n.task->Wake(Local(n.device, now)));
    });
  }
}

void Dataflow::SendAccept(TaskId from, const Event& event,
                          const budget::AcceptSignal& signal) {
  const DeviceId src = device(from);
  for (const Hop& hop : event.trail) {
    const TaskId target = hop.task;
    ++signals_sent_;
    Send(src, device(target), kSignalBytes, [this, target, signal] {
      Node& n = nodes_[Index(target)];
      if (n.frozen) {
        ++signals_ignored_;
        return;
      }
      auto update = n.task->OnAccept(signal);
      if (!update) return;
      const Timestamp now = scheduler_.now();
      if (observer_) observer_->OnBudget(target, *update, true, now);
      Apply(target, n.task->Wake(Local(n.device, now)));
    });
  }
}

void Dataflow::Apply(TaskId id, engine::TaskEffects fx) {
  Node& n = nodes_[Index(id)];
  const Timestamp now = scheduler_.now();
  for (engine::DropRecord& d : fx.drops) {
    if (observer_) {
      observer_->OnDrop(d.event, n.name, static_cast<int>(d.point), now);
    }
    SendReject(id, d.event, d.reject);
  }
  if (observer_) {
    for (const engine::BatchStart& b : fx.batches) {
      observer_->OnBatch(id, b.size, Ref(n.device, b.start));
    }
  }
  for (engine::Emission& em : fx.emissions) {
    if (n.tap) n.tap(em.events);
    const uint64_t bytes =
        static_cast<uint64_t>(n.output_bytes) * em.events.size();
    auto group = std::make_shared<std::vector<Event>>(std::move(em.events));
    const TaskId dest = em.dest;
    Send(n.device, device(dest), bytes,
         [this, dest, group] { Deliver(dest, std::move(*group)); });
  }
  const DeviceId dev = n.device;
  if (fx.completion) {
    scheduler_.At(Ref(dev, *fx.completion), [this, id, dev] {
      Apply(id, task(id).CompleteBatch(Local(dev, scheduler_.now())));
    });
  }
  if (fx.wakeup) {
    scheduler_.At(Ref(dev, *fx.wakeup), [this, id, dev] {
      Apply(id, task(id).Wake(Local(dev, scheduler_.now())));
    });
  }
}

}  // namespace spotflow::sim
