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

#include "spotflow/engine/task.h"

#include <algorithm>
#include <utility>

#include "spotflow/engine/partitioner.h"

namespace spotflow::engine {

TaskRuntime::TaskRuntime(TaskConfig cfg)
    : config(std::move(cfg)),
      budgets(config.downstream),
      history(config.history_capacity) {
  if (config.online_xi) online.emplace(config.xi);
}

Task::Task(TaskConfig config, Logic logic, CostFn cost)
    : runtime_(std::move(config)),
      logic_(std::move(logic)),
      cost_(std::move(cost)),
      probes_(runtime_.config.probe_period) {}

bool Task::Drop(Event& event, DropPoint point, Duration excess,
                Duration queue_sum, TaskEffects& fx) {
  if (probes_.OnDrop()) {
    event.header.probe = true;
    ++stats_.probes;
    return true;
  }
  ++stats_.dropped[static_cast<int>(point) - 1];
  budget::RejectSignal reject{event.header.source_id, excess, queue_sum};
  fx.drops.push_back(DropRecord{std::move(event), point, reject});
  return false;
}

TaskEffects Task::Receive(Event event, Timestamp now) {
  TaskEffects fx;
  Admit(std::move(event), now, fx);
  Pump(now, fx);
  return fx;
}

TaskEffects Task::ReceiveAll(std::vector<Event> events, Timestamp now) {
  TaskEffects fx;
  for (Event& e : events) Admit(std::move(e), now, fx);
  Pump(now, fx);
  return fx;
}

void Task::Admit(Event event, Timestamp now, TaskEffects& fx) {
  ++stats_.received;
  const Duration upstream = SkewCorrectedUpstreamTime(
      now, event.header.source_arrival, runtime_.config.assumed_skew);
  rate_.Arrive(now);
  if (runtime_.config.drops_enabled) {
    const budget::Budget beta = runtime_.budgets.Effective();
    if (DropBeforeQueuing(event.header, upstream, runtime_.xi(), beta) ==
        Verdict::kDrop) {
      Duration excess = upstream + runtime_.xi().Eval(1) - *beta;
      if (!Drop(event, DropPoint::kBeforeQueuing, excess,
                event.header.sum_queue, fx)) {
        return;
      }
    }
  }
  queue_.push_back(QueuedEvent{std::move(event), now, upstream, kNoDeadline});
}

TaskEffects Task::Wake(Timestamp now) {
  TaskEffects fx;
  if (pending_wakeup_ && now >= *pending_wakeup_) pending_wakeup_.reset();
  Pump(now, fx);
  return fx;
}

Timestamp Task::DeadlineOf(const QueuedEvent& q) const {
  const budget::Budget beta = runtime_.budgets.Effective();
  if (!beta) return kNoDeadline;
  Timestamp d = q.event.header.source_arrival + *beta;
  if (q.event.header.Undroppable()) {
    // Late probes and avoid-drop events run as soon as possible instead of
    // collapsing the batch deadline into the past.
    d = std::max(d, q.arrival + runtime_.xi().Eval(1));
  }
  return d;
}

void Task::Pump(Timestamp now, TaskEffects& fx) {
  if (std::holds_alternative<DynamicMode>(runtime_.config.mode)) {
    PumpDynamic(now, fx);
  } else if (!running_) {
    PumpFixed(now, fx);
  }
}

size_t Task::backlog() const {
  size_t n = queue_.size() + current_.members.size();
  for (const auto& b : submitted_) n += b.size();
  return n;
}

void Task::Submit() {
  submitted_.push_back(std::move(current_.members));
  current_ = Batch{};
}

void Task::FormBatches(Timestamp now, TaskEffects& fx) {
  const ExecTimeModel& xi = runtime_.xi();
  // Budgets may have moved since members joined; refresh the batch deadline.
  if (!current_.empty()) {
    Timestamp d = kNoDeadline;
    for (const QueuedEvent& m : current_.members) d = std::min(d, DeadlineOf(m));
    current_.deadline = d;
  }
  while (!queue_.empty()) {
    QueuedEvent& head = queue_.front();
    head.deadline = DeadlineOf(head);
    if (TryExtendBatch(current_, head, now, xi) == ExtendOutcome::kClosed) {
      Submit();
      continue;
    }
    queue_.pop_front();
    if (current_.size() >= xi.max_batch()) Submit();
  }
  if (current_.empty()) return;
  if (DeadlineFlushDue(current_, now, xi)) {
    Submit();
    return;
  }
  auto flush = FlushTime(current_, xi);
  if (flush && (!pending_wakeup_ || *flush < *pending_wakeup_)) {
    pending_wakeup_ = *flush;
    fx.wakeup = *flush;
  }
}

void Task::PumpDynamic(Timestamp now, TaskEffects& fx) {
  if (!runtime_.budgets.Effective()) {
    // Bootstrap: stream one event at a time until budgets are assigned,
    // after anything batched before the budgets went away.
    while (!running_) {
      std::vector<QueuedEvent> next;
      if (!submitted_.empty()) {
        next = std::move(submitted_.front());
        submitted_.pop_front();
      } else if (!current_.empty()) {
        next = std::move(current_.members);
        current_ = Batch{};
      } else if (!queue_.empty()) {
        next.push_back(std::move(queue_.front()));
        queue_.pop_front();
      } else {
        return;
      }
      StartBatch(std::move(next), now, fx);
    }
    return;
  }
  FormBatches(now, fx);
  while (!running_ && !submitted_.empty()) {
    auto members = std::move(submitted_.front());
    submitted_.pop_front();
    StartBatch(std::move(members), now, fx);
  }
}

int Task::FixedBatchSize(Timestamp now) {
  const auto& mode = runtime_.config.mode;
  int b = 1;
  if (const auto* s = std::get_if<StaticMode>(&mode)) {
    b = SelectBatchSizeStatic(*s);
  } else if (const auto* n = std::get_if<NobMode>(&mode)) {
    b = SelectBatchSizeNob(rate_.Rate(now), n->table);
  }
  return std::clamp(b, 1, runtime_.xi().max_batch());
}

void Task::PumpFixed(Timestamp now, TaskEffects& fx) {
  while (!running_) {
    const size_t b = static_cast<size_t>(FixedBatchSize(now));
    if (queue_.size() < b) return;
    std::vector<QueuedEvent> members;
    members.reserve(b);
    for (size_t i = 0; i < b; ++i) {
      members.push_back(std::move(queue_.front()));
      queue_.pop_front();
    }
    if (StartBatch(std::move(members), now, fx)) return;
  }
}

bool Task::StartBatch(std::vector<QueuedEvent> members, Timestamp now,
                      TaskEffects& fx) {
  std::vector<Duration> queued;
  queued.reserve(members.size());
  for (const QueuedEvent& m : members) queued.push_back(now - m.arrival);

  if (runtime_.config.drops_enabled) {
    const budget::Budget beta = runtime_.budgets.Effective();
    std::vector<ExecCandidate> candidates;
    candidates.reserve(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      candidates.push_back(
          {&members[i].event.header, members[i].upstream, queued[i]});
    }
    std::vector<size_t> kept = DropBeforeExec(candidates, runtime_.xi(), beta);
    if (kept.size() != members.size()) {
      const Duration exec_est =
          runtime_.xi().Eval(static_cast<int>(members.size()));
      std::vector<QueuedEvent> survivors;
      std::vector<Duration> survivor_queued;
      size_t k = 0;
      for (size_t i = 0; i < members.size(); ++i) {
        bool keep = k < kept.size() && kept[k] == i;
        if (keep) ++k;
        if (!keep) {
          Duration excess =
              members[i].upstream + queued[i] + exec_est - *beta;
          keep = Drop(members[i].event, DropPoint::kBeforeExec, excess,
                      members[i].event.header.sum_queue + queued[i], fx);
        }
        if (keep) {
          survivors.push_back(std::move(members[i]));
          survivor_queued.push_back(queued[i]);
        }
      }
      members = std::move(survivors);
      queued = std::move(survivor_queued);
    }
  }
  if (members.empty()) return false;

  const int m = static_cast<int>(members.size());
  Duration exec = cost_ ? cost_(m, now) : runtime_.xi().Eval(m);
  running_ = Running{std::move(members), std::move(queued), now, exec};
  fx.completion = now + exec;
  fx.batches.push_back(BatchStart{now, m});
  ++stats_.batches;
  ++stats_.batch_sizes[m];
  stats_.busy += exec;
  return true;
}

TaskEffects Task::CompleteBatch(Timestamp now) {
  TaskEffects fx;
  if (!running_) return fx;
  Running run = std::move(*running_);
  running_.reset();

  const int m = static_cast<int>(run.members.size());
  const Duration exec = now - run.start;
  if (runtime_.online) runtime_.online->Observe(m, exec);
  stats_.executed += m;

  std::vector<Event> events;
  events.reserve(m);
  for (QueuedEvent& q : run.members) events.push_back(std::move(q.event));
  if (logic_) logic_(events);

  const auto& downstream = runtime_.config.downstream;
  for (int i = 0; i < m; ++i) {
    Event& e = events[i];
    const Duration upstream = run.members[i].upstream;
    const Duration processing = run.queued[i] + exec;
    e.header.sum_exec += exec;
    e.header.sum_queue += run.queued[i];
    if (downstream.empty()) continue;
    const TaskId dest = Partition(e.key, downstream);
    if (runtime_.config.drops_enabled &&
        DropBeforeTransmit(e.header, upstream, processing, dest,
                           runtime_.budgets) == Verdict::kDrop) {
      Duration excess = upstream + processing - *runtime_.budgets.Get(dest);
      if (!Drop(e, DropPoint::kBeforeTransmit, excess, e.header.sum_queue,
                fx)) {
        continue;
      }
    }
    runtime_.history.Record(
        e.header.source_id,
        budget::TimingTuple{upstream + processing, run.queued[i], m, dest});
    e.trail.push_back(Hop{id(), m});
    auto it = std::find_if(fx.emissions.begin(), fx.emissions.end(),
                           [dest](const Emission& em) { return em.dest == dest; });
    if (it == fx.emissions.end()) {
      fx.emissions.push_back(Emission{dest, {}});
      it = fx.emissions.end() - 1;
    }
    it->events.push_back(std::move(e));
    ++stats_.emitted;
  }
  Pump(now, fx);
  return fx;
}

std::optional<budget::BudgetUpdate> Task::OnReject(
    const budget::RejectSignal& signal) {
  auto update = budget::ApplyReject(runtime_.budgets, runtime_.history, signal,
                                    runtime_.xi());
  if (!update) {
    ++stats_.signals_ignored;
    return std::nullopt;
  }
  runtime_.history.Erase(signal.event);
  return update;
}

std::optional<budget::BudgetUpdate> Task::OnAccept(
    const budget::AcceptSignal& signal) {
  auto update = budget::ApplyAccept(runtime_.budgets, runtime_.history, signal,
                                    runtime_.xi());
  if (!update) {
    ++stats_.signals_ignored;
    return std::nullopt;
  }
  runtime_.history.Erase(signal.event);
  return update;
}

}  // namespace spotflow::engine
