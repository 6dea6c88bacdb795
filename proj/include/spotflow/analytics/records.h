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

#ifndef SPOTFLOW_ANALYTICS_RECORDS_H_
#define SPOTFLOW_ANALYTICS_RECORDS_H_

#include <cstdint>

#include "spotflow/core/exec_time_model.h"
#include "spotflow/core/time.h"

namespace spotflow::analytics {

using CameraId = uint32_t;

struct FrameRecord {
  CameraId camera = 0;
  Timestamp frame_ts{};
  bool contains_entity = false;  // ground truth
  uint32_t payload_size = 2900;
};

// VA output: the frame with the candidate flag raised by the detector.
struct CandidateRecord {
  FrameRecord frame;
  bool candidate = false;
};

// CR output.
struct DetectionRecord {
  CameraId camera = 0;
  Timestamp frame_ts{};
  bool matched = false;
  double confidence = 0;
  bool truth = false;
};

// Cost and error profile of a stand-in detector.
struct DetectorProfile {
  ExecTimeModel cost = ExecTimeModel::Affine(Duration(0), Duration(1), 1);
  double true_positive_rate = 1.0;
  double false_positive_rate = 0.0;
  uint64_t seed = 0;

  // Throws ConfigError for rates outside [0, 1].
  void Validate() const;
};

}  // namespace spotflow::analytics

#endif  // SPOTFLOW_ANALYTICS_RECORDS_H_
