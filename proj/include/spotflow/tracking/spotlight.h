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

#ifndef SPOTFLOW_TRACKING_SPOTLIGHT_H_
#define SPOTFLOW_TRACKING_SPOTLIGHT_H_

#include <vector>

#include "spotflow/core/time.h"
#include "spotflow/tracking/road_network.h"

namespace spotflow::tracking {

// es * (now - lst) in metres; zero when now precedes lst.
double SpotlightRadius(Timestamp lst, Timestamp now, double peak_speed);

// Road distances from `origin` up to `radius`, +inf beyond. Uniform-cost
// expansion that stops at the cutoff. Throws StateError for an unknown origin.
std::vector<double> DistancesWithin(const RoadNetwork& net, VertexId origin,
                                    double radius);

// Cameras on vertices within `radius` road metres of `origin`, ascending.
std::vector<CameraId> WeightedBfs(const RoadNetwork& net, VertexId origin,
                                  double radius,
                                  const CameraPlacement& placement);

// Same as WeightedBfs with every road taken as `fixed_len` metres, i.e. a hop
// limit of floor(radius / fixed_len).
std::vector<CameraId> UnweightedBfs(const RoadNetwork& net, VertexId origin,
                                    double radius, double fixed_len,
                                    const CameraPlacement& placement);

}  // namespace spotflow::tracking

#endif  // SPOTFLOW_TRACKING_SPOTLIGHT_H_
