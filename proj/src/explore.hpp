// Copyright 2026 The memsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMSCHED_EXPLORE_HPP
#define MEMSCHED_EXPLORE_HPP

#include <string>
#include <vector>

#include "scheduler.hpp"

namespace memsched {

struct ExplorationCandidate {
  std::string label;     // shown in the report, typically the map file name
  std::string map_text;  // mapping file contents
};

struct ExplorationRow {
  std::string label;
  long horizon = 0;
  int banks = 0;
  long total_ports = 0;
  bool feasible = false;
  long latency = 0;      // valid iff feasible
  long area_proxy = 0;   // sum of ports across banks (port cost 1)
  std::string reason;    // why the candidate is infeasible
};

struct ExplorationReport {
  // Sorted by (latency, area proxy, label, horizon); infeasible rows last.
  std::vector<ExplorationRow> rows;

  std::string to_string() const;
};

// Schedules the graph once per (candidate map, horizon) pair. Candidates
// that fail to parse, fail coverage, or are infeasible become marked rows;
// only an empty candidate list is an error.
ExplorationReport explore(const SfgGraph& g,
                          const std::vector<ExplorationCandidate>& candidates,
                          const std::vector<long>& horizons,
                          const SchedulerConfig& base_cfg);

}  // namespace memsched

#endif  // MEMSCHED_EXPLORE_HPP
