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

#ifndef MEMSCHED_SCHED_INTERNAL_HPP
#define MEMSCHED_SCHED_INTERNAL_HPP

#include "scheduler.hpp"

namespace memsched::detail {

// Latency and occupied resource of a schedulable vertex when started at
// `cycle`. Memory accesses resolve their bank through residence(symbol,
// cycle), so the cost of an access can change after a transfer completes.
struct VertexCost {
  long latency = 0;
  std::string resource;
};

VertexCost vertex_cost(const SfgVertex& v, const MemoryMap& m,
                       const SchedulerConfig& cfg, long cycle);

// Transfers the scheduler executes for a run: every directive firing at or
// before the horizon, with its port-holding window, sorted by
// (at_cycle, symbol).
std::vector<ExecutedTransfer> executed_transfers(const MemoryMap& m, long horizon);

// Precedence predecessors per non-delay vertex.
std::map<std::string, std::vector<std::string>> precedence_predecessors(const SfgGraph& g);

}  // namespace memsched::detail

#endif  // MEMSCHED_SCHED_INTERNAL_HPP
